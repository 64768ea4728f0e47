#pragma once

#include "peb/line_space.hpp"
#include "peb/pseudo_linalg.hpp"

#include <vector>

namespace peb::circle {

// A chord of the unit circle x^2+y^2=1 in the metric dx dy. Each endpoint is
// kept as t = k*pi/2 + r with k in 0..3 and r in [-pi/4, pi/4), so the
// quantities that blow up at the singular points k*pi/2 are formed from r
// without cancellation.
struct ChordCoords {
    int k1 = 0;
    double r1 = 0.0;
    int k2 = 0;
    double r2 = 0.0;

    static ChordCoords from_angles(double t1, double t2);
    double t1() const;  // in [0, 2pi)
    double t2() const;
    // (t2 - t1) mod 2pi, in (0, 2pi).
    double arc() const;
    double half_sin() const;  // sin(arc/2) > 0
    double half_cot() const;  // cot(arc/2)
    double sum_sin() const;   // sin(t1 + t2)
};

struct Step {
    ChordCoords next;
    double arc = 0.0;    // arc of the next chord, the lifted endpoint increment
    double shift = 0.0;  // t3 - t2 as applied: arc or arc - 2pi, whichever is smaller
};

Step circle_step(const ChordCoords& c);
ChordCoords circle_map(const ChordCoords& c);

struct InvariantLevel {
    double num = 0.0;  // sin^2(arc/2)
    double den = 0.0;  // sin(t1 + t2)
    bool light_like() const { return den == 0.0; }
    double lambda() const;
};

InvariantLevel integral_level(const ChordCoords& c);
double integral_I(const ChordCoords& c);
// num(b)den(a) - num(a)den(b), normalized by the larger product.
double level_defect(const InvariantLevel& a, const InvariantLevel& b);

Vec point(double t);
// <D(q), v> for the first endpoint q and the chord direction scaled to |<v,v>| = 1.
double geometric_integral(const Vec& q, const Vec& v);
double geometric_integral(const ChordCoords& c);

enum class Density { Omega_arc, Omega_inv };

double density(Density d, const ChordCoords& c);
// |det J_T * rho(T c) / rho(c) - 1| with central differences of step h.
double form_invariance_check(Density d, const ChordCoords& c, double h = 1e-6);

// Constant relating the symplectic form pulled back from the (u,r) chart to
// the arc density: omega_(t1,t2) = kOmegaFactor * rho_arc dt1^dt2 (up to sign).
double omega_chord_factor();

struct Conic {
    // a x^2 + b xy + c y^2 + d x + e y + f = 0
    double a = 0, b = 0, c = 0, d = 0, e = 0, f = 0;
    double eval(double x, double y) const { return a * x * x + b * x * y + c * y * y + d * x + e * y + f; }
};

Conic envelope_conic(double lambda);
Vec envelope_point(double alpha, double lambda);
// Normalized discriminant of the chord line substituted into the conic.
double chord_tangency_defect(const ChordCoords& c, double lambda);

AlphaPChart to_alpha_p(const ChordCoords& c);
// Chord on level lambda at chart angle alpha; branch picks the sign of p.
ChordCoords level_chord(double lambda, double alpha, int branch = 1);

struct Orbit {
    std::vector<ChordCoords> chords;
    bool stopped = false;
};

Orbit orbit(const ChordCoords& c, int steps);

struct RotationEstimate {
    double value = 0.0;
    bool accuracy_warning = false;
};

// Birkhoff average of the lifted endpoint increments, divided by 2pi.
RotationEstimate rotation_number(const std::vector<ChordCoords>& orbit);

}  // namespace peb::circle
