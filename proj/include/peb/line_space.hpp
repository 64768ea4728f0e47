#pragma once

#include "peb/pseudo_linalg.hpp"

#include <array>
#include <vector>

namespace peb {

struct OrientedLine {
    Vec base;
    Vec dir;
    CausalClass cls = CausalClass::SpaceLike;

    // Normalizes dir to <dir,dir> = +-1 and moves base to the foot of the
    // perpendicular from the origin; light-like lines keep their data.
    static OrientedLine make(const Metric& m, const Vec& point, const Vec& dir,
                             double eps_light = kEpsLight);
};

// Space-like line of the null plane with first-quadrant direction.
struct URChart {
    double u = 0.0;
    double r = 0.0;
};

struct AlphaPChart {
    double alpha = 0.0;
    double p = 0.0;
};

OrientedLine line_from_ur(const URChart& c);
URChart to_ur(const OrientedLine& l);

// Coefficient of du^dr for the symplectic form on L+ (sign=+1) or L- (sign=-1).
double area_form_ur(int sign);

using Mat4 = Eigen::Matrix4d;

// Form matrix in the ordered basis (du, dphi, dr1, dr2).
Mat4 omega3_matrix(double u, double phi, double r1, double r2);

struct CharCoeffs {
    double a = 0.0;
    double b = 0.0;
};

// lambda^4 + a lambda^2 + b computed from the matrix entries.
CharCoeffs omega3_char_coeffs(const Mat4& M);
CharCoeffs omega3_char_closed(double phi, double r2);

struct EigenPairs {
    double small = 0.0;  // |lambda| of the pair going to 0
    double large = 0.0;  // |lambda| of the pair going to infinity
};

std::vector<EigenPairs> omega3_eigen_scaling(double phi, const std::vector<double>& r2_list);

struct LineVariation {
    Vec dx;
    Vec dv;
};

// <dv1,dx2> - <dv2,dx1> after projecting both variations to the gauge
// <v,v> = const, <x,v> = 0 at the line (point x, direction v).
double omega_pairing(const Metric& m, const OrientedLine& l, const LineVariation& a,
                     const LineVariation& b);

}  // namespace peb
