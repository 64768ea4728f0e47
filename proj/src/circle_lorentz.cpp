#include "peb/circle_lorentz.hpp"

#include "peb/billiard.hpp"
#include "peb/errors.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace peb::circle {

namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kQ = kPi / 2.0;
constexpr double kTwoPi = 2.0 * kPi;
constexpr double kInvSqrt2 = 0.70710678118654752440;

int mod4(int k) { return ((k % 4) + 4) % 4; }

void normalize(int& k, double& r)
{
    const double j = std::floor(r / kQ + 0.5);
    k = mod4(k + static_cast<int>(j));
    r -= j * kQ;
}

// sin(m pi/2 + x)
double sin_q(int m, double x)
{
    switch (mod4(m)) {
    case 0: return std::sin(x);
    case 1: return std::cos(x);
    case 2: return -std::sin(x);
    default: return -std::cos(x);
    }
}

}  // namespace

ChordCoords ChordCoords::from_angles(double t1, double t2)
{
    ChordCoords c;
    c.r1 = t1;
    c.r2 = t2;
    normalize(c.k1, c.r1);
    normalize(c.k2, c.r2);
    return c;
}

double ChordCoords::t1() const
{
    const double t = k1 * kQ + r1;
    return t < 0.0 ? t + kTwoPi : t;
}

double ChordCoords::t2() const
{
    const double t = k2 * kQ + r2;
    return t < 0.0 ? t + kTwoPi : t;
}

double ChordCoords::arc() const
{
    const int m = mod4(k2 - k1);
    const double x = r2 - r1;
    double d = m * kQ + x;
    if (d <= 0.0) d += kTwoPi;
    return d;
}

double ChordCoords::half_sin() const
{
    const int m = mod4(k2 - k1);
    const double y = 0.5 * (r2 - r1);
    switch (m) {
    case 0: return std::abs(std::sin(y));
    case 1: return (std::cos(y) + std::sin(y)) * kInvSqrt2;
    case 2: return std::cos(y);
    default: return (std::cos(y) - std::sin(y)) * kInvSqrt2;
    }
}

double ChordCoords::half_cot() const
{
    const int m = mod4(k2 - k1);
    const double y = 0.5 * (r2 - r1);
    const double c = std::cos(y);
    const double s = std::sin(y);
    switch (m) {
    case 0: return c / s;
    case 1: return (c - s) / (c + s);
    case 2: return -s / c;
    default: return -(c + s) / (c - s);
    }
}

double ChordCoords::sum_sin() const { return sin_q(k1 + k2, r1 + r2); }

Step circle_step(const ChordCoords& c)
{
    if (std::abs(c.r2) < kEpsSing)
        throw NumericError(NumericError::Kind::TrajectoryStopped,
                           "circle_map: second endpoint at a singular point");
    if (mod4(c.k2 - c.k1) == 0 && c.r2 == c.r1)
        throw std::invalid_argument("circle_map: degenerate chord");
    const double X = 2.0 / std::tan(2.0 * c.r2) - c.half_cot();
    // t3 = t2 + dn = t2 - e (mod 2pi); add whichever increment is smaller.
    const double dn = 2.0 * std::atan2(1.0, -X);
    const double e = 2.0 * std::atan2(1.0, X);
    Step s;
    s.next.k1 = c.k2;
    s.next.r1 = c.r2;
    s.next.k2 = c.k2;
    s.shift = dn < kPi ? dn : -e;
    s.next.r2 = c.r2 + s.shift;
    normalize(s.next.k2, s.next.r2);
    s.arc = dn;
    return s;
}

ChordCoords circle_map(const ChordCoords& c) { return circle_step(c).next; }

double InvariantLevel::lambda() const
{
    if (den == 0.0) throw std::domain_error("level: light-like stratum has no finite lambda");
    return num / den;
}

InvariantLevel integral_level(const ChordCoords& c)
{
    const double hs = c.half_sin();
    return {hs * hs, c.sum_sin()};
}

double integral_I(const ChordCoords& c)
{
    const double den = c.sum_sin();
    if (den == 0.0) throw std::domain_error("integral_I: light-like chord, use integral_level");
    return c.half_sin() / std::sqrt(std::abs(den));
}

double level_defect(const InvariantLevel& a, const InvariantLevel& b)
{
    const double scale = std::max(a.num, b.num);
    return std::abs(b.num * a.den - a.num * b.den) / scale;
}

Vec point(double t) { return vec2(std::cos(t), std::sin(t)); }

double geometric_integral(const Vec& q, const Vec& v)
{
    static const Metric m = Metric::null_plane();
    return inner(m, sharp(m, q), v);
}

double geometric_integral(const ChordCoords& c)
{
    static const Metric m = Metric::null_plane();
    const Vec q = point(c.t1());
    const Vec w = point(c.t2()) - q;
    return geometric_integral(q, w / std::sqrt(std::abs(quad(m, w))));
}

double density(Density d, const ChordCoords& c)
{
    const double hs = c.half_sin();
    if (d == Density::Omega_inv) return 1.0 / (hs * hs);
    return hs / std::pow(std::abs(c.sum_sin()), 1.5);
}

double form_invariance_check(Density d, const ChordCoords& c, double h)
{
    const Step base = circle_step(c);
    for (double r : {c.r1, c.r2, base.next.r2})
        if (std::abs(r) <= 2.0 * h)
            throw NumericError(NumericError::Kind::Stencil,
                               "form check: stencil crosses a singular point");
    auto shift_at = [&](double d1) {
        ChordCoords p = c;
        p.r1 += d1;
        return circle_step(p).shift;
    };
    // T(t1,t2) = (t2, t2 + arc'), so det J = -d(arc')/dt1. The shift differs
    // from arc' by a constant and keeps its digits when arc' is close to 2pi.
    double diff = shift_at(h) - shift_at(-h);
    if (diff > kPi) diff -= kTwoPi;
    if (diff < -kPi) diff += kTwoPi;
    const double da_dt1 = diff / (2.0 * h);
    const double det = -da_dt1;
    return std::abs(det * density(d, base.next) / density(d, c) - 1.0);
}

double omega_chord_factor() { return kInvSqrt2; }

Conic envelope_conic(double lambda) { return {1.0, 2.0 * lambda, 1.0, 0.0, 0.0, lambda * lambda - 1.0}; }

Vec envelope_point(double alpha, double lambda)
{
    const double s = 1.0 - lambda * std::sin(2.0 * alpha);
    if (!(s > 0.0)) throw std::invalid_argument("envelope_point: need 1 - lambda sin(2 alpha) > 0");
    const double k = 1.0 / std::sqrt(s);
    return k * vec2(std::cos(alpha) - lambda * std::sin(alpha), std::sin(alpha) - lambda * std::cos(alpha));
}

double chord_tangency_defect(const ChordCoords& c, double lambda)
{
    const Vec q = point(c.t1());
    const Vec w = (point(c.t2()) - q).normalized();
    const double A = w(0) * w(0) + w(1) * w(1) + 2.0 * lambda * w(0) * w(1);
    const double B = q(0) * w(0) + q(1) * w(1) + lambda * (q(0) * w(1) + q(1) * w(0));
    const double C0 = 2.0 * lambda * q(0) * q(1) + lambda * lambda;
    const double disc = B * B - A * C0;
    return std::abs(disc) / std::max({1.0, B * B, std::abs(A * C0)});
}

AlphaPChart to_alpha_p(const ChordCoords& c)
{
    const double a = c.arc();
    AlphaPChart ch;
    ch.alpha = std::fmod(c.t1() + 0.5 * a, kTwoPi);
    ch.p = std::cos(0.5 * a);
    return ch;
}

ChordCoords level_chord(double lambda, double alpha, int branch)
{
    const double v = 1.0 - lambda * std::sin(2.0 * alpha);
    if (v < 0.0 || v > 1.0) throw std::invalid_argument("level_chord: alpha not on this level");
    const double p = (branch >= 0 ? 1.0 : -1.0) * std::sqrt(v);
    const double delta = std::acos(p);
    return ChordCoords::from_angles(alpha - delta, alpha + delta);
}

Orbit orbit(const ChordCoords& c, int steps)
{
    Orbit o;
    o.chords.reserve(static_cast<std::size_t>(steps) + 1);
    o.chords.push_back(c);
    for (int i = 0; i < steps; ++i) {
        try {
            o.chords.push_back(circle_map(o.chords.back()));
        } catch (const NumericError&) {
            o.stopped = true;
            break;
        }
    }
    return o;
}

RotationEstimate rotation_number(const std::vector<ChordCoords>& orbit)
{
    if (orbit.empty()) throw std::invalid_argument("rotation_number: empty orbit");
    double sum = 0.0;
    for (const auto& c : orbit) sum += c.arc();
    RotationEstimate r;
    r.value = sum / (kTwoPi * static_cast<double>(orbit.size()));
    r.accuracy_warning = orbit.size() < 1000;
    return r;
}

}  // namespace peb::circle
