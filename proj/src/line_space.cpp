#include "peb/line_space.hpp"

#include "peb/errors.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace peb {

OrientedLine OrientedLine::make(const Metric& m, const Vec& point, const Vec& dir, double eps_light)
{
    OrientedLine l;
    l.cls = classify(m, dir, eps_light);
    if (l.cls == CausalClass::LightLike) {
        l.base = point;
        l.dir = dir;
        return l;
    }
    const double vv = quad(m, dir);
    l.dir = dir / std::sqrt(std::abs(vv));
    const double s = inner(m, point, l.dir) / quad(m, l.dir);
    l.base = point - s * l.dir;
    return l;
}

OrientedLine line_from_ur(const URChart& c)
{
    const double em = std::exp(-c.u);
    const double ep = std::exp(c.u);
    OrientedLine l;
    l.dir = vec2(em, ep);
    l.base = c.r * vec2(em, -ep);
    l.cls = CausalClass::SpaceLike;
    return l;
}

URChart to_ur(const OrientedLine& l)
{
    if (l.dir.size() != 2) throw std::invalid_argument("to_ur: planar lines only");
    const double a = l.dir(0);
    const double b = l.dir(1);
    if (!(a > 0.0 && b > 0.0))
        throw NumericError(NumericError::Kind::Chart,
                           "to_ur: direction is not space-like in the first quadrant");
    // Rescale to (e^-u, e^u); the foot of the perpendicular is invariant.
    const double s = std::sqrt(a * b);
    const double em = a / s;
    const double ep = b / s;
    URChart c;
    c.u = 0.5 * std::log(ep / em);
    // base = r (e^-u, -e^u) once the base sits at the foot; project it first.
    const Vec d = vec2(em, ep);
    const Vec n = vec2(em, -ep);
    const Vec& x = l.base;
    // <x,d> in the null plane is (x0 d1 + x1 d0)/2; remove the d component.
    const double along = 0.5 * (x(0) * d(1) + x(1) * d(0));
    const Vec foot = x - along * d;
    c.r = 0.5 * (foot(0) / n(0) + foot(1) / n(1));
    return c;
}

double area_form_ur(int sign)
{
    if (sign != 1 && sign != -1) throw std::invalid_argument("area_form_ur: sign must be +-1");
    return 2.0 * sign;
}

Mat4 omega3_matrix(double /*u*/, double phi, double /*r1*/, double r2)
{
    Mat4 M = Mat4::Zero();
    M(0, 1) = r2 * std::sinh(phi);
    M(1, 2) = -1.0;
    M(0, 3) = std::cosh(phi);
    M(1, 0) = -M(0, 1);
    M(2, 1) = -M(1, 2);
    M(3, 0) = -M(0, 3);
    return M;
}

CharCoeffs omega3_char_coeffs(const Mat4& M)
{
    CharCoeffs c;
    for (int i = 0; i < 4; ++i)
        for (int j = i + 1; j < 4; ++j) c.a += M(i, j) * M(i, j);
    const double pf = M(0, 1) * M(2, 3) - M(0, 2) * M(1, 3) + M(0, 3) * M(1, 2);
    c.b = pf * pf;
    return c;
}

CharCoeffs omega3_char_closed(double phi, double r2)
{
    const double sh = std::sinh(phi);
    const double ch = std::cosh(phi);
    return {1.0 + r2 * r2 * sh * sh + ch * ch, ch * ch};
}

std::vector<EigenPairs> omega3_eigen_scaling(double phi, const std::vector<double>& r2_list)
{
    if (phi == 0.0) throw std::invalid_argument("omega3_eigen_scaling: phi must be nonzero");
    std::vector<EigenPairs> out;
    out.reserve(r2_list.size());
    for (double r2 : r2_list) {
        Eigen::EigenSolver<Mat4> es(omega3_matrix(0.0, phi, 0.0, r2), false);
        std::array<double, 4> mags{};
        for (int i = 0; i < 4; ++i) mags[static_cast<std::size_t>(i)] = std::abs(es.eigenvalues()(i));
        std::sort(mags.begin(), mags.end());
        out.push_back({0.5 * (mags[0] + mags[1]), 0.5 * (mags[2] + mags[3])});
    }
    return out;
}

double omega_pairing(const Metric& m, const OrientedLine& l, const LineVariation& a,
                     const LineVariation& b)
{
    if (l.cls == CausalClass::LightLike)
        throw std::invalid_argument("omega_pairing: light-like lines carry no symplectic pairing");
    const Vec& x = l.base;
    const Vec& v = l.dir;
    const double vv = quad(m, v);
    auto gauge = [&](const LineVariation& d) {
        LineVariation g;
        g.dv = d.dv - (inner(m, d.dv, v) / vv) * v;
        g.dx = d.dx - ((inner(m, d.dx, v) + inner(m, x, g.dv)) / vv) * v;
        return g;
    };
    const LineVariation ga = gauge(a);
    const LineVariation gb = gauge(b);
    return flat(m, ga.dv).dot(gb.dx) - flat(m, gb.dv).dot(ga.dx);
}

}  // namespace peb
