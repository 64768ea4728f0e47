#include "peb/revolution.hpp"

#include "peb/errors.hpp"

#include <cmath>
#include <stdexcept>

namespace peb {

RevolutionSurface RevolutionSurface::cylinder(double radius)
{
    if (!(radius > 0.0)) throw std::invalid_argument("cylinder: radius must be positive");
    return {"cylinder", [radius](double) { return radius; }, [](double) { return 0.0; },
            [](double) { return 0.0; }};
}

RevolutionSurface RevolutionSurface::sine(double base)
{
    if (!(base > 1.0)) throw std::invalid_argument("sine profile: base must exceed 1");
    return {"sine", [base](double z) { return base + std::sin(z); }, [](double z) { return std::cos(z); },
            [](double z) { return -std::sin(z); }};
}

RevolutionSurface RevolutionSurface::polynomial(std::vector<double> c)
{
    if (c.empty()) throw std::invalid_argument("polynomial profile: no coefficients");
    auto eval = [](const std::vector<double>& p, double z) {
        double s = 0.0;
        for (auto it = p.rbegin(); it != p.rend(); ++it) s = s * z + *it;
        return s;
    };
    std::vector<double> d1, d2;
    for (std::size_t i = 1; i < c.size(); ++i) d1.push_back(static_cast<double>(i) * c[i]);
    for (std::size_t i = 1; i < d1.size(); ++i) d2.push_back(static_cast<double>(i) * d1[i]);
    return {"polynomial", [c, eval](double z) { return eval(c, z); }, [d1, eval](double z) { return eval(d1, z); },
            [d2, eval](double z) { return eval(d2, z); }};
}

RevolutionSurface RevolutionSurface::from_name(const std::string& name, const std::vector<double>& coeffs)
{
    if (name == "cylinder") return cylinder(coeffs.empty() ? 1.0 : coeffs[0]);
    if (name == "sine") return sine(coeffs.empty() ? 2.0 : coeffs[0]);
    if (name == "polynomial") return polynomial(coeffs);
    throw std::invalid_argument("unknown profile '" + name + "' (cylinder, sine, polynomial)");
}

Surface RevolutionSurface::surface() const
{
    const auto F = f;
    const auto Fp = fp;
    const auto Fpp = fpp;
    Surface S;
    S.value = [F](const Vec& x) {
        const double r = F(x(2));
        return x(0) * x(0) + x(1) * x(1) - r * r;
    };
    S.grad = [F, Fp](const Vec& x) { return vec3(2.0 * x(0), 2.0 * x(1), -2.0 * F(x(2)) * Fp(x(2))); };
    S.hess = [F, Fp, Fpp](const Vec& x, const Vec& v) {
        const double z = x(2);
        const double d = Fp(z) * Fp(z) + F(z) * Fpp(z);
        return 2.0 * v(0) * v(0) + 2.0 * v(1) * v(1) - 2.0 * d * v(2) * v(2);
    };
    return S;
}

GeoState RevolutionSurface::state(double phi, double z, double vz, double vphi) const
{
    const double r = f(z);
    if (!(r > 0.0)) throw std::invalid_argument("revolution: f(z) must be positive");
    const double c = std::cos(phi), s = std::sin(phi);
    const double vr = fp(z) * vz;
    return {vec3(r * c, r * s, z), vec3(vr * c - vphi * s, vr * s + vphi * c, vz)};
}

double v_phi(const Vec& x, const Vec& v)
{
    const double r = std::hypot(x(0), x(1));
    return (x(0) * v(1) - x(1) * v(0)) / r;
}

double v_z(const Vec& v) { return v(2); }

double angular_momentum(const Vec& x, const Vec& v) { return x(0) * v(1) - x(1) * v(0); }

double cross_ratio_sq(const RevolutionSurface& S, const Vec& x, const Vec& v)
{
    const double vp = v_phi(x, v);
    if (vp == 0.0) throw NumericError(NumericError::Kind::InfiniteCrossRatio, "cross ratio: v_phi = 0");
    const double d = S.fp(x(2));
    return v(2) * v(2) * (1.0 - d * d) / (vp * vp);
}

double cross_ratio(const RevolutionSurface& S, const Vec& x, const Vec& v)
{
    const double vp = v_phi(x, v);
    if (vp == 0.0) throw NumericError(NumericError::Kind::InfiniteCrossRatio, "cross ratio: v_phi = 0");
    const double d = S.fp(x(2));
    if (d * d > 1.0) throw std::domain_error("cross ratio: |f'| > 1, the surface is space-like here");
    return v(2) * std::sqrt(1.0 - d * d) / vp;
}

double clairaut_invariant(const RevolutionSurface& S, const Vec& x, const Vec& v)
{
    const double r2 = x(0) * x(0) + x(1) * x(1);
    return (1.0 - cross_ratio_sq(S, x, v)) / r2;
}

double meridian_angle(const RevolutionSurface& S, const Vec& x, const Vec& v)
{
    const double r = std::hypot(x(0), x(1));
    const double d = S.fp(x(2));
    const Vec t = vec3(d * x(0) / r, d * x(1) / r, 1.0).normalized();
    const Eigen::Vector3d a(t(0), t(1), t(2)), b(v(0), v(1), v(2));
    return std::atan2(a.cross(b).norm(), std::abs(a.dot(b)));
}

GeoRun integrate_revolution_geodesic(const RevolutionSurface& S, const GeoState& start, double length,
                                     const StepOptions& opt)
{
    return integrate_geodesic(S.surface(), RevolutionSurface::metric(), start, length, opt);
}

}  // namespace peb
