#pragma once

#include "peb/constrained.hpp"

#include <functional>
#include <string>
#include <vector>

namespace peb {

// x^2 + y^2 = f(z)^2 in dx^2 + dy^2 - dz^2.
struct RevolutionSurface {
    std::string name;
    std::function<double(double)> f;
    std::function<double(double)> fp;
    std::function<double(double)> fpp;
    double zmin = -1e300;
    double zmax = 1e300;

    static RevolutionSurface cylinder(double radius);
    static RevolutionSurface sine(double base = 2.0);  // base + sin z
    // f(z) = c0 + c1 z + ...; domain is where f > 0 near the start.
    static RevolutionSurface polynomial(std::vector<double> coeffs);
    static RevolutionSurface from_name(const std::string& name, const std::vector<double>& coeffs = {});

    Surface surface() const;
    static Metric metric() { return Metric::diagonal({1.0, 1.0, -1.0}); }

    // State on the surface from (phi, z) and meridian/parallel speeds: v = vz (f' e_r + e_z) + vphi e_phi.
    GeoState state(double phi, double z, double vz, double vphi) const;
};

// Angular and vertical components of a tangent vector.
double v_phi(const Vec& x, const Vec& v);
double v_z(const Vec& v);
double angular_momentum(const Vec& x, const Vec& v);  // r v_phi

// v_z^2 (1 - f'^2) / v_phi^2; throws InfiniteCrossRatio when v_phi = 0.
double cross_ratio_sq(const RevolutionSurface& S, const Vec& x, const Vec& v);
// v_z sqrt(1 - f'^2) / v_phi; needs |f'| <= 1.
double cross_ratio(const RevolutionSurface& S, const Vec& x, const Vec& v);
// (1 - cr^2) / r^2.
double clairaut_invariant(const RevolutionSurface& S, const Vec& x, const Vec& v);

// Euclidean angle between v and the meridian direction f' e_r + e_z.
double meridian_angle(const RevolutionSurface& S, const Vec& x, const Vec& v);

GeoRun integrate_revolution_geodesic(const RevolutionSurface& S, const GeoState& start, double length,
                                     const StepOptions& opt = {});

}  // namespace peb
