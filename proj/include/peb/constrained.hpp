#pragma once

#include "peb/pseudo_linalg.hpp"

#include <functional>
#include <string>
#include <vector>

namespace peb {

// Implicit hypersurface F(x) = 0 with gradient and Hessian quadratic form v^T H(x) v.
struct Surface {
    std::function<double(const Vec&)> value;
    std::function<Vec(const Vec&)> grad;
    std::function<double(const Vec&, const Vec&)> hess;
};

struct GeoState {
    Vec x;
    Vec v;
};

struct StepOptions {
    double tol = 1e-10;       // mixed absolute/relative local error target
    double h_min = 1e-15;
    double h_max = 0.05;
    double eps_tropic = 1e-8; // |<n,n>| / |n|^2 at which the run stops
    bool keep_energy = true;  // project <v,v> back to its initial value after each step
};

enum class GeoStatus { Completed, TropicReached, StepUnderflow };

const char* geo_status_name(GeoStatus s);

struct GeoRun {
    std::vector<GeoState> states;
    std::vector<double> param;  // arclength (affine parameter for light-like data)
    GeoStatus status = GeoStatus::Completed;
    std::string message;
};

// Normalized causal character of the surface normal n = G^{-1} grad F.
double tropic_measure(const Surface& S, const Metric& m, const Vec& x);

// Restores F(x) = 0 and grad F . v = 0.
GeoState project(const Surface& S, const Metric& m, const GeoState& s);

// Tangential correction of v so that <v,v> = q0; keeps light-like data light-like.
GeoState restore_energy(const Surface& S, const Metric& m, const GeoState& s, double q0);

struct AdaptiveStep {
    GeoState state;
    double h_done = 0.0;
    double h_next = 0.0;
};

// One accepted RK4 step (step doubling) of x'' = mu n, mu = -v^T H v / (grad F . n).
AdaptiveStep adaptive_step(const Surface& S, const Metric& m, const GeoState& s, double h_try,
                           const StepOptions& opt);

GeoRun integrate_geodesic(const Surface& S, const Metric& m, const GeoState& start, double length,
                          const StepOptions& opt = {});

}  // namespace peb
