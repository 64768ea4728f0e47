#pragma once

#include "peb/billiard.hpp"
#include "peb/pseudo_linalg.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace peb {

// Critical chord of f(x,y) = <x-y,x-y>/2 on Q x Q, Q = {x^T C x = 1}.
struct Diameter {
    Vec x;
    Vec y;
    CausalClass cls = CausalClass::SpaceLike;
    double f = 0.0;
    double ortho_x = 0.0;    // normalized residual of E(x-y) parallel to Cx
    double ortho_y = 0.0;
    double grad_norm = 0.0;  // Lagrange residual at the solution
};

struct DiameterSearch {
    std::vector<Diameter> diameters;
    std::vector<Diameter> light_like;  // |f| < 1e-8, never counted
    int failed_seeds = 0;
    int collapsed_seeds = 0;           // converged to x = y
    int count(CausalClass c) const;
};

inline constexpr double kDiameterLightCut = 1e-8;
inline constexpr double kDiameterMerge = 1e-6;

// Seeds: antipodal coordinate pairs plus random_pairs random pairs on Q, every
// second one antipodal. Chords already found are deflated out of later solves.
DiameterSearch find_diameters(const Mat& C, const Metric& m, int random_pairs = 50, std::uint64_t seed = 1);

// Envelope of the normal lines q(t) + s nu(t), nu = sharp(grad F), at each t of the grid.
std::vector<Vec> caustic_envelope(const Boundary& B, const std::function<Vec(double)>& q,
                                  const std::vector<double>& ts, double h = 1e-5);

// |x|^(2/3) + |y|^(2/3) - 2^(2/3)
double astroid_residual(const Vec& p);

// A two-parameter family of oriented lines (point, direction).
using LineFamily = std::function<std::pair<Vec, Vec>(double, double)>;

// max over an N x N grid of [u0,u1]x[v0,v1] of |omega(d_u psi, d_v psi)|, central differences of step h.
double lagrangian_defect(const Metric& m, const LineFamily& psi, double u0, double u1, double v0, double v1,
                         int N, double h = 1e-5);

// Gauss map (normal lines) of a parametrized hypersurface patch with gradient field grad F.
LineFamily gauss_map(const Metric& m, std::function<Vec(double, double)> param,
                     std::function<Vec(const Vec&)> grad);

}  // namespace peb
