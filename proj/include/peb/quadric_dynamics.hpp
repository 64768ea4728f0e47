#pragma once

#include "peb/billiard.hpp"
#include "peb/confocal.hpp"
#include "peb/constrained.hpp"

#include <vector>

namespace peb {

// sum_i x_i^2 / a_i^2 = 1 in the metric diag(tau).
class Quadric {
public:
    Quadric(std::vector<double> a2, std::vector<double> tau);

    int dim() const { return static_cast<int>(a2_.size()); }
    const std::vector<double>& a2() const { return a2_; }
    const std::vector<double>& tau() const { return tau_; }
    Metric metric() const { return Metric::diagonal(tau_); }
    Surface surface() const;
    Boundary boundary() const { return Boundary::ellipsoid(metric(), a2_); }
    ConfocalFamily family() const { return ConfocalFamily(a2_, tau_); }

    // Residuals of C x.x = 1 and C x.v = 0.
    double constraint(const Vec& x) const;
    double tangency(const Vec& x, const Vec& v) const;

private:
    std::vector<double> a2_;
    std::vector<double> tau_;
};

using QuadricState = GeoState;

// Advances by exactly h (adaptive sub-steps); throws TropicReached or StepUnderflow.
QuadricState geodesic_step(const Quadric& Q, const QuadricState& s, double h, const StepOptions& opt = {});
GeoRun integrate_quadric_geodesic(const Quadric& Q, const QuadricState& s, double length,
                                  const StepOptions& opt = {});

// F_k = tau_k v_k^2 + sum_{i!=k} (x_i v_k - x_k v_i)^2 / (tau_i a_k^2 - tau_k a_i^2).
std::vector<double> integrals_F(const Quadric& Q, const Vec& x, const Vec& v);
// (sum x_i^2 / (tau_i a_i^4)) (sum v_j^2 / a_j^2), conserved along geodesics.
double joachimsthal(const Quadric& Q, const Vec& x, const Vec& v);
// C x.v at an impact point; alternates in sign from bounce to bounce.
double chord_joachimsthal(const Quadric& Q, const Vec& x, const Vec& v);

Trajectory quadric_billiard(const Quadric& Q, const Vec& x0, const Vec& v0, int bounces);

struct TangentLine {
    Vec x;
    Vec v;
};

std::vector<TangentLine> lines_of(const GeoRun& run);
std::vector<TangentLine> lines_of(const Trajectory& tr);

struct SpectrumStats {
    std::size_t count = 0;            // spectrum size on the first usable line
    std::vector<double> reference;    // that spectrum
    double spread = 0.0;              // max over index of (max - min) across lines
    int used = 0;
    int excluded_light = 0;           // |<v,v>| < 1e-6 for unit Euclidean v
    int excluded_degenerate = 0;
    int count_mismatch = 0;
};

inline constexpr double kChordLightCut = 1e-6;

// For geodesic tangent lines the member lambda = 0 (the quadric itself) is dropped.
SpectrumStats jacobi_chasles_check(const Quadric& Q, const std::vector<TangentLine>& lines,
                                   bool drop_zero);

}  // namespace peb
