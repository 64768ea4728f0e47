#pragma once

#include "peb/polynomial.hpp"
#include "peb/pseudo_linalg.hpp"

#include <string>
#include <vector>

namespace peb {

// sum_i x_i^2 / (a_i^2 + tau_i lambda) = 1, poles at -tau_i a_i^2.
class ConfocalFamily {
public:
    ConfocalFamily(std::vector<double> a2, std::vector<double> tau);

    int dim() const { return static_cast<int>(a2_.size()); }
    const std::vector<double>& a2() const { return a2_; }
    const std::vector<double>& tau() const { return tau_; }
    std::vector<double> poles() const;
    Metric metric() const { return Metric::diagonal(tau_); }

    // f(lambda) from the left-hand side, evaluated directly.
    double f(const Vec& x, double lambda) const;

private:
    std::vector<double> a2_;
    std::vector<double> tau_;
};

inline constexpr double kPoleGap = 1e-8;
inline constexpr double kLeadTol = 1e-12;

struct RootSet {
    std::vector<double> lambdas;
    bool degenerate = false;
    std::string reason;
};

// Cleared numerator prod d_i - sum x_i^2 prod_{j!=i} d_j, d_i = a_i^2 + tau_i lambda.
Poly point_polynomial(const ConfocalFamily& F, const Vec& x);

RootSet quadrics_through_point(const ConfocalFamily& F, const Vec& x);

Vec normal_to_member(const ConfocalFamily& F, double lambda, const Vec& x);

// Largest |cos| between member normals at x, Euclidean-normalized.
double orthogonality_defect(const ConfocalFamily& F, const Vec& x, const std::vector<double>& lambdas);

struct TangencySpectrum {
    std::vector<double> lambdas;
    std::vector<Vec> points;
    bool degenerate = false;
    bool infinite = false;  // cleared discriminant vanishes identically
    std::string reason;
    // Largest |cos| between tangent-hyperplane normals at the tangency points.
    double orthogonality = 0.0;
};

// Cleared tangency discriminant sum v_i^2 prod_{j!=i} d_j - sum_{i<j} M_ij^2 prod_{k!=i,j} d_k,
// with the top coefficient dropped for light-like directions.
Poly line_polynomial(const ConfocalFamily& F, const Vec& x0, const Vec& v, bool light_like);

TangencySpectrum tangent_spectrum_of_line(const ConfocalFamily& F, const Vec& x0, const Vec& v,
                                          double eps_light = kEpsLight);

// Scaled tangency defect of a line with the member lambda (discriminant of the
// line-member quadratic).
double line_member_discriminant(const ConfocalFamily& F, double lambda, const Vec& x0, const Vec& v);

}  // namespace peb
