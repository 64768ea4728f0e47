#pragma once

#include "peb/line_space.hpp"
#include "peb/pseudo_linalg.hpp"

#include <functional>
#include <string>
#include <vector>

namespace peb {

inline constexpr double kEpsSing = 1e-9;
inline constexpr double kEpsStep = 1e-12;

class Boundary {
public:
    enum class Kind { Quadric, Implicit, Graph };
    using Scalar = std::function<double(const Vec&)>;
    using Gradient = std::function<Vec(const Vec&)>;
    using Fn1 = std::function<double(double)>;

    // sum_i (x^T C x) = 1 with C symmetric positive definite; diag(1/a^2) for axis data.
    static Boundary quadric(const Metric& m, const Mat& C);
    static Boundary ellipsoid(const Metric& m, const std::vector<double>& a2);
    static Boundary implicit(const Metric& m, Scalar F, Gradient grad, double extent = 10.0);
    // y = f(x) in the plane, written as F = y - f(x).
    static Boundary graph(const Metric& m, Fn1 f, Fn1 fp, Fn1 fpp, double extent = 10.0);

    Kind kind() const { return kind_; }
    const Metric& metric() const { return metric_; }
    const Mat& form() const { return C_; }
    int dim() const { return metric_.dim(); }

    double value(const Vec& q) const;
    Vec gradient(const Vec& q) const;
    double extent() const { return extent_; }

private:
    Boundary(Kind k, const Metric& m) : kind_(k), metric_(m) {}

    Kind kind_;
    Metric metric_;
    Mat C_;
    Scalar F_;
    Gradient grad_;
    double extent_ = 10.0;
};

struct NormalInfo {
    Vec nu;
    double nn = 0.0;
    bool singular = false;
};

NormalInfo normal_at(const Boundary& B, const Vec& q, double eps_sing = kEpsSing);

Vec next_hit(const Boundary& B, const OrientedLine& l, const Vec& from);
// Same with an explicit direction (no normalization).
Vec next_hit_dir(const Boundary& B, const Vec& from, const Vec& dir);

Vec reflect(const Boundary& B, const Vec& q, const Vec& w, double eps_sing = kEpsSing);

double harmonic_defect(const Vec& a, const Vec& b, const Vec& c, const Vec& d);

struct BounceRecord {
    Vec point;
    Vec incoming;
    Vec outgoing;
    Vec normal;
    double harmonic_defect = 0.0;
};

struct Trajectory {
    enum class Status { Completed, Stopped, Escaped, Grazed };
    std::vector<BounceRecord> bounces;
    Status status = Status::Completed;
    std::string message;
};

const char* status_name(Trajectory::Status s);

// l0 is followed forward from l0.base, which must lie inside or on B.
Trajectory iterate(const Boundary& B, const OrientedLine& l0, int N);

struct NearSingular {
    double t = 0.0;
    double v = 0.0;
};

// Two reflections of the direction (u,1) off y = a x^2 near the singular point at 0.
NearSingular double_reflection_near_singular(double a, double u, double s);

}  // namespace peb
