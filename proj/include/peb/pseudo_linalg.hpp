#pragma once

#include <Eigen/Dense>

#include <vector>

namespace peb {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

enum class CausalClass { SpaceLike, TimeLike, LightLike };

const char* class_name(CausalClass c);

inline constexpr double kEpsLight = 1e-10;

// A nondegenerate symmetric bilinear form stored as its full Gram matrix.
class Metric {
public:
    explicit Metric(const Mat& gram);

    static Metric diagonal(const std::vector<double>& tau);
    static Metric signature(int k, int l);
    // ds^2 = dx dy, i.e. gram [[0,1/2],[1/2,0]].
    static Metric null_plane();

    int dim() const { return static_cast<int>(gram_.rows()); }
    const Mat& gram() const { return gram_; }
    const Mat& inverse() const { return inv_; }
    int positive() const { return k_; }
    int negative() const { return l_; }
    bool is_diagonal() const { return diagonal_; }
    // |det G|^(1/n), the scale used by sharp/flat.
    double scale() const { return scale_; }

private:
    Mat gram_;
    Mat inv_;
    int k_ = 0;
    int l_ = 0;
    bool diagonal_ = false;
    double scale_ = 1.0;
};

double inner(const Metric& m, const Vec& u, const Vec& v);
inline double quad(const Metric& m, const Vec& v) { return inner(m, v, v); }

// Classification is relative to the Euclidean norm of v.
CausalClass classify(const Metric& m, const Vec& v, double eps_light = kEpsLight);

// Covector to vector: |det G|^(1/n) G^{-1} xi. In the null plane this is (a,b) -> (b,a).
Vec sharp(const Metric& m, const Vec& covector);
Vec flat(const Metric& m, const Vec& v);

struct Decomposition {
    Vec tangential;
    Vec normal;
};

Decomposition decompose(const Metric& m, const Vec& w, const Vec& nu, double eps_light = kEpsLight);

double cross2(const Vec& a, const Vec& b);

Vec vec2(double x, double y);
Vec vec3(double x, double y, double z);

}  // namespace peb
