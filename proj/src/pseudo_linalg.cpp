#include "peb/pseudo_linalg.hpp"

#include "peb/errors.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace peb {

const char* kind_name(NumericError::Kind k)
{
    using K = NumericError::Kind;
    switch (k) {
    case K::SingularNormal: return "SingularNormal";
    case K::TrajectoryStopped: return "TrajectoryStopped";
    case K::Escape: return "Escape";
    case K::Graze: return "Graze";
    case K::LocalChart: return "LocalChart";
    case K::Stencil: return "Stencil";
    case K::DegenerateMember: return "DegenerateMember";
    case K::TropicReached: return "TropicReached";
    case K::StepUnderflow: return "StepUnderflow";
    case K::Chart: return "Chart";
    case K::EnvelopeDegenerate: return "EnvelopeDegenerate";
    case K::InfiniteCrossRatio: return "InfiniteCrossRatio";
    case K::Convergence: return "Convergence";
    }
    return "?";
}

const char* class_name(CausalClass c)
{
    switch (c) {
    case CausalClass::SpaceLike: return "space";
    case CausalClass::TimeLike: return "time";
    case CausalClass::LightLike: return "light";
    }
    return "?";
}

Metric::Metric(const Mat& gram) : gram_(gram)
{
    const Eigen::Index n = gram.rows();
    if (n == 0 || gram.cols() != n)
        throw std::invalid_argument("metric: gram must be a nonempty square matrix");
    if (!gram.allFinite())
        throw std::invalid_argument("metric: non-finite gram entry");
    const double big = gram.cwiseAbs().maxCoeff();
    if (big == 0.0) throw std::invalid_argument("metric: gram is degenerate");
    if ((gram - gram.transpose()).cwiseAbs().maxCoeff() > 1e-14 * big)
        throw std::invalid_argument("metric: gram is not symmetric");
    const double det = (gram / big).determinant();
    if (std::abs(det) <= 1e-12)
        throw std::invalid_argument("metric: gram is degenerate");

    Eigen::SelfAdjointEigenSolver<Mat> es(gram);
    for (Eigen::Index i = 0; i < n; ++i) (es.eigenvalues()(i) > 0 ? k_ : l_)++;
    inv_ = gram.inverse();
    diagonal_ = (gram - Mat(gram.diagonal().asDiagonal())).cwiseAbs().maxCoeff() == 0.0;
    scale_ = std::pow(std::abs(gram.determinant()), 1.0 / static_cast<double>(n));
}

Metric Metric::diagonal(const std::vector<double>& tau)
{
    Vec d(static_cast<Eigen::Index>(tau.size()));
    for (std::size_t i = 0; i < tau.size(); ++i) d(static_cast<Eigen::Index>(i)) = tau[i];
    return Metric(Mat(d.asDiagonal()));
}

Metric Metric::signature(int k, int l)
{
    if (k < 0 || l < 0 || k + l == 0) throw std::invalid_argument("metric: bad signature");
    std::vector<double> tau(static_cast<std::size_t>(k), 1.0);
    tau.insert(tau.end(), static_cast<std::size_t>(l), -1.0);
    return diagonal(tau);
}

Metric Metric::null_plane()
{
    Mat g(2, 2);
    g << 0.0, 0.5, 0.5, 0.0;
    return Metric(g);
}

static void check_dim(const Metric& m, const Vec& v, const char* what)
{
    if (v.size() != m.dim())
        throw std::invalid_argument(std::string(what) + ": dimension mismatch (metric " +
                                    std::to_string(m.dim()) + ", vector " +
                                    std::to_string(v.size()) + ")");
}

double inner(const Metric& m, const Vec& u, const Vec& v)
{
    check_dim(m, u, "inner");
    check_dim(m, v, "inner");
    if (m.is_diagonal()) return (u.array() * m.gram().diagonal().array() * v.array()).sum();
    return u.dot(m.gram() * v);
}

CausalClass classify(const Metric& m, const Vec& v, double eps_light)
{
    const double e2 = v.squaredNorm();
    if (e2 == 0.0) throw std::invalid_argument("classify: zero vector");
    const double q = quad(m, v) / e2;
    if (q > eps_light) return CausalClass::SpaceLike;
    if (q < -eps_light) return CausalClass::TimeLike;
    return CausalClass::LightLike;
}

Vec sharp(const Metric& m, const Vec& covector)
{
    check_dim(m, covector, "sharp");
    return m.scale() * (m.inverse() * covector);
}

Vec flat(const Metric& m, const Vec& v)
{
    check_dim(m, v, "flat");
    return (m.gram() * v) / m.scale();
}

Decomposition decompose(const Metric& m, const Vec& w, const Vec& nu, double eps_light)
{
    const double nn = quad(m, nu);
    if (std::abs(nn) <= eps_light * nu.squaredNorm())
        throw NumericError(NumericError::Kind::SingularNormal,
                           "decompose: light-like normal, reflection undefined");
    Decomposition d;
    d.normal = (inner(m, w, nu) / nn) * nu;
    d.tangential = w - d.normal;
    return d;
}

double cross2(const Vec& a, const Vec& b)
{
    if (a.size() != 2 || b.size() != 2) throw std::invalid_argument("cross2: needs 2-vectors");
    return a(0) * b(1) - a(1) * b(0);
}

Vec vec2(double x, double y)
{
    Vec v(2);
    v << x, y;
    return v;
}

Vec vec3(double x, double y, double z)
{
    Vec v(3);
    v << x, y, z;
    return v;
}

}  // namespace peb
