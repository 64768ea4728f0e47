#include "peb/polynomial.hpp"

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace peb {

QPoly qpoly_linear(double c0, double c1) { return {mpq_class(c0), mpq_class(c1)}; }

QPoly qpoly_const(double c) { return {mpq_class(c)}; }

QPoly qpoly_mul(const QPoly& a, const QPoly& b)
{
    if (a.empty() || b.empty()) return {};
    QPoly r(a.size() + b.size() - 1, mpq_class(0));
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return r;
}

QPoly qpoly_add(const QPoly& a, const QPoly& b)
{
    QPoly r(std::max(a.size(), b.size()), mpq_class(0));
    for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
    return r;
}

QPoly qpoly_scale(const QPoly& a, const mpq_class& s)
{
    QPoly r(a);
    for (auto& c : r) c *= s;
    return r;
}

Poly to_double(const QPoly& a)
{
    Poly r(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i].get_d();
    return r;
}

double poly_eval(const Poly& p, double x)
{
    long double acc = 0.0L;
    for (std::size_t i = p.size(); i-- > 0;) acc = acc * x + p[i];
    return static_cast<double>(acc);
}

Poly poly_derivative(const Poly& p)
{
    if (p.size() <= 1) return {0.0};
    Poly d(p.size() - 1);
    for (std::size_t i = 1; i < p.size(); ++i) d[i - 1] = static_cast<double>(i) * p[i];
    return d;
}

static double polish(const Poly& p, const Poly& dp, double x)
{
    for (int it = 0; it < 3; ++it) {
        const double f = poly_eval(p, x);
        const double g = poly_eval(dp, x);
        if (g == 0.0 || !std::isfinite(f / g)) break;
        const double nx = x - f / g;
        if (std::abs(poly_eval(p, nx)) >= std::abs(f)) break;
        x = nx;
    }
    return x;
}

RealRoots real_roots(const Poly& p)
{
    RealRoots out;
    const int deg = static_cast<int>(p.size()) - 1;
    if (deg <= 0) return out;
    if (p.back() == 0.0) throw std::invalid_argument("real_roots: zero leading coefficient");

    if (deg == 1) {
        out.roots.push_back(-p[0] / p[1]);
        return out;
    }

    Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(deg, deg);
    for (int i = 1; i < deg; ++i) comp(i, i - 1) = 1.0;
    for (int i = 0; i < deg; ++i) comp(i, deg - 1) = -p[static_cast<std::size_t>(i)] / p.back();
    Eigen::EigenSolver<Eigen::MatrixXd> es(comp, false);
    const auto& ev = es.eigenvalues();

    const Poly dp = poly_derivative(p);
    for (int i = 0; i < deg; ++i) {
        const double re = ev(i).real();
        const double im = ev(i).imag();
        const double mag = std::max(1.0, std::abs(ev(i)));
        if (std::abs(im) <= 1e-9 * mag) {
            out.roots.push_back(polish(p, dp, re));
        } else if (std::abs(im) <= 1e-5 * mag) {
            out.near_multiple = true;
        }
    }
    std::sort(out.roots.begin(), out.roots.end());
    for (std::size_t i = 1; i < out.roots.size(); ++i) {
        const double mag = std::max(1.0, std::abs(out.roots[i]));
        if (out.roots[i] - out.roots[i - 1] <= 1e-7 * mag) out.near_multiple = true;
    }
    return out;
}

}  // namespace peb
