#include "peb/variational.hpp"

#include "peb/errors.hpp"
#include "peb/line_space.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace peb {

int DiameterSearch::count(CausalClass c) const
{
    return static_cast<int>(std::count_if(diameters.begin(), diameters.end(),
                                          [c](const Diameter& d) { return d.cls == c; }));
}

namespace {

// Unknowns z = (x, y, alpha, beta):
//   E(x-y) - alpha C x = 0,  -E(x-y) - beta C y = 0,  (x^T C x - 1)/2 = 0,  (y^T C y - 1)/2 = 0.
Vec lagrange_residual(const Mat& C, const Mat& E, const Vec& z, int n)
{
    const Vec x = z.head(n), y = z.segment(n, n);
    const double al = z(2 * n), be = z(2 * n + 1);
    const Vec d = E * (x - y);
    Vec R(2 * n + 2);
    R.head(n) = d - al * (C * x);
    R.segment(n, n) = -d - be * (C * y);
    R(2 * n) = 0.5 * (x.dot(C * x) - 1.0);
    R(2 * n + 1) = 0.5 * (y.dot(C * y) - 1.0);
    return R;
}

Mat lagrange_jacobian(const Mat& C, const Mat& E, const Vec& z, int n)
{
    const Vec x = z.head(n), y = z.segment(n, n);
    const double al = z(2 * n), be = z(2 * n + 1);
    Mat J = Mat::Zero(2 * n + 2, 2 * n + 2);
    J.block(0, 0, n, n) = E - al * C;
    J.block(0, n, n, n) = -E;
    J.block(0, 2 * n, n, 1) = -(C * x);
    J.block(n, 0, n, n) = -E;
    J.block(n, n, n, n) = E - be * C;
    J.block(n, 2 * n + 1, n, 1) = -(C * y);
    J.block(2 * n, 0, 1, n) = (C * x).transpose();
    J.block(2 * n + 1, n, 1, n) = (C * y).transpose();
    return J;
}

double ortho_residual(const Vec& Ed, const Vec& Cx)
{
    const Vec perp = Ed - (Cx.dot(Ed) / Cx.squaredNorm()) * Cx;
    return perp.norm() / Ed.norm();
}

// Undamped Newton on the deflated residual R(z) * prod_i (1 + |z - z_i|^-2) over the
// known roots z_i, so repeated seeds are pushed away from critical chords already found.
bool deflated_newton(const Mat& C, const Mat& E, Vec& z, int n, const std::vector<Vec>& known)
{
    Vec w = z;
    for (int it = 0; it < 80; ++it) {
        const Vec R = lagrange_residual(C, E, w, n);
        if (R.norm() <= 1e-14) {
            z = w;
            return true;
        }
        Vec dw = lagrange_jacobian(C, E, w, n).fullPivLu().solve(-R);
        if (!dw.allFinite()) return false;
        Vec glog = Vec::Zero(w.size());
        for (const Vec& k : known) {
            const double r2 = (w - k).squaredNorm();
            if (r2 == 0.0) return false;
            glog -= 2.0 * (w - k) / (r2 * (r2 + 1.0));
        }
        const double den = 1.0 - glog.dot(dw);
        if (den != 0.0) dw /= den;
        w += dw;
        if (!w.allFinite()) return false;
    }
    if (lagrange_residual(C, E, w, n).norm() > 1e-12) return false;
    z = w;
    return true;
}

bool newton(const Mat& C, const Mat& E, Vec& z, int n, const std::vector<Vec>& known)
{
    Vec z0 = z;
    if (deflated_newton(C, E, z0, n, known)) {
        z = z0;
        return true;
    }
    Vec R = lagrange_residual(C, E, z, n);
    double r = R.norm();
    for (int it = 0; it < 200; ++it) {
        if (r <= 1e-14) return true;
        const Mat J = lagrange_jacobian(C, E, z, n);
        const Vec dz = J.fullPivLu().solve(-R);
        if (!dz.allFinite()) return false;
        double t = 1.0;
        bool moved = false;
        for (int k = 0; k < 40; ++k, t *= 0.5) {
            const Vec zt = z + t * dz;
            const Vec Rt = lagrange_residual(C, E, zt, n);
            if (Rt.norm() < r) {
                z = zt;
                R = Rt;
                r = Rt.norm();
                moved = true;
                break;
            }
        }
        if (!moved) return r <= 1e-12;
    }
    return r <= 1e-12;
}

Vec initial_multipliers(const Mat& C, const Mat& E, const Vec& x, const Vec& y, int n)
{
    Vec z(2 * n + 2);
    z.head(n) = x;
    z.segment(n, n) = y;
    const Vec d = E * (x - y);
    const Vec cx = C * x, cy = C * y;
    z(2 * n) = cx.dot(d) / cx.squaredNorm();
    z(2 * n + 1) = -cy.dot(d) / cy.squaredNorm();
    return z;
}

bool same_chord(const Diameter& a, const Vec& x, const Vec& y)
{
    return ((a.x - x).norm() <= kDiameterMerge && (a.y - y).norm() <= kDiameterMerge) ||
           ((a.x - y).norm() <= kDiameterMerge && (a.y - x).norm() <= kDiameterMerge);
}

}  // namespace

DiameterSearch find_diameters(const Mat& C, const Metric& m, int random_pairs, std::uint64_t seed)
{
    const int n = m.dim();
    if (C.rows() != n || C.cols() != n) throw std::invalid_argument("find_diameters: dimension mismatch");
    Eigen::LLT<Mat> llt(C);
    if (llt.info() != Eigen::Success || (C - C.transpose()).norm() > 1e-12 * C.norm())
        throw std::invalid_argument("find_diameters: C must be symmetric positive definite");
    const Mat& E = m.gram();

    std::mt19937_64 rng(seed);
    std::normal_distribution<double> g(0.0, 1.0);
    auto on_Q = [&](Vec z) { return Vec(z / std::sqrt(z.dot(C * z))); };
    auto random_point = [&]() {
        Vec z(n);
        for (int i = 0; i < n; ++i) z(i) = g(rng);
        return on_Q(z);
    };

    std::vector<std::pair<Vec, Vec>> seeds;
    for (int i = 0; i < n; ++i) {
        const Vec x = on_Q(Vec::Unit(n, i));
        seeds.emplace_back(x, -x);
    }
    // Odd-numbered pairs are antipodal: central symmetry keeps Newton on x = -y there.
    for (int k = 0; k < random_pairs; ++k) {
        const Vec x = random_point();
        seeds.emplace_back(x, k % 2 ? Vec(-x) : random_point());
    }

    DiameterSearch out;
    std::vector<Vec> known;
    for (const auto& [x0, y0] : seeds) {
        Vec z = initial_multipliers(C, E, x0, y0, n);
        if (!newton(C, E, z, n, known)) {
            ++out.failed_seeds;
            continue;
        }
        const Vec x = z.head(n), y = z.segment(n, n);
        if ((x - y).norm() <= 1e-8) {
            ++out.collapsed_seeds;
            continue;
        }
        Diameter d;
        d.x = x;
        d.y = y;
        d.f = 0.5 * quad(m, x - y);
        const Vec Ed = E * (x - y);
        d.ortho_x = ortho_residual(Ed, C * x);
        d.ortho_y = ortho_residual(Ed, C * y);
        d.grad_norm = lagrange_residual(C, E, z, n).head(2 * n).norm();
        d.cls = std::abs(d.f) < kDiameterLightCut ? CausalClass::LightLike
                : d.f > 0.0                       ? CausalClass::SpaceLike
                                                  : CausalClass::TimeLike;
        auto& bucket = d.cls == CausalClass::LightLike ? out.light_like : out.diameters;
        if (std::none_of(bucket.begin(), bucket.end(), [&](const Diameter& e) { return same_chord(e, x, y); })) {
            bucket.push_back(d);
            Vec sw(2 * n + 2);
            sw << y, x, z(2 * n + 1), z(2 * n);
            known.push_back(z);
            known.push_back(sw);
        }
    }
    return out;
}

std::vector<Vec> caustic_envelope(const Boundary& B, const std::function<Vec(double)>& q,
                                  const std::vector<double>& ts, double h)
{
    if (B.dim() != 2) throw std::invalid_argument("caustic_envelope: boundary must be planar");
    const Metric& m = B.metric();
    auto nu = [&](double t) { return sharp(m, B.gradient(q(t))); };
    std::vector<Vec> out;
    out.reserve(ts.size());
    for (double t : ts) {
        const Vec qp = (q(t + h) - q(t - h)) / (2.0 * h);
        const Vec n = nu(t);
        const Vec np = (nu(t + h) - nu(t - h)) / (2.0 * h);
        const double den = cross2(np, n);
        if (std::abs(den) <= 1e-12 * np.norm() * n.norm() || np.norm() == 0.0)
            throw NumericError(NumericError::Kind::EnvelopeDegenerate,
                               "caustic: normal family does not turn at t = " + std::to_string(t));
        const double s = -cross2(qp, n) / den;
        out.push_back(q(t) + s * n);
    }
    return out;
}

double astroid_residual(const Vec& p)
{
    return std::cbrt(p(0) * p(0)) + std::cbrt(p(1) * p(1)) - std::cbrt(4.0);
}

double lagrangian_defect(const Metric& m, const LineFamily& psi, double u0, double u1, double v0, double v1,
                         int N, double h)
{
    if (N < 1) throw std::invalid_argument("lagrangian_defect: empty grid");
    double worst = 0.0;
    bool first = true;
    CausalClass cls0 = CausalClass::SpaceLike;
    for (int i = 0; i < N; ++i)
        for (int j = 0; j < N; ++j) {
            const double u = N == 1 ? u0 : u0 + (u1 - u0) * i / (N - 1);
            const double v = N == 1 ? v0 : v0 + (v1 - v0) * j / (N - 1);
            const auto [p, d] = psi(u, v);
            const CausalClass c = classify(m, d);
            if (c == CausalClass::LightLike || (!first && c != cls0))
                throw NumericError(NumericError::Kind::Chart, "lagrangian_defect: normal class changes on patch");
            first = false;
            cls0 = c;
            const auto [pu1, du1] = psi(u + h, v);
            const auto [pu0, du0] = psi(u - h, v);
            const auto [pv1, dv1] = psi(u, v + h);
            const auto [pv0, dv0] = psi(u, v - h);
            OrientedLine l;
            l.base = p;
            l.dir = d;
            l.cls = c;
            const LineVariation a{(pu1 - pu0) / (2.0 * h), (du1 - du0) / (2.0 * h)};
            const LineVariation b{(pv1 - pv0) / (2.0 * h), (dv1 - dv0) / (2.0 * h)};
            worst = std::max(worst, std::abs(omega_pairing(m, l, a, b)));
        }
    return worst;
}

LineFamily gauss_map(const Metric& m, std::function<Vec(double, double)> param, std::function<Vec(const Vec&)> grad)
{
    return [m, param = std::move(param), grad = std::move(grad)](double u, double v) {
        const Vec p = param(u, v);
        const Vec n = sharp(m, grad(p));
        return std::make_pair(p, Vec(n / std::sqrt(std::abs(quad(m, n)))));
    };
}

}  // namespace peb
