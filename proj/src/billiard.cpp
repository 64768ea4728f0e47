#include "peb/billiard.hpp"

#include "peb/errors.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace peb {

using K = NumericError::Kind;

Boundary Boundary::quadric(const Metric& m, const Mat& C)
{
    if (C.rows() != m.dim() || C.cols() != m.dim())
        throw std::invalid_argument("quadric: form and metric dimensions differ");
    Eigen::LLT<Mat> llt(C);
    if (llt.info() != Eigen::Success || (C - C.transpose()).cwiseAbs().maxCoeff() > 1e-14)
        throw std::invalid_argument("quadric: form must be symmetric positive definite");
    Boundary b(Kind::Quadric, m);
    b.C_ = C;
    return b;
}

Boundary Boundary::ellipsoid(const Metric& m, const std::vector<double>& a2)
{
    if (static_cast<int>(a2.size()) != m.dim())
        throw std::invalid_argument("ellipsoid: need one a^2 per coordinate");
    Vec d(m.dim());
    for (int i = 0; i < m.dim(); ++i) {
        if (!(a2[static_cast<std::size_t>(i)] > 0.0))
            throw std::invalid_argument("ellipsoid: a^2 must be positive");
        d(i) = 1.0 / a2[static_cast<std::size_t>(i)];
    }
    return quadric(m, Mat(d.asDiagonal()));
}

Boundary Boundary::implicit(const Metric& m, Scalar F, Gradient grad, double extent)
{
    Boundary b(Kind::Implicit, m);
    b.F_ = std::move(F);
    b.grad_ = std::move(grad);
    b.extent_ = extent;
    return b;
}

Boundary Boundary::graph(const Metric& m, Fn1 f, Fn1 fp, Fn1 /*fpp*/, double extent)
{
    if (m.dim() != 2) throw std::invalid_argument("graph boundary is planar");
    Boundary b(Kind::Graph, m);
    b.F_ = [f](const Vec& q) { return q(1) - f(q(0)); };
    b.grad_ = [fp](const Vec& q) { return vec2(-fp(q(0)), 1.0); };
    b.extent_ = extent;
    return b;
}

double Boundary::value(const Vec& q) const
{
    if (kind_ == Kind::Quadric) return q.dot(C_ * q) - 1.0;
    return F_(q);
}

Vec Boundary::gradient(const Vec& q) const
{
    if (kind_ == Kind::Quadric) return 2.0 * (C_ * q);
    return grad_(q);
}

NormalInfo normal_at(const Boundary& B, const Vec& q, double eps_sing)
{
    if (q.size() != B.dim()) throw std::invalid_argument("normal_at: dimension mismatch");
    const Vec g = B.gradient(q);
    const double tol = 1e-10 * std::max(1.0, g.norm() * q.norm());
    if (std::abs(B.value(q)) > tol)
        throw std::invalid_argument("normal_at: point is not on the boundary");
    NormalInfo ni;
    ni.nu = sharp(B.metric(), g);
    ni.nn = quad(B.metric(), ni.nu);
    ni.singular = std::abs(ni.nn) < eps_sing * ni.nu.squaredNorm();
    return ni;
}

static Vec hit_quadric(const Boundary& B, const Vec& p, const Vec& w)
{
    const Mat& C = B.form();
    const Vec Cw = C * w;
    const double a = w.dot(Cw);
    const double b = p.dot(Cw);
    const double c = p.dot(C * p) - 1.0;
    const double disc = b * b - a * c;
    const double floor = kEpsStep / w.norm();
    if (disc < 0.0) throw NumericError(K::Escape, "next_hit: line misses the quadric");
    const double sq = std::sqrt(disc);
    const double qq = -(b + std::copysign(sq, b));
    double s1 = qq / a;
    double s2 = (qq != 0.0) ? c / qq : -b / a;
    if (s1 > s2) std::swap(s1, s2);
    const double mag = std::max(1.0, std::abs(s2));
    if (s2 - s1 <= 1e-12 * mag && s2 > -floor)
        throw NumericError(K::Graze, "next_hit: tangential grazing");
    double s = 0.0;
    if (s1 > floor)
        s = s1;
    else if (s2 > floor)
        s = s2;
    else
        throw NumericError(K::Escape, "next_hit: no forward intersection");
    return p + s * w;
}

static Vec hit_implicit(const Boundary& B, const Vec& p, const Vec& w)
{
    const double S = B.extent() / w.norm();
    const double floor = kEpsStep / w.norm();
    auto phi = [&](double s) { return B.value(p + s * w); };
    const int subdiv = 256;
    double s_prev = std::max(floor, S * 1e-6);
    double f_prev = phi(s_prev);
    for (int i = 1; i <= subdiv; ++i) {
        const double s_cur = S * static_cast<double>(i) / subdiv;
        if (s_cur <= s_prev) continue;
        const double f_cur = phi(s_cur);
        if (f_prev == 0.0) return p + s_prev * w;
        if ((f_prev < 0.0) != (f_cur < 0.0)) {
            double lo = s_prev, hi = s_cur, flo = f_prev;
            double s = 0.5 * (lo + hi);
            for (int it = 0; it < 200; ++it) {
                const double fs = phi(s);
                if (std::abs(fs) <= 1e-12) break;
                if ((fs < 0.0) == (flo < 0.0)) {
                    lo = s;
                    flo = fs;
                } else {
                    hi = s;
                }
                const double d = B.gradient(p + s * w).dot(w);
                double ns = (d != 0.0) ? s - fs / d : 0.5 * (lo + hi);
                if (!(ns > lo && ns < hi)) ns = 0.5 * (lo + hi);
                s = ns;
            }
            const Vec q = p + s * w;
            const Vec g = B.gradient(q);
            if (std::abs(g.dot(w)) <= 1e-12 * g.norm() * w.norm())
                throw NumericError(K::Graze, "next_hit: tangential grazing");
            return q;
        }
        s_prev = s_cur;
        f_prev = f_cur;
    }
    throw NumericError(K::Escape, "next_hit: no forward intersection within extent");
}

Vec next_hit_dir(const Boundary& B, const Vec& from, const Vec& dir)
{
    if (from.size() != B.dim() || dir.size() != B.dim())
        throw std::invalid_argument("next_hit: dimension mismatch");
    if (dir.squaredNorm() == 0.0) throw std::invalid_argument("next_hit: zero direction");
    if (B.kind() == Boundary::Kind::Quadric) return hit_quadric(B, from, dir);
    return hit_implicit(B, from, dir);
}

Vec next_hit(const Boundary& B, const OrientedLine& l, const Vec& from)
{
    return next_hit_dir(B, from, l.dir);
}

Vec reflect(const Boundary& B, const Vec& q, const Vec& w, double eps_sing)
{
    const NormalInfo ni = normal_at(B, q, eps_sing);
    if (ni.singular)
        throw NumericError(K::TrajectoryStopped, "reflect: singular boundary point");
    const Metric& m = B.metric();
    return w - (2.0 * inner(m, w, ni.nu) / ni.nn) * ni.nu;
}

double harmonic_defect(const Vec& a, const Vec& b, const Vec& c, const Vec& d)
{
    return cross2(a, c) * cross2(b, d) + cross2(a, d) * cross2(b, c);
}

const char* status_name(Trajectory::Status s)
{
    switch (s) {
    case Trajectory::Status::Completed: return "completed";
    case Trajectory::Status::Stopped: return "stopped";
    case Trajectory::Status::Escaped: return "escaped";
    case Trajectory::Status::Grazed: return "grazed";
    }
    return "?";
}

Trajectory iterate(const Boundary& B, const OrientedLine& l0, int N)
{
    if (N < 0) throw std::invalid_argument("iterate: negative bounce count");
    Trajectory tr;
    Vec p = l0.base;
    Vec w = l0.dir;
    const Metric& m = B.metric();
    for (int k = 0; k < N; ++k) {
        Vec q;
        try {
            q = next_hit_dir(B, p, w);
        } catch (const NumericError& e) {
            tr.status = e.kind() == K::Graze ? Trajectory::Status::Grazed
                                             : Trajectory::Status::Escaped;
            tr.message = "bounce " + std::to_string(k) + ": " + e.what();
            return tr;
        }
        const NormalInfo ni = normal_at(B, q);
        if (ni.singular) {
            tr.status = Trajectory::Status::Stopped;
            tr.message = "bounce " + std::to_string(k) + ": singular boundary point";
            return tr;
        }
        const Vec w1 = w - (2.0 * inner(m, w, ni.nu) / ni.nn) * ni.nu;
        BounceRecord r;
        r.point = q;
        r.incoming = w;
        r.outgoing = w1;
        r.normal = ni.nu;
        if (B.dim() == 2) {
            const Vec g = B.gradient(q);
            const Vec t = vec2(-g(1), g(0));
            r.harmonic_defect = harmonic_defect(t.normalized(), ni.nu.normalized(),
                                                w.normalized(), w1.normalized());
        }
        tr.bounces.push_back(std::move(r));
        p = q;
        w = w1;
    }
    return tr;
}

NearSingular double_reflection_near_singular(double a, double u, double s)
{
    if (!(a > 0.0)) throw std::invalid_argument("near-singular: need a > 0");
    if (s == 0.0 || u == 0.0) throw std::invalid_argument("near-singular: need s != 0, u != 0");
    auto fp = [a](double x) { return 2.0 * a * x; };
    const double k = u * fp(s) * fp(s);
    // (f(t)-f(s))/(t-s) - u f'(s)^2 with the trivial root t = s divided out.
    auto h = [&](double t) { return a * (t + s) - k; };
    double t = -s;
    for (int it = 0; it < 50; ++it) {
        const double step = h(t) / a;
        t -= step;
        if (std::abs(step) <= 1e-16 * std::max(std::abs(t), 1e-300)) break;
    }
    if (!std::isfinite(t) || std::abs(t) > 1.0 || std::abs(t - s) <= 1e-14 * std::abs(s))
        throw NumericError(K::LocalChart, "near-singular: no second intersection in the chart");
    NearSingular r;
    r.t = t;
    const double ratio = fp(s) / fp(t);
    r.v = u * ratio * ratio;
    return r;
}

}  // namespace peb
