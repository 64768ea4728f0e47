#include "peb/confocal.hpp"

#include "peb/errors.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace peb {

ConfocalFamily::ConfocalFamily(std::vector<double> a2, std::vector<double> tau)
    : a2_(std::move(a2)), tau_(std::move(tau))
{
    if (a2_.empty() || a2_.size() != tau_.size())
        throw std::invalid_argument("confocal family: a^2 and tau must have equal nonzero length");
    for (std::size_t i = 0; i < a2_.size(); ++i) {
        if (!(a2_[i] > 0.0)) throw std::invalid_argument("confocal family: a^2 must be positive");
        if (tau_[i] != 1.0 && tau_[i] != -1.0)
            throw std::invalid_argument("confocal family: tau entries must be +1 or -1");
    }
    const auto p = poles();
    for (std::size_t i = 0; i < p.size(); ++i)
        for (std::size_t j = i + 1; j < p.size(); ++j)
            if (std::abs(p[i] - p[j]) <= 1e-12 * std::max(std::abs(p[i]), std::abs(p[j])))
                throw std::invalid_argument("confocal family: poles -tau_i a_i^2 must be distinct");
}

std::vector<double> ConfocalFamily::poles() const
{
    std::vector<double> p(a2_.size());
    for (std::size_t i = 0; i < a2_.size(); ++i) p[i] = -tau_[i] * a2_[i];
    return p;
}

double ConfocalFamily::f(const Vec& x, double lambda) const
{
    double s = 0.0;
    for (int i = 0; i < dim(); ++i) {
        const auto k = static_cast<std::size_t>(i);
        s += x(i) * x(i) / (a2_[k] + tau_[k] * lambda);
    }
    return s;
}

namespace {

// Exact and absolute-value assemblies of the same polynomial; the second gives
// the size each coefficient would have without cancellation.
struct Assembly {
    QPoly exact;
    Poly magnitude;
};

Poly mag_linear(double c0, double c1) { return {std::abs(c0), std::abs(c1)}; }

Poly mag_mul(const Poly& a, const Poly& b)
{
    Poly r(a.size() + b.size() - 1, 0.0);
    for (std::size_t i = 0; i < a.size(); ++i)
        for (std::size_t j = 0; j < b.size(); ++j) r[i + j] += a[i] * b[j];
    return r;
}

Poly mag_add(const Poly& a, const Poly& b)
{
    Poly r(std::max(a.size(), b.size()), 0.0);
    for (std::size_t i = 0; i < a.size(); ++i) r[i] += a[i];
    for (std::size_t i = 0; i < b.size(); ++i) r[i] += b[i];
    return r;
}

// prod over k not in skip of d_k.
Assembly product_except(const ConfocalFamily& F, std::size_t skip1, std::size_t skip2)
{
    Assembly a{qpoly_const(1.0), Poly{1.0}};
    for (std::size_t k = 0; k < F.a2().size(); ++k) {
        if (k == skip1 || k == skip2) continue;
        a.exact = qpoly_mul(a.exact, qpoly_linear(F.a2()[k], F.tau()[k]));
        a.magnitude = mag_mul(a.magnitude, mag_linear(F.a2()[k], F.tau()[k]));
    }
    return a;
}

void add_term(Assembly& into, const Assembly& term, const mpq_class& w, double wmag)
{
    into.exact = qpoly_add(into.exact, qpoly_scale(term.exact, w));
    Poly m = term.magnitude;
    for (auto& c : m) c *= wmag;
    into.magnitude = mag_add(into.magnitude, m);
}

constexpr std::size_t kNone = static_cast<std::size_t>(-1);

Assembly point_assembly(const ConfocalFamily& F, const Vec& x)
{
    Assembly a = product_except(F, kNone, kNone);
    for (std::size_t i = 0; i < F.a2().size(); ++i) {
        const mpq_class xi(x(static_cast<Eigen::Index>(i)));
        const mpq_class w = xi * xi;
        add_term(a, product_except(F, i, kNone), -w, w.get_d());
    }
    return a;
}

Assembly line_assembly(const ConfocalFamily& F, const Vec& x0, const Vec& v)
{
    const std::size_t n = F.a2().size();
    Assembly a{QPoly{}, Poly{}};
    for (std::size_t i = 0; i < n; ++i) {
        const mpq_class vi(v(static_cast<Eigen::Index>(i)));
        const mpq_class w = vi * vi;
        add_term(a, product_except(F, i, kNone), w, w.get_d());
    }
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
            const auto ii = static_cast<Eigen::Index>(i);
            const auto jj = static_cast<Eigen::Index>(j);
            const mpq_class p = mpq_class(x0(ii)) * mpq_class(v(jj));
            const mpq_class q = mpq_class(x0(jj)) * mpq_class(v(ii));
            const mpq_class M = p - q;
            // |M|^2 <= 2(p^2 + q^2) bounds the size before cancellation.
            add_term(a, product_except(F, i, j), -(M * M), 2.0 * mpq_class(p * p + q * q).get_d());
        }
    return a;
}

// Drops top coefficients that are zero to within kLeadTol of their magnitude.
Poly trimmed(const Assembly& a, bool& all_zero)
{
    Poly p = to_double(a.exact);
    Poly m = a.magnitude;
    m.resize(p.size(), 0.0);
    double scale = 0.0;
    for (double c : m) scale = std::max(scale, c);
    all_zero = true;
    for (double c : p)
        if (std::abs(c) > kLeadTol * scale) all_zero = false;
    while (!p.empty() && std::abs(p.back()) <= kLeadTol * m.back()) {
        p.pop_back();
        m.pop_back();
    }
    return p;
}

bool near_pole(const ConfocalFamily& F, double lam)
{
    for (double p : F.poles())
        if (std::abs(lam - p) <= kPoleGap * std::max(1.0, std::abs(p))) return true;
    return false;
}

}  // namespace

Poly point_polynomial(const ConfocalFamily& F, const Vec& x)
{
    if (x.size() != F.dim()) throw std::invalid_argument("point_polynomial: dimension mismatch");
    return to_double(point_assembly(F, x).exact);
}

RootSet quadrics_through_point(const ConfocalFamily& F, const Vec& x)
{
    if (x.size() != F.dim()) throw std::invalid_argument("quadrics_through_point: dimension mismatch");
    RootSet out;
    bool zero = false;
    const Assembly a = point_assembly(F, x);
    const Poly p = trimmed(a, zero);
    if (static_cast<int>(p.size()) - 1 < F.dim()) {
        out.degenerate = true;
        out.reason = "leading coefficient vanishes";
    }
    if (p.size() <= 1) return out;
    const RealRoots rr = real_roots(p);
    if (rr.near_multiple) {
        out.degenerate = true;
        out.reason = "near-multiple root";
    }
    for (double r : rr.roots) {
        if (near_pole(F, r)) {
            out.degenerate = true;
            out.reason = "root at a pole";
            continue;
        }
        out.lambdas.push_back(r);
    }
    return out;
}

Vec normal_to_member(const ConfocalFamily& F, double lambda, const Vec& x)
{
    if (x.size() != F.dim()) throw std::invalid_argument("normal_to_member: dimension mismatch");
    if (near_pole(F, lambda))
        throw NumericError(NumericError::Kind::DegenerateMember, "normal_to_member: lambda at a pole");
    Vec N(F.dim());
    for (int i = 0; i < F.dim(); ++i) {
        const auto k = static_cast<std::size_t>(i);
        N(i) = F.tau()[k] * x(i) / (F.a2()[k] + F.tau()[k] * lambda);
    }
    return N;
}

double orthogonality_defect(const ConfocalFamily& F, const Vec& x, const std::vector<double>& lambdas)
{
    const Metric m = F.metric();
    std::vector<Vec> Ns;
    for (double l : lambdas) Ns.push_back(normal_to_member(F, l, x));
    double worst = 0.0;
    for (std::size_t i = 0; i < Ns.size(); ++i)
        for (std::size_t j = i + 1; j < Ns.size(); ++j)
            worst = std::max(worst, std::abs(inner(m, Ns[i], Ns[j])) / (Ns[i].norm() * Ns[j].norm()));
    return worst;
}

Poly line_polynomial(const ConfocalFamily& F, const Vec& x0, const Vec& v, bool light_like)
{
    Assembly a = line_assembly(F, x0, v);
    if (light_like && !a.exact.empty()) {
        a.exact.pop_back();
        a.magnitude.resize(a.exact.size());
    }
    return to_double(a.exact);
}

TangencySpectrum tangent_spectrum_of_line(const ConfocalFamily& F, const Vec& x0, const Vec& v,
                                          double eps_light)
{
    if (x0.size() != F.dim() || v.size() != F.dim())
        throw std::invalid_argument("tangent_spectrum_of_line: dimension mismatch");
    const Metric m = F.metric();
    const bool light = classify(m, v, eps_light) == CausalClass::LightLike;
    const int expected_deg = light ? F.dim() - 2 : F.dim() - 1;

    Assembly a = line_assembly(F, x0, v);
    a.exact.resize(static_cast<std::size_t>(std::max(expected_deg + 1, 0)));
    a.magnitude.resize(a.exact.size(), 0.0);

    TangencySpectrum out;
    bool zero = false;
    const Poly p = trimmed(a, zero);
    if (zero || a.exact.empty()) {
        out.infinite = true;
        out.degenerate = true;
        out.reason = "discriminant vanishes identically";
        return out;
    }
    if (static_cast<int>(p.size()) - 1 < expected_deg) {
        out.degenerate = true;
        out.reason = "leading coefficient vanishes";
    }
    if (p.size() <= 1) return out;
    const RealRoots rr = real_roots(p);
    if (rr.near_multiple) {
        out.degenerate = true;
        out.reason = "near-multiple root";
    }
    for (double lam : rr.roots) {
        if (near_pole(F, lam)) {
            out.degenerate = true;
            out.reason = "root at a pole";
            continue;
        }
        out.lambdas.push_back(lam);
    }

    std::vector<Vec> normals;
    for (double lam : out.lambdas) {
        Vec Bx(F.dim()), Bv(F.dim());
        for (int i = 0; i < F.dim(); ++i) {
            const auto k = static_cast<std::size_t>(i);
            const double d = F.a2()[k] + F.tau()[k] * lam;
            Bx(i) = x0(i) / d;
            Bv(i) = v(i) / d;
        }
        const double vv = Bv.dot(v);
        const double s = (vv != 0.0) ? -Bx.dot(v) / vv : 0.0;
        const Vec q = x0 + s * v;
        out.points.push_back(q);
        normals.push_back(normal_to_member(F, lam, q));
    }
    for (std::size_t i = 0; i < normals.size(); ++i)
        for (std::size_t j = i + 1; j < normals.size(); ++j) {
            const double den = normals[i].norm() * normals[j].norm();
            if (den > 0.0)
                out.orthogonality = std::max(out.orthogonality, std::abs(inner(m, normals[i], normals[j])) / den);
        }
    return out;
}

double line_member_discriminant(const ConfocalFamily& F, double lambda, const Vec& x0, const Vec& v)
{
    double bxv = 0.0, bvv = 0.0, bxx = 0.0;
    for (int i = 0; i < F.dim(); ++i) {
        const auto k = static_cast<std::size_t>(i);
        const double d = F.a2()[k] + F.tau()[k] * lambda;
        bxv += x0(i) * v(i) / d;
        bvv += v(i) * v(i) / d;
        bxx += x0(i) * x0(i) / d;
    }
    const double disc = bxv * bxv - bvv * (bxx - 1.0);
    return std::abs(disc) / std::max({1e-300, bxv * bxv, std::abs(bvv * (bxx - 1.0))});
}

}  // namespace peb
