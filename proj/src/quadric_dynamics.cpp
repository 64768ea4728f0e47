#include "peb/quadric_dynamics.hpp"

#include "peb/errors.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace peb {

Quadric::Quadric(std::vector<double> a2, std::vector<double> tau) : a2_(std::move(a2)), tau_(std::move(tau))
{
    if (a2_.empty() || a2_.size() != tau_.size())
        throw std::invalid_argument("quadric: a^2 and tau must have equal nonzero length");
    for (std::size_t i = 0; i < a2_.size(); ++i) {
        if (!(a2_[i] > 0.0)) throw std::invalid_argument("quadric: a^2 must be positive");
        if (tau_[i] != 1.0 && tau_[i] != -1.0) throw std::invalid_argument("quadric: tau must be +1 or -1");
    }
}

Surface Quadric::surface() const
{
    const std::vector<double> a2 = a2_;
    Surface S;
    S.value = [a2](const Vec& x) {
        double s = -1.0;
        for (Eigen::Index i = 0; i < x.size(); ++i) s += x(i) * x(i) / a2[static_cast<std::size_t>(i)];
        return s;
    };
    S.grad = [a2](const Vec& x) {
        Vec g(x.size());
        for (Eigen::Index i = 0; i < x.size(); ++i) g(i) = 2.0 * x(i) / a2[static_cast<std::size_t>(i)];
        return g;
    };
    S.hess = [a2](const Vec&, const Vec& v) {
        double s = 0.0;
        for (Eigen::Index i = 0; i < v.size(); ++i) s += 2.0 * v(i) * v(i) / a2[static_cast<std::size_t>(i)];
        return s;
    };
    return S;
}

double Quadric::constraint(const Vec& x) const
{
    double s = -1.0;
    for (int i = 0; i < dim(); ++i) s += x(i) * x(i) / a2_[static_cast<std::size_t>(i)];
    return s;
}

double Quadric::tangency(const Vec& x, const Vec& v) const
{
    double s = 0.0;
    for (int i = 0; i < dim(); ++i) s += x(i) * v(i) / a2_[static_cast<std::size_t>(i)];
    return s;
}

QuadricState geodesic_step(const Quadric& Q, const QuadricState& s, double h, const StepOptions& opt)
{
    const GeoRun r = integrate_geodesic(Q.surface(), Q.metric(), s, h, opt);
    if (r.status == GeoStatus::TropicReached)
        throw NumericError(NumericError::Kind::TropicReached, r.message);
    if (r.status == GeoStatus::StepUnderflow)
        throw NumericError(NumericError::Kind::StepUnderflow, r.message);
    return r.states.back();
}

GeoRun integrate_quadric_geodesic(const Quadric& Q, const QuadricState& s, double length, const StepOptions& opt)
{
    return integrate_geodesic(Q.surface(), Q.metric(), s, length, opt);
}

std::vector<double> integrals_F(const Quadric& Q, const Vec& x, const Vec& v)
{
    const int n = Q.dim();
    const auto& a2 = Q.a2();
    const auto& tau = Q.tau();
    std::vector<double> F(static_cast<std::size_t>(n));
    for (int k = 0; k < n; ++k) {
        const auto kk = static_cast<std::size_t>(k);
        double s = tau[kk] * v(k) * v(k);
        for (int i = 0; i < n; ++i) {
            if (i == k) continue;
            const auto ii = static_cast<std::size_t>(i);
            const double den = tau[ii] * a2[kk] - tau[kk] * a2[ii];
            if (den == 0.0) throw std::invalid_argument("integrals_F: repeated axes");
            const double c = x(i) * v(k) - x(k) * v(i);
            s += c * c / den;
        }
        F[kk] = s;
    }
    return F;
}

double joachimsthal(const Quadric& Q, const Vec& x, const Vec& v)
{
    double p = 0.0, q = 0.0;
    for (int i = 0; i < Q.dim(); ++i) {
        const auto k = static_cast<std::size_t>(i);
        p += x(i) * x(i) / (Q.tau()[k] * Q.a2()[k] * Q.a2()[k]);
        q += v(i) * v(i) / Q.a2()[k];
    }
    return p * q;
}

double chord_joachimsthal(const Quadric& Q, const Vec& x, const Vec& v) { return Q.tangency(x, v); }

Trajectory quadric_billiard(const Quadric& Q, const Vec& x0, const Vec& v0, int bounces)
{
    if (Q.constraint(x0) >= 0.0) throw std::invalid_argument("quadric_billiard: start must be inside");
    OrientedLine l;
    l.base = x0;
    l.dir = v0;
    l.cls = classify(Q.metric(), v0);
    return iterate(Q.boundary(), l, bounces);
}

std::vector<TangentLine> lines_of(const GeoRun& run)
{
    std::vector<TangentLine> out;
    out.reserve(run.states.size());
    for (const auto& s : run.states) out.push_back({s.x, s.v});
    return out;
}

std::vector<TangentLine> lines_of(const Trajectory& tr)
{
    std::vector<TangentLine> out;
    out.reserve(tr.bounces.size());
    for (const auto& b : tr.bounces) out.push_back({b.point, b.outgoing});
    return out;
}

SpectrumStats jacobi_chasles_check(const Quadric& Q, const std::vector<TangentLine>& lines, bool drop_zero)
{
    const ConfocalFamily F = Q.family();
    const Metric m = Q.metric();
    SpectrumStats st;
    std::vector<double> lo, hi;
    bool have_ref = false;
    for (const auto& l : lines) {
        const Vec u = l.v.normalized();
        if (std::abs(quad(m, u)) < kChordLightCut) {
            ++st.excluded_light;
            continue;
        }
        const TangencySpectrum sp = tangent_spectrum_of_line(F, l.x, u);
        if (sp.degenerate) {
            ++st.excluded_degenerate;
            continue;
        }
        std::vector<double> lam;
        for (double x : sp.lambdas)
            if (!(drop_zero && std::abs(x) < 1e-7)) lam.push_back(x);
        if (!have_ref) {
            have_ref = true;
            st.reference = lam;
            st.count = lam.size();
            lo = hi = lam;
        }
        if (lam.size() != st.count) {
            ++st.count_mismatch;
            continue;
        }
        ++st.used;
        for (std::size_t i = 0; i < lam.size(); ++i) {
            lo[i] = std::min(lo[i], lam[i]);
            hi[i] = std::max(hi[i], lam[i]);
        }
    }
    for (std::size_t i = 0; i < lo.size(); ++i) st.spread = std::max(st.spread, hi[i] - lo[i]);
    return st;
}

}  // namespace peb
