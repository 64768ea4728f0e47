#include "peb/constrained.hpp"

#include "peb/errors.hpp"

#include <algorithm>
#include <cmath>

namespace peb {

const char* geo_status_name(GeoStatus s)
{
    switch (s) {
    case GeoStatus::Completed: return "completed";
    case GeoStatus::TropicReached: return "tropic";
    case GeoStatus::StepUnderflow: return "step-underflow";
    }
    return "?";
}

namespace {

// Below this |q| the metric normal is nearly tangent; projections switch to
// the Euclidean gradient, which stays well conditioned.
constexpr double kProjectSwitch = 1e-4;

struct Deriv {
    Vec dx;
    Vec dv;
};

Deriv rhs(const Surface& S, const Metric& m, const Vec& x, const Vec& v)
{
    const Vec g = S.grad(x);
    const Vec n = m.inverse() * g;
    const double gn = g.dot(n);
    if (gn == 0.0)
        throw NumericError(NumericError::Kind::TropicReached, "geodesic: normal is light-like");
    const double mu = -S.hess(x, v) / gn;
    return {v, mu * n};
}

GeoState rk4(const Surface& S, const Metric& m, const GeoState& s, double h)
{
    const Deriv k1 = rhs(S, m, s.x, s.v);
    const Deriv k2 = rhs(S, m, s.x + 0.5 * h * k1.dx, s.v + 0.5 * h * k1.dv);
    const Deriv k3 = rhs(S, m, s.x + 0.5 * h * k2.dx, s.v + 0.5 * h * k2.dv);
    const Deriv k4 = rhs(S, m, s.x + h * k3.dx, s.v + h * k3.dv);
    return {s.x + (h / 6.0) * (k1.dx + 2.0 * k2.dx + 2.0 * k3.dx + k4.dx),
            s.v + (h / 6.0) * (k1.dv + 2.0 * k2.dv + 2.0 * k3.dv + k4.dv)};
}

double scaled_error(const GeoState& a, const GeoState& b, double tol)
{
    double e = 0.0;
    for (Eigen::Index i = 0; i < a.x.size(); ++i) {
        e = std::max(e, std::abs(a.x(i) - b.x(i)) / (tol * (1.0 + std::abs(b.x(i)))));
        e = std::max(e, std::abs(a.v(i) - b.v(i)) / (tol * (1.0 + std::abs(b.v(i)))));
    }
    return e / 15.0;
}

// Two half steps; used for the accepted state and for tropic bisection.
GeoState double_half(const Surface& S, const Metric& m, const GeoState& s, double h)
{
    return rk4(S, m, rk4(S, m, s, 0.5 * h), 0.5 * h);
}

bool crosses(double q0, double q1, double eps)
{
    return std::abs(q1) < eps || (q0 > 0.0) != (q1 > 0.0);
}

}  // namespace

double tropic_measure(const Surface& S, const Metric& m, const Vec& x)
{
    const Vec g = S.grad(x);
    const Vec n = m.inverse() * g;
    const double nn = n.squaredNorm();
    if (nn == 0.0) throw std::invalid_argument("tropic_measure: gradient vanishes");
    return g.dot(n) / nn;
}

GeoState project(const Surface& S, const Metric& m, const GeoState& s)
{
    GeoState out = s;
    const bool metric_dir = std::abs(tropic_measure(S, m, s.x)) > kProjectSwitch;
    auto direction = [&](const Vec& g) -> Vec { return metric_dir ? Vec(m.inverse() * g) : g; };
    for (int it = 0; it < 4; ++it) {
        const double F = S.value(out.x);
        if (std::abs(F) <= 1e-15) break;
        const Vec g = S.grad(out.x);
        const Vec d = direction(g);
        out.x -= (F / g.dot(d)) * d;
    }
    const Vec g = S.grad(out.x);
    const Vec d = direction(g);
    out.v -= (g.dot(out.v) / g.dot(d)) * d;
    return out;
}

GeoState restore_energy(const Surface& S, const Metric& m, const GeoState& s, double q0)
{
    GeoState out = s;
    const bool metric_dir = std::abs(tropic_measure(S, m, s.x)) > kProjectSwitch;
    const Vec g = S.grad(s.x);
    const Vec n = metric_dir ? Vec(m.inverse() * g) : g;
    for (int it = 0; it < 3; ++it) {
        const Vec Gv = m.gram() * out.v;
        const Vec d = Gv - (g.dot(Gv) / g.dot(n)) * n;
        const double slope = 2.0 * Gv.dot(d);
        const double r = quad(m, out.v) - q0;
        if (slope == 0.0 || r == 0.0) break;
        out.v -= (r / slope) * d;
    }
    return out;
}

AdaptiveStep adaptive_step(const Surface& S, const Metric& m, const GeoState& s, double h_try,
                           const StepOptions& opt)
{
    double h = std::min(h_try, opt.h_max);
    for (;;) {
        if (h < opt.h_min)
            throw NumericError(NumericError::Kind::StepUnderflow, "geodesic: step size underflow");
        const GeoState big = rk4(S, m, s, h);
        const GeoState two = double_half(S, m, s, h);
        const double err = scaled_error(big, two, opt.tol);
        if (err <= 1.0 && std::isfinite(err)) {
            const double grow = err > 0.0 ? std::min(4.0, 0.9 * std::pow(err, -0.2)) : 4.0;
            return {project(S, m, two), h, h * grow};
        }
        h *= std::isfinite(err) ? std::max(0.1, 0.9 * std::pow(err, -0.2)) : 0.1;
    }
}

GeoRun integrate_geodesic(const Surface& S, const Metric& m, const GeoState& start, double length,
                          const StepOptions& opt)
{
    GeoRun run;
    GeoState s = project(S, m, start);
    double q = tropic_measure(S, m, s.x);
    if (std::abs(q) < opt.eps_tropic)
        throw NumericError(NumericError::Kind::TropicReached, "geodesic: start lies on the tropic");
    run.states.push_back(s);
    run.param.push_back(0.0);
    const double q0 = quad(m, s.v);
    auto settle = [&](const GeoState& c) { return opt.keep_energy ? restore_energy(S, m, c, q0) : c; };

    double t = 0.0;
    double h = std::min(opt.h_max, 1e-3);
    while (t < length) {
        AdaptiveStep st;
        try {
            st = adaptive_step(S, m, s, std::min(h, length - t), opt);
        } catch (const NumericError& e) {
            run.status = e.kind() == NumericError::Kind::TropicReached ? GeoStatus::TropicReached
                                                                      : GeoStatus::StepUnderflow;
            run.message = e.what();
            return run;
        }
        const double q1 = tropic_measure(S, m, st.state.x);
        if (crosses(q, q1, opt.eps_tropic)) {
            // Largest sub-step that stays on this side of the threshold.
            double lo = 0.0;
            double hi = st.h_done;
            GeoState best = s;
            for (int it = 0; it < 200 && hi - lo > 1e-15 * std::max(1.0, t); ++it) {
                const double mid = 0.5 * (lo + hi);
                GeoState c = s;
                try {
                    c = settle(project(S, m, double_half(S, m, s, mid)));
                } catch (const NumericError&) {
                    hi = mid;
                    continue;
                }
                if (crosses(q, tropic_measure(S, m, c.x), opt.eps_tropic)) {
                    hi = mid;
                } else {
                    lo = mid;
                    best = c;
                }
            }
            if (lo > 0.0) {
                run.states.push_back(best);
                run.param.push_back(t + lo);
            }
            run.status = GeoStatus::TropicReached;
            run.message = "geodesic: reached the tropic";
            return run;
        }
        s = settle(st.state);
        q = q1;
        t += st.h_done;
        h = st.h_next;
        run.states.push_back(s);
        run.param.push_back(t);
    }
    return run;
}

}  // namespace peb
