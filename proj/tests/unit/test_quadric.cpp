#include "peb/errors.hpp"
#include "peb/quadric_dynamics.hpp"

#include "../support/oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace peb;

namespace {

// Point of Q along direction d, and the tangent part of w there.
GeoState tangent_start(const Quadric& Q, const Vec& d, const Vec& w)
{
    Vec x = d / std::sqrt(1.0 + Q.constraint(d));
    Vec cx(3);
    for (int i = 0; i < 3; ++i) cx(i) = x(i) / Q.a2()[static_cast<std::size_t>(i)];
    Vec v = w - (cx.dot(w) / cx.squaredNorm()) * cx;
    return {x, v};
}

// Null tangent vector at x in the metric of Q, or empty when the tangent plane is definite.
Vec null_tangent(const Quadric& Q, const Vec& x)
{
    Vec cx(3);
    for (int i = 0; i < 3; ++i) cx(i) = x(i) / Q.a2()[static_cast<std::size_t>(i)];
    const Eigen::JacobiSVD<Mat> svd(cx.transpose(), Eigen::ComputeFullV);
    const Vec e1 = svd.matrixV().col(1), e2 = svd.matrixV().col(2);
    const Metric m = Q.metric();
    // <e1 + s e2, e1 + s e2> = A + 2 B s + C s^2.
    const double A = quad(m, e1), B = inner(m, e1, e2), C = quad(m, e2);
    const double D = B * B - A * C;
    if (D <= 0.0 || C == 0.0) return {};
    const double s = (-B + std::sqrt(D)) / C;
    return (e1 + s * e2).normalized();
}

double max_drift(const std::vector<double>& a, const std::vector<double>& b)
{
    double d = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) d = std::max(d, std::abs(a[i] - b[i]));
    return d;
}

}  // namespace

TEST_SUITE("quadric_dynamics")
{
    TEST_CASE("sum of F_k is <v,v> for arbitrary data")
    {
        const Quadric Q({1.0, 2.0, 3.0}, {1.0, 1.0, -1.0});
        const Metric m = Q.metric();
        auto g = oracle::rng(1);
        for (int i = 0; i < 200; ++i) {
            const Vec x = vec3(oracle::uniform(g, -2, 2), oracle::uniform(g, -2, 2), oracle::uniform(g, -2, 2));
            const Vec v = vec3(oracle::uniform(g, -2, 2), oracle::uniform(g, -2, 2), oracle::uniform(g, -2, 2));
            const auto F = integrals_F(Q, x, v);
            CHECK(std::abs(F[0] + F[1] + F[2] - quad(m, v)) <= 1e-12 * std::max(1.0, v.squaredNorm() * x.squaredNorm()));
        }
    }

    TEST_CASE("Euclidean signature reduces to the classical integrals")
    {
        const Quadric Q({1.0, 2.0, 4.0}, {1.0, 1.0, 1.0});
        const Vec x = vec3(0.3, -0.7, 1.1), v = vec3(0.5, 0.2, -0.4);
        const auto F = integrals_F(Q, x, v);
        const double a[3] = {1.0, 2.0, 4.0};
        for (int k = 0; k < 3; ++k) {
            double s = v(k) * v(k);
            for (int i = 0; i < 3; ++i) {
                if (i == k) continue;
                const double c = x(i) * v(k) - x(k) * v(i);
                s += c * c / (a[k] - a[i]);
            }
            CHECK(F[static_cast<std::size_t>(k)] == doctest::Approx(s).epsilon(1e-14));
        }
        CHECK_THROWS_AS(integrals_F(Quadric({1.0, 1.0, 2.0}, {1.0, 1.0, 1.0}), x, v), std::invalid_argument);
    }

    TEST_CASE("validation")
    {
        CHECK_THROWS_AS(Quadric({1.0, 2.0}, {1.0}), std::invalid_argument);
        CHECK_THROWS_AS(Quadric({1.0, 0.0}, {1.0, 1.0}), std::invalid_argument);
        CHECK_THROWS_AS(Quadric({1.0, 2.0}, {1.0, 2.0}), std::invalid_argument);
        const Quadric Q({1.0, 2.0, 3.0}, {1.0, 1.0, -1.0});
        CHECK_THROWS_AS(quadric_billiard(Q, vec3(2.0, 0.0, 0.0), vec3(1.0, 0.0, 0.0), 3), std::invalid_argument);
    }

    TEST_CASE("unit sphere geodesics are great circles")
    {
        const Quadric S({1.0, 1.0, 1.0}, {1.0, 1.0, 1.0});
        const Vec x0 = vec3(1.0, 0.0, 0.0), v0 = vec3(0.0, 0.6, 0.8);
        StepOptions opt;
        opt.tol = 1e-12;
        const GeoRun run = integrate_quadric_geodesic(S, {x0, v0}, 2.0 * std::numbers::pi, opt);
        CHECK(run.status == GeoStatus::Completed);
        double err = 0.0;
        for (std::size_t i = 0; i < run.states.size(); ++i)
            err = std::max(err, (run.states[i].x - oracle::great_circle(x0, v0, run.param[i])).norm());
        CHECK(err <= 1e-8);
        CHECK((run.states.back().x - x0).norm() <= 1e-8);
        CHECK((run.states.back().v - v0).norm() <= 1e-8);
    }

    TEST_CASE("integrals along Euclidean ellipsoid geodesics")
    {
        const Quadric Q({1.0, 2.0, 3.0}, {1.0, 1.0, 1.0});
        const GeoState s0 = tangent_start(Q, vec3(0.6, 0.9, 0.4), vec3(-0.3, 0.2, 0.8));
        const GeoRun run = integrate_quadric_geodesic(Q, s0, 100.0);
        CHECK(run.status == GeoStatus::Completed);
        const auto F0 = integrals_F(Q, s0.x, s0.v);
        const double J0 = joachimsthal(Q, s0.x, s0.v);
        double dF = 0.0, dJ = 0.0, res = 0.0;
        for (const auto& s : run.states) {
            dF = std::max(dF, max_drift(integrals_F(Q, s.x, s.v), F0));
            dJ = std::max(dJ, std::abs(joachimsthal(Q, s.x, s.v) - J0));
            res = std::max({res, std::abs(Q.constraint(s.x)), std::abs(Q.tangency(s.x, s.v))});
        }
        CHECK(dF <= 1e-8);
        CHECK(dJ <= 1e-8);
        CHECK(res <= 1e-10);
        const SpectrumStats st = jacobi_chasles_check(Q, lines_of(run), true);
        CHECK(st.count == 1);
        CHECK(st.spread <= 1e-6);
    }

    TEST_CASE("integrals along pseudo-Euclidean geodesics up to the tropic")
    {
        const Quadric Q({1.0, 2.0, 3.0}, {1.0, 1.0, -1.0});
        const Metric m = Q.metric();
        auto g = oracle::rng(7);
        for (int trial = 0; trial < 10; ++trial) {
            const GeoState s0 = tangent_start(
                Q, vec3(oracle::uniform(g, -1, 1), oracle::uniform(g, -1, 1), oracle::uniform(g, -0.3, 0.3)),
                vec3(oracle::uniform(g, -1, 1), oracle::uniform(g, -1, 1), oracle::uniform(g, -1, 1)));
            if (std::abs(quad(m, s0.v)) < 1e-3 * s0.v.squaredNorm()) continue;
            const GeoRun run = integrate_quadric_geodesic(Q, s0, 20.0);
            CHECK(run.status != GeoStatus::StepUnderflow);
            const auto F0 = integrals_F(Q, s0.x, s0.v);
            const double J0 = joachimsthal(Q, s0.x, s0.v);
            for (const auto& s : run.states) {
                const double scale = std::max(1.0, s.v.squaredNorm());
                CHECK(max_drift(integrals_F(Q, s.x, s.v), F0) <= 1e-8 * scale);
                CHECK(std::abs(joachimsthal(Q, s.x, s.v) - J0) <= 1e-8 * scale);
                CHECK(std::abs(quad(m, s.v) - quad(m, s0.v)) <= 1e-10 * scale);
            }
        }
    }

    TEST_CASE("light-like geodesics stay light-like")
    {
        const Quadric Q({1.0, 2.0, 3.0}, {1.0, 1.0, -1.0});
        const Metric m = Q.metric();
        const Vec x = tangent_start(Q, vec3(0.7, 0.5, 0.3), vec3(0.0, 0.0, 1.0)).x;
        const Vec v = null_tangent(Q, x);
        REQUIRE(v.size() == 3);
        const GeoRun run = integrate_quadric_geodesic(Q, {x, v}, 5.0);
        for (std::size_t i = 0; i < run.states.size(); ++i) {
            const auto& s = run.states[i];
            if (tropic_measure(Q.surface(), m, s.x) < 1e-4) continue;
            CHECK(std::abs(quad(m, s.v)) <= 1e-10);
        }
    }

    TEST_CASE("constraint drift over 1e5 fixed steps")
    {
        const Quadric Q({1.0, 2.0, 3.0}, {1.0, 1.0, 1.0});
        GeoState s = tangent_start(Q, vec3(0.2, 1.0, 0.5), vec3(1.0, 0.0, 0.3));
        s.v.normalize();
        double worst = 0.0;
        for (int i = 0; i < 100000; ++i) {
            s = geodesic_step(Q, s, 0.01);
            worst = std::max({worst, std::abs(Q.constraint(s.x)), std::abs(Q.tangency(s.x, s.v))});
        }
        CHECK(worst <= 1e-8);
    }

    TEST_CASE("forward then backward returns to the start")
    {
        const Quadric Q({1.0, 2.0, 3.0}, {1.0, 1.0, -1.0});
        const GeoState s0 = tangent_start(Q, vec3(0.8, 0.4, 0.1), vec3(0.2, -0.6, 0.1));
        const GeoRun f = integrate_quadric_geodesic(Q, s0, 1.0);
        REQUIRE(f.status == GeoStatus::Completed);
        GeoState back = f.states.back();
        back.v = -back.v;
        const GeoRun b = integrate_quadric_geodesic(Q, back, f.param.back());
        REQUIRE(b.status == GeoStatus::Completed);
        CHECK((b.states.back().x - s0.x).norm() <= 1e-8);
        CHECK((b.states.back().v + s0.v).norm() <= 1e-8);
    }

    TEST_CASE("geodesic step reports the tropic")
    {
        const Quadric Q({1.0, 2.0, 3.0}, {1.0, 1.0, -1.0});
        const GeoState s0 = tangent_start(Q, vec3(0.8, 0.4, 0.1), vec3(0.2, -0.6, 0.1));
        CHECK_THROWS_AS(geodesic_step(Q, s0, 200.0), NumericError);
    }

    TEST_CASE("billiard inside a pseudo-Euclidean ellipsoid")
    {
        const Quadric Q({1.0, 2.0, 3.0}, {1.0, 1.0, -1.0});
        const Trajectory tr = quadric_billiard(Q, vec3(0.1, 0.2, 0.1), vec3(0.7, -0.3, 0.4), 200);
        REQUIRE(tr.bounces.size() == 200);
        const auto F0 = integrals_F(Q, tr.bounces[0].point, tr.bounces[0].outgoing);
        const double c0 = chord_joachimsthal(Q, tr.bounces[0].point, tr.bounces[0].outgoing);
        for (const auto& b : tr.bounces) {
            CHECK(max_drift(integrals_F(Q, b.point, b.outgoing), F0) <= 1e-8);
            const double out = chord_joachimsthal(Q, b.point, b.outgoing);
            CHECK(std::abs(out - c0) <= 1e-10 * std::abs(c0));
            CHECK(std::abs(chord_joachimsthal(Q, b.point, b.incoming) + out) <= 1e-10 * std::abs(c0));
        }
        const SpectrumStats st = jacobi_chasles_check(Q, lines_of(tr), false);
        CHECK(st.count == 2);
        CHECK(st.spread <= 1e-6);
    }
}
