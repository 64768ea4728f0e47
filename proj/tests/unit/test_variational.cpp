#include "peb/errors.hpp"
#include "peb/variational.hpp"

#include "../support/oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace peb;

namespace {

const double kPi = std::numbers::pi;

Mat rotated_ellipsoid(std::mt19937_64& g, int n)
{
    Eigen::HouseholderQR<Mat> qr(Mat::NullaryExpr(n, n, [&]() { return oracle::uniform(g, -1, 1); }));
    const Mat R = qr.householderQ();
    Vec d(n);
    for (int i = 0; i < n; ++i) d(i) = 1.0 / oracle::uniform(g, 0.3, 3.0);
    const Mat C = R.transpose() * d.asDiagonal() * R;
    return 0.5 * (C + C.transpose());
}

std::vector<double> grid(double a, double b, int n)
{
    std::vector<double> t;
    for (int i = 0; i < n; ++i) t.push_back(a + (b - a) * (i + 0.5) / n);
    return t;
}

}  // namespace

TEST_SUITE("variational")
{
    TEST_CASE("ellipse x^2/4 + y^2 = 1 in diag(1,-1)")
    {
        Mat C = Mat::Zero(2, 2);
        C(0, 0) = 0.25;
        C(1, 1) = 1.0;
        const DiameterSearch ds = find_diameters(C, Metric::diagonal({1.0, -1.0}));
        CHECK(ds.count(CausalClass::SpaceLike) == 1);
        CHECK(ds.count(CausalClass::TimeLike) == 1);
        for (const auto& d : ds.diameters) {
            CHECK((std::abs(d.f - 8.0) < 1e-10 || std::abs(d.f + 2.0) < 1e-10));
            CHECK((d.x + d.y).norm() <= 1e-10);
            CHECK(d.ortho_x <= 1e-10);
            CHECK(d.grad_norm <= 1e-10);
        }
    }

    TEST_CASE("rotated ellipsoids: every pencil chord is found")
    {
        auto g = oracle::rng(21);
        for (int n = 2; n <= 4; ++n)
            for (int k = 0; k <= n; ++k) {
                const Metric m = Metric::signature(k, n - k);
                for (int e = 0; e < 5; ++e) {
                    const Mat C = rotated_ellipsoid(g, n);
                    const DiameterSearch ds = find_diameters(C, m, 50, g());
                    for (const auto& p : oracle::pencil_chords(C, m.gram())) {
                        if (std::abs(p.f) <= 1e-8) continue;
                        bool found = false;
                        for (const auto& d : ds.diameters)
                            found = found || (std::abs(d.f - p.f) <= 1e-8 * std::max(1.0, std::abs(p.f)) &&
                                              std::min((d.x - p.x).norm(), (d.x + p.x).norm()) <= 1e-6);
                        CHECK(found);
                    }
                    CHECK(ds.count(CausalClass::SpaceLike) >= k);
                    CHECK(ds.count(CausalClass::TimeLike) >= n - k);
                }
            }
    }

    TEST_CASE("unit circle in dx dy: diameters of slope +-1")
    {
        const DiameterSearch ds = find_diameters(Mat::Identity(2, 2), Metric::null_plane());
        REQUIRE(ds.diameters.size() == 2);
        for (const auto& d : ds.diameters) {
            const Vec w = d.x - d.y;
            CHECK(std::abs(std::abs(w(1) / w(0)) - 1.0) <= 1e-10);
            CHECK(std::abs(std::abs(d.f) - 1.0) <= 1e-10);
        }
        CHECK(ds.count(CausalClass::SpaceLike) == 1);
        CHECK(ds.count(CausalClass::TimeLike) == 1);
    }

    TEST_CASE("input validation")
    {
        CHECK_THROWS_AS(find_diameters(Mat::Identity(3, 3), Metric::signature(1, 1)), std::invalid_argument);
        Mat C = Mat::Identity(2, 2);
        C(1, 1) = -1.0;
        CHECK_THROWS_AS(find_diameters(C, Metric::signature(1, 1)), std::invalid_argument);
    }

    TEST_CASE("caustic of the circle in diag(1,-1) is an astroid")
    {
        const Metric m = Metric::diagonal({1.0, -1.0});
        const Boundary B = Boundary::quadric(m, Mat::Identity(2, 2));
        const auto env = caustic_envelope(B, [](double t) { return vec2(std::cos(t), std::sin(t)); },
                                          grid(0.0, 2 * kPi, 400));
        REQUIRE(env.size() == 400);
        for (const auto& p : env) CHECK(std::abs(astroid_residual(p)) <= 1e-8);
        CHECK(astroid_residual(vec2(2.0, 0.0)) == doctest::Approx(0.0));
    }

    TEST_CASE("caustics that collapse to the centre")
    {
        const Metric m = Metric::diagonal({1.0, -1.0});
        for (double c : {0.5, -1.0}) {
            const Boundary pc = Boundary::implicit(
                m, [=](const Vec& p) { return p(0) * p(0) - p(1) * p(1) - c; },
                [](const Vec& p) { return vec2(2 * p(0), -2 * p(1)); });
            const double rho = std::sqrt(std::abs(c));
            auto q = [=](double t) {
                return c > 0 ? vec2(rho * std::cosh(t), rho * std::sinh(t)) : vec2(rho * std::sinh(t), rho * std::cosh(t));
            };
            for (const auto& p : caustic_envelope(pc, q, grid(-2, 2, 40))) CHECK(p.norm() <= 1e-8);
        }
        const Boundary circle = Boundary::quadric(Metric::diagonal({1.0, 1.0}), Mat::Identity(2, 2));
        for (const auto& p :
             caustic_envelope(circle, [](double t) { return vec2(std::cos(t), std::sin(t)); }, grid(0, 6, 30)))
            CHECK(p.norm() <= 1e-8);
    }

    TEST_CASE("straight boundary has no envelope")
    {
        const Boundary line = Boundary::implicit(
            Metric::diagonal({1.0, -1.0}), [](const Vec& p) { return p(1) - 0.5 * p(0); },
            [](const Vec&) { return vec2(-0.5, 1.0); });
        CHECK_THROWS_AS(caustic_envelope(line, [](double t) { return vec2(t, 0.5 * t); }, {0.1, 0.2}), NumericError);
    }

    TEST_CASE("Gauss maps are Lagrangian, twisted families are not")
    {
        const Metric m = Metric::diagonal({1.0, 1.0, -1.0});
        auto param = [](double th, double ph) {
            return vec3(std::sin(th) * std::cos(ph), std::sqrt(2.0) * std::sin(th) * std::sin(ph),
                        std::sqrt(3.0) * std::cos(th));
        };
        auto grad = [](const Vec& x) { return vec3(2 * x(0), x(1), 2 * x(2) / 3.0); };
        const LineFamily gm = gauss_map(m, param, grad);
        CHECK(lagrangian_defect(m, gm, 1.2, 1.9, 0.0, 6.0, 10) <= 1e-6);
        CHECK(lagrangian_defect(m, gm, 0.1, 0.4, 0.0, 6.0, 10) <= 1e-6);
        // The normal changes causal class between these two patches.
        CHECK_THROWS_AS(lagrangian_defect(m, gm, 0.1, 1.9, 0.0, 6.0, 10), NumericError);
        CHECK_THROWS_AS(lagrangian_defect(m, gm, 0.1, 1.9, 0.0, 6.0, 0), std::invalid_argument);

        const Metric e = Metric::diagonal({1.0, 1.0, 1.0});
        const LineFamily twist = [](double u, double v) {
            return std::make_pair(vec3(u, v, 0.0), Vec(vec3(-v, u, 1.0)));
        };
        CHECK(lagrangian_defect(e, twist, -0.5, 0.5, -0.5, 0.5, 5) >= 1.0);
    }
}
