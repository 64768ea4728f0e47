#include "peb/confocal.hpp"
#include "peb/errors.hpp"

#include "../support/oracles.hpp"

#include <doctest.h>

#include <cmath>

using namespace peb;

namespace {

Vec vec(std::initializer_list<double> xs)
{
    Vec v(static_cast<Eigen::Index>(xs.size()));
    Eigen::Index i = 0;
    for (double x : xs) v(i++) = x;
    return v;
}

}  // namespace

TEST_SUITE("confocal_quadrics")
{
    TEST_CASE("family validation")
    {
        CHECK_THROWS_AS(ConfocalFamily({1.0, 2.0}, {1.0}), std::invalid_argument);
        CHECK_THROWS_AS(ConfocalFamily({1.0, -2.0}, {1.0, 1.0}), std::invalid_argument);
        CHECK_THROWS_AS(ConfocalFamily({1.0, 2.0}, {1.0, 0.5}), std::invalid_argument);
        CHECK_THROWS_AS(ConfocalFamily({1.0, 1.0}, {1.0, 1.0}), std::invalid_argument);
        CHECK_NOTHROW(ConfocalFamily({1.0, 1.0}, {1.0, -1.0}));
    }

    TEST_CASE("n = 2 pseudo-Euclidean examples")
    {
        const ConfocalFamily F({1.0, 1.0}, {1.0, -1.0});
        // Only candidates at the origin are the poles themselves.
        const RootSet o = quadrics_through_point(F, vec({0.0, 0.0}));
        CHECK(o.lambdas.empty());

        // 1 - l^2 - 4 (1 - l) - 0.01 (1 + l) = -(l^2 - 3.99 l + 3.01).
        const RootSet r = quadrics_through_point(F, vec({2.0, 0.1}));
        REQUIRE(r.lambdas.size() == 2);
        const double disc = std::sqrt(3.99 * 3.99 - 4 * 3.01);
        CHECK(r.lambdas[0] == doctest::Approx((3.99 - disc) / 2).epsilon(1e-12));
        CHECK(r.lambdas[1] == doctest::Approx((3.99 + disc) / 2).epsilon(1e-12));
        const Poly p = point_polynomial(F, vec({2.0, 0.1}));
        REQUIRE(p.size() == 3);
        CHECK(p[0] == doctest::Approx(-3.01));
        CHECK(p[1] == doctest::Approx(3.99));
        CHECK(p[2] == doctest::Approx(-1.0));
    }

    TEST_CASE("n = 2 count flips across |x +- y| = sqrt2")
    {
        // Discriminant factors as ((x+y)^2 - 2)((x-y)^2 - 2).
        const ConfocalFamily F({1.0, 1.0}, {1.0, -1.0});
        auto g = oracle::rng(3);
        int tested = 0;
        for (int i = 0; i < 2000; ++i) {
            const double x = oracle::uniform(g, -3, 3), y = oracle::uniform(g, -3, 3);
            const double s = (x + y) * (x + y) - 2, d = (x - y) * (x - y) - 2;
            if (std::abs(s * d) < 1e-3) continue;
            const RootSet r = quadrics_through_point(F, vec({x, y}));
            if (r.degenerate) continue;
            CHECK(r.lambdas.size() == (s * d > 0 ? 2u : 0u));
            ++tested;
        }
        CHECK(tested > 1800);
    }

    TEST_CASE("point counts agree with a sign-change oracle")
    {
        const std::vector<std::pair<std::vector<double>, std::vector<double>>> families = {
            {{1.0, 2.0}, {1.0, 1.0}},
            {{1.0, 3.0}, {1.0, -1.0}},
            {{1.0, 2.0, 3.0}, {1.0, 1.0, -1.0}},
            {{1.0, 2.0, 3.0}, {1.0, -1.0, -1.0}},
            {{0.5, 1.5, 2.5, 4.0}, {1.0, -1.0, 1.0, -1.0}},
        };
        auto g = oracle::rng(11);
        for (const auto& [a2, tau] : families) {
            const ConfocalFamily F(a2, tau);
            int checked = 0;
            for (int i = 0; i < 40; ++i) {
                Vec x(F.dim());
                for (int k = 0; k < F.dim(); ++k) x(k) = oracle::uniform(g, -3, 3);
                const RootSet r = quadrics_through_point(F, x);
                if (r.degenerate) continue;
                CHECK(static_cast<int>(r.lambdas.size()) == oracle::count_confocal_roots(a2, tau, x));
                for (double l : r.lambdas) CHECK(std::abs(F.f(x, l) - 1.0) <= 1e-8);
                if (r.lambdas.size() > 1) CHECK(orthogonality_defect(F, x, r.lambdas) <= 1e-9);
                ++checked;
            }
            CHECK(checked > 30);
        }
    }

    TEST_CASE("Euclidean family: n members through every generic point")
    {
        const ConfocalFamily F({1.0, 2.0, 3.0}, {1.0, 1.0, 1.0});
        auto g = oracle::rng(5);
        for (int i = 0; i < 100; ++i) {
            const Vec x = vec({oracle::uniform(g, -3, 3), oracle::uniform(g, -3, 3), oracle::uniform(g, -3, 3)});
            const RootSet r = quadrics_through_point(F, x);
            if (r.degenerate) continue;
            CHECK(r.lambdas.size() == 3);
            CHECK(orthogonality_defect(F, x, r.lambdas) <= 1e-9);
        }
    }

    TEST_CASE("normal at a pole is rejected")
    {
        const ConfocalFamily F({1.0, 2.0}, {1.0, -1.0});
        CHECK_THROWS_AS(normal_to_member(F, -1.0, vec({0.3, 0.2})), NumericError);
        CHECK_THROWS_AS(quadrics_through_point(F, vec({1.0})), std::invalid_argument);
    }

    TEST_CASE("n = 2 light-like lines")
    {
        const ConfocalFamily F({1.0, 1.0}, {1.0, -1.0});
        const double r = std::sqrt(2.0);
        for (double c : {-1.0, 0.0, 0.5, 3.0}) {
            const TangencySpectrum t = tangent_spectrum_of_line(F, vec({c, 0.0}), vec({1.0, 1.0}).normalized());
            CHECK(t.lambdas.empty());
            CHECK_FALSE(t.infinite);
        }
        const TangencySpectrum t = tangent_spectrum_of_line(F, vec({r, 0.0}), vec({1.0, 1.0}).normalized());
        CHECK(t.infinite);
        CHECK(t.degenerate);
    }

    TEST_CASE("n = 3 line spectra")
    {
        const std::vector<double> a2{1.0, 2.0, 3.0}, tau{1.0, 1.0, -1.0};
        const ConfocalFamily F(a2, tau);
        const Metric m = F.metric();
        auto g = oracle::rng(17);
        int space = 0;
        for (int i = 0; i < 150; ++i) {
            const Vec x0 = vec({oracle::uniform(g, -2, 2), oracle::uniform(g, -2, 2), oracle::uniform(g, -2, 2)});
            const Vec v = vec({oracle::uniform(g, -1, 1), oracle::uniform(g, -1, 1), oracle::uniform(g, -1, 1)})
                              .normalized();
            const double q = quad(m, v);
            if (std::abs(q) < 1e-3) continue;
            const TangencySpectrum t = tangent_spectrum_of_line(F, x0, v);
            if (t.degenerate) continue;
            const auto k = t.lambdas.size();
            CHECK((k == 2 || k == 0));
            CHECK(static_cast<int>(k) == oracle::count_tangent_members(a2, tau, x0, v));
            for (double l : t.lambdas) CHECK(line_member_discriminant(F, l, x0, v) <= 1e-10);
            CHECK(t.orthogonality <= 1e-9);
            if (q > 0) ++space;
        }
        CHECK(space > 20);
    }

    TEST_CASE("light-like polynomial drops the top coefficient")
    {
        const ConfocalFamily F({1.0, 2.0, 3.0}, {1.0, 1.0, -1.0});
        const Vec v = vec({1.0, 0.0, 1.0}).normalized();
        const Vec x0 = vec({0.2, 0.4, -0.1});
        CHECK(line_polynomial(F, x0, v, true).size() + 1 == line_polynomial(F, x0, v, false).size());
    }
}
