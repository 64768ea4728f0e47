#include "peb/errors.hpp"
#include "peb/pseudo_linalg.hpp"

#include "../support/oracles.hpp"

#include <doctest.h>

using namespace peb;

TEST_SUITE("pseudo_linalg")
{
    TEST_CASE("inner products on the three model metrics")
    {
        CHECK(inner(Metric::diagonal({1, -1}), vec2(1, 0), vec2(1, 0)) == 1.0);
        const double a = 0.7, b = -1.3;
        CHECK(inner(Metric::null_plane(), vec2(a, b), vec2(a, -b)) == doctest::Approx(0.0).epsilon(1e-15));
        CHECK(inner(Metric::diagonal({1, 1, -1}), vec3(1, 1, 1), vec3(1, 1, 1)) == 1.0);
        CHECK_THROWS_AS(inner(Metric::diagonal({1, -1}), vec2(1, 0), vec3(1, 0, 0)), std::invalid_argument);
    }

    TEST_CASE("causal classes")
    {
        const Metric m = Metric::diagonal({1, -1});
        CHECK(classify(m, vec2(1, 0)) == CausalClass::SpaceLike);
        CHECK(classify(m, vec2(1, 1)) == CausalClass::LightLike);
        CHECK(classify(Metric::null_plane(), vec2(1, -1)) == CausalClass::TimeLike);
        CHECK_THROWS_AS(classify(m, vec2(0, 0)), std::invalid_argument);
    }

    TEST_CASE("sharp and flat")
    {
        const Vec s = sharp(Metric::null_plane(), vec2(2.0, 5.0));
        CHECK(s(0) == doctest::Approx(5.0));
        CHECK(s(1) == doctest::Approx(2.0));
        const Vec d = sharp(Metric::diagonal({1, -1}), vec2(2.0, 5.0));
        CHECK(d(0) == 2.0);
        CHECK(d(1) == -5.0);
        auto g = oracle::rng(3);
        for (int it = 0; it < 50; ++it) {
            Mat G = Mat::Random(3, 3);
            G = (G + G.transpose()).eval();
            G += 0.5 * Mat::Identity(3, 3) * (oracle::uniform(g, 0, 1) < 0.5 ? 1.0 : -1.0);
            if (std::abs(G.determinant()) < 0.05) continue;
            const Metric m(G);
            const Vec w = Vec::Random(3);
            CHECK((sharp(m, flat(m, w)) - w).norm() <= 1e-13 * (1.0 + w.norm()));
            CHECK((flat(m, sharp(m, w)) - w).norm() <= 1e-13 * (1.0 + w.norm()));
        }
    }

    TEST_CASE("decompose against a normal")
    {
        const Decomposition a = decompose(Metric::diagonal({1, -1}), vec2(1, 1), vec2(1, 0));
        CHECK((a.tangential - vec2(0, 1)).norm() == 0.0);
        CHECK((a.normal - vec2(1, 0)).norm() == 0.0);
        const Decomposition b = decompose(Metric::null_plane(), vec2(1, 0), vec2(1, 1));
        CHECK((b.normal - vec2(0.5, 0.5)).norm() <= 1e-15);
        CHECK((b.tangential - vec2(0.5, -0.5)).norm() <= 1e-15);
        CHECK_THROWS_AS(decompose(Metric::diagonal({1, -1}), vec2(1, 0), vec2(1, 1)), NumericError);
    }

    TEST_CASE("cross2")
    {
        CHECK(cross2(vec2(1, 0), vec2(0, 1)) == 1.0);
        CHECK(cross2(vec2(0.3, 0.4), vec2(0.3, 0.4)) == 0.0);
        CHECK(cross2(vec2(1, 2), vec2(3, 4)) == -2.0);
        CHECK_THROWS_AS(cross2(vec3(1, 0, 0), vec2(0, 1)), std::invalid_argument);
    }

    TEST_CASE("property: bilinearity, symmetry, scale invariance, decomposition")
    {
        auto g = oracle::rng(11);
        for (int it = 0; it < 200; ++it) {
            const int n = 2 + it % 3;
            std::vector<double> tau(static_cast<std::size_t>(n));
            for (auto& t : tau) t = oracle::uniform(g, 0, 1) < 0.5 ? -1.0 : 1.0;
            const Metric m = Metric::diagonal(tau);
            const Vec u = Vec::Random(n), v = Vec::Random(n), w = Vec::Random(n);
            const double s = oracle::uniform(g, -2, 2);
            CHECK(std::abs(inner(m, u, v) - inner(m, v, u)) <= 1e-13);
            CHECK(std::abs(inner(m, s * u + w, v) - (s * inner(m, u, v) + inner(m, w, v))) <= 1e-13);
            CHECK(classify(m, u) == classify(m, Vec(oracle::uniform(g, 0.01, 100) * u)));
            if (std::abs(quad(m, v)) > 0.1 * v.squaredNorm()) {
                const Decomposition d = decompose(m, u, v);
                CHECK((d.tangential + d.normal - u).cwiseAbs().maxCoeff() <= 1e-13);
                CHECK(std::abs(inner(m, d.tangential, v)) <= 1e-12);
                CHECK(std::abs(inner(m, d.tangential, d.normal)) <= 1e-12 * (1.0 + d.tangential.norm() * d.normal.norm()));
            }
        }
    }

    TEST_CASE("metric validation")
    {
        CHECK_THROWS_AS(Metric(Mat::Zero(2, 2)), std::invalid_argument);
        Mat A(2, 2);
        A << 1, 2, 0, 1;
        CHECK_THROWS_AS(Metric{A}, std::invalid_argument);
        const Metric s = Metric::signature(2, 1);
        CHECK(s.positive() == 2);
        CHECK(s.negative() == 1);
        CHECK(Metric::null_plane().positive() == 1);
        CHECK(Metric::null_plane().negative() == 1);
    }
}
