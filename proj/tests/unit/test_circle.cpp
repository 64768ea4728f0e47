#include "peb/billiard.hpp"
#include "peb/circle_lorentz.hpp"
#include "peb/errors.hpp"
#include "peb/kernels.hpp"

#include "../support/oracles.hpp"

#include <doctest.h>

#include <cmath>
#include <numbers>

using namespace peb;
using namespace peb::circle;

namespace {

const double kPi = std::numbers::pi;

double angle_gap(double a, double b)
{
    const double d = std::remainder(a - b, 2.0 * kPi);
    return std::abs(d);
}

}  // namespace

TEST_SUITE("circle_lorentz")
{
    TEST_CASE("circle map examples")
    {
        const ChordCoords a = circle_map(ChordCoords::from_angles(kPi / 6, 5 * kPi / 6));
        CHECK(angle_gap(a.t1(), 5 * kPi / 6) <= 1e-14);
        CHECK(angle_gap(a.t2(), -5 * kPi / 6) <= 1e-13);
        const ChordCoords b = circle_map(ChordCoords::from_angles(kPi / 4, 5 * kPi / 4));
        CHECK(angle_gap(b.t1(), 5 * kPi / 4) <= 1e-14);
        CHECK(angle_gap(b.t2(), kPi / 4) <= 1e-13);
        CHECK_THROWS_AS(circle_map(ChordCoords::from_angles(0.3, kPi / 2)), NumericError);
    }

    TEST_CASE("circle map agrees with the reflection engine")
    {
        int compared = 0;
        double worst = 0.0;
        for (std::size_t i = 0; i < 2000; ++i) {
            const kernels::ChordSample s = kernels::circle_cross_check(5, i);
            if (s.skipped) continue;
            ++compared;
            worst = std::max(worst, s.err);
        }
        CHECK(compared > 1900);
        CHECK(worst <= 1e-10);
    }

    TEST_CASE("light-like chords return after four steps")
    {
        auto g = oracle::rng(21);
        for (int i = 0; i < 200; ++i) {
            const double t1 = oracle::uniform(g, 0.05, 1.5);
            const ChordCoords c = ChordCoords::from_angles(t1, kPi - t1);
            const Orbit o = orbit(c, 4);
            REQUIRE_FALSE(o.stopped);
            CHECK(angle_gap(o.chords[4].t1(), c.t1()) <= 1e-9);
            CHECK(angle_gap(o.chords[4].t2(), c.t2()) <= 1e-9);
            CHECK(std::abs(integral_level(c).den) <= 1e-15);
        }
    }

    TEST_CASE("level of the diameter and of light-like chords")
    {
        const InvariantLevel d = integral_level(ChordCoords::from_angles(kPi / 4, 5 * kPi / 4));
        CHECK(d.num == doctest::Approx(1.0).epsilon(1e-15));
        CHECK(d.den == doctest::Approx(-1.0).epsilon(1e-15));
        CHECK(d.lambda() == doctest::Approx(-1.0).epsilon(1e-15));
        CHECK(std::abs(integral_level(ChordCoords::from_angles(kPi / 6, 5 * kPi / 6)).den) <= 1e-15);
        // Ends pi/6 and pi - pi/6 in the quadrant representation: t1 + t2 = pi exactly.
        ChordCoords c;
        c.k1 = 0;
        c.r1 = kPi / 6;
        c.k2 = 2;
        c.r2 = -kPi / 6;
        const InvariantLevel l = integral_level(c);
        CHECK(l.light_like());
        CHECK_THROWS_AS(l.lambda(), std::domain_error);
        CHECK_THROWS_AS(integral_I(c), std::domain_error);
        CHECK(level_defect(l, integral_level(circle_map(c))) == 0.0);
    }

    TEST_CASE("integral conservation over long orbits")
    {
        auto g = oracle::rng(4);
        for (int k = 0; k < 6; ++k) {
            const ChordCoords c = ChordCoords::from_angles(oracle::uniform(g, 0, 6.28), oracle::uniform(g, 0, 6.28));
            const double I0 = integral_I(c);
            const InvariantLevel L0 = integral_level(c);
            const Orbit o = orbit(c, 10000);
            double drift = 0.0, proj = 0.0;
            for (std::size_t i = 1; i < o.chords.size(); ++i) {
                drift = std::max(drift, std::abs(integral_I(o.chords[i]) - I0) / std::abs(I0));
                proj = std::max(proj, level_defect(integral_level(o.chords[i - 1]), integral_level(o.chords[i])));
            }
            CHECK(drift <= 1e-8);
            CHECK(proj <= 1e-10);
            static_cast<void>(L0);
        }
    }

    TEST_CASE("geometric integral is odd under both involutions")
    {
        // tau moves the base point to the other end of the same oriented line,
        // sigma reflects the direction there.
        const Boundary B = Boundary::quadric(Metric::null_plane(), Mat::Identity(2, 2));
        const Metric m = Metric::null_plane();
        auto g = oracle::rng(9);
        int used = 0;
        for (int i = 0; i < 500; ++i) {
            const ChordCoords c = ChordCoords::from_angles(oracle::uniform(g, 0, 6.28), oracle::uniform(g, 0, 6.28));
            if (std::abs(c.r2) < 1e-3 || c.arc() < 1e-3) continue;
            const Vec q = point(c.t1()), q1 = point(c.t2());
            const Vec w = q1 - q;
            const double nn = std::abs(quad(m, w));
            if (nn < 1e-6 * w.squaredNorm()) continue;
            const Vec v = w / std::sqrt(nn);
            const double a = geometric_integral(q, v), b = geometric_integral(q1, v);
            const double r = geometric_integral(q1, reflect(B, q1, v));
            CHECK(std::abs(a + b) <= 1e-10 * std::max(1.0, std::abs(a)));
            CHECK(std::abs(b + r) <= 1e-10 * std::max(1.0, std::abs(b)));
            ++used;
        }
        CHECK(used > 400);
        const ChordCoords c = ChordCoords::from_angles(kPi / 6, kPi / 2 - 0.2);
        CHECK(geometric_integral(c) == doctest::Approx(-integral_I(c) / std::sqrt(2.0)).epsilon(1e-12));
    }

    TEST_CASE("invariant densities")
    {
        auto g = oracle::rng(13);
        int done = 0;
        for (int i = 0; i < 300; ++i) {
            const ChordCoords c = ChordCoords::from_angles(oracle::uniform(g, 0, 6.28), oracle::uniform(g, 0, 6.28));
            try {
                CHECK(form_invariance_check(Density::Omega_arc, c) <= 1e-6);
                CHECK(form_invariance_check(Density::Omega_inv, c) <= 1e-6);
                // The cube root of the density ratio is an invariant function.
                const ChordCoords t = circle_map(c);
                const double r0 = std::cbrt(density(Density::Omega_inv, c) / density(Density::Omega_arc, c));
                const double r1 = std::cbrt(density(Density::Omega_inv, t) / density(Density::Omega_arc, t));
                CHECK(std::abs(r1 - r0) <= 1e-8 * std::abs(r0));
                ++done;
            } catch (const NumericError&) {
            }
        }
        CHECK(done > 250);
        CHECK(form_invariance_check(Density::Omega_arc, ChordCoords::from_angles(kPi / 4, 5 * kPi / 4)) <= 1e-6);
        CHECK(omega_chord_factor() == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-12));
    }

    TEST_CASE("envelope conics")
    {
        for (double lambda : {-0.8, -0.3, 0.0, 0.4, 0.9}) {
            const Conic q = envelope_conic(lambda);
            for (double x : {-2.0, -0.5, 0.7}) {
                const double y1 = q.eval(x, 1.0);
                CHECK(y1 == doctest::Approx((x + lambda) * (x + lambda)).epsilon(1e-14));
            }
            for (int k = 0; k < 24; ++k) {
                const double alpha = 2 * kPi * k / 24 + 0.01;
                if (1.0 - lambda * std::sin(2 * alpha) <= 0.0) continue;
                const Vec p = envelope_point(alpha, lambda);
                CHECK(std::abs(q.eval(p(0), p(1))) <= 1e-10);
            }
        }
        const Conic c0 = envelope_conic(0.0);
        CHECK(c0.a == 1.0);
        CHECK(c0.b == 0.0);
        CHECK(c0.c == 1.0);
        CHECK(c0.f == -1.0);
        CHECK_THROWS_AS(envelope_point(kPi / 4, 2.0), std::invalid_argument);
    }

    TEST_CASE("orbit chords are tangent to their conic")
    {
        for (double lambda : {-0.9, -0.4, 0.3, 0.8}) {
            const ChordCoords c = level_chord(lambda, lambda > 0 ? 0.37 : -0.37);
            CHECK(integral_level(c).lambda() == doctest::Approx(lambda).epsilon(1e-12));
            const Orbit o = orbit(c, 500);
            for (const auto& ch : o.chords) CHECK(chord_tangency_defect(ch, lambda) <= 1e-8);
        }
    }

    TEST_CASE("(alpha, p) chart round trip")
    {
        const ChordCoords c = ChordCoords::from_angles(0.4, 2.2);
        const AlphaPChart ch = to_alpha_p(c);
        CHECK(ch.alpha == doctest::Approx(1.3));
        CHECK(ch.p == doctest::Approx(std::cos(0.9)));
    }

    TEST_CASE("rotation numbers")
    {
        // Exact quadrant forms: the light-like chord (pi/6, 5pi/6) and the diameter (pi/4, 5pi/4).
        ChordCoords light;
        light.k1 = 0;
        light.r1 = kPi / 6;
        light.k2 = 2;
        light.r2 = -kPi / 6;
        ChordCoords diam;
        diam.k1 = 1;
        diam.r1 = -kPi / 4;
        diam.k2 = 3;
        diam.r2 = -kPi / 4;
        // Light-like arcs alternate 2pi/3, pi/3: average over an even number of chords.
        CHECK(rotation_number(orbit(light, 3999).chords).value == doctest::Approx(0.25).epsilon(1e-12));
        // The diameter 2-cycle is hyperbolic; rounding grows by about 4 per period, so keep it short.
        const RotationEstimate rd = rotation_number(orbit(diam, 9).chords);
        CHECK(rd.value == doctest::Approx(0.5).epsilon(1e-11));
        CHECK(rd.accuracy_warning);
        CHECK(rotation_number({ChordCoords::from_angles(0.1, 1.0)}).accuracy_warning);
        CHECK_THROWS_AS(rotation_number({}), std::invalid_argument);
    }

    TEST_CASE("Poncelet: periodicity is a property of the level")
    {
        // lambda = 0.5 is 4-periodic; every chord of the level shares the period.
        auto g = oracle::rng(31);
        int tested = 0;
        for (int i = 0; i < 200 && tested < 20; ++i) {
            const double alpha = oracle::uniform(g, 0, 2 * kPi);
            if (1.0 - 0.5 * std::sin(2 * alpha) > 1.0) continue;
            try {
                const ChordCoords c = level_chord(0.5, alpha);
                const Orbit o = orbit(c, 4);
                if (o.stopped) continue;
                CHECK(angle_gap(o.chords[4].t1(), c.t1()) <= 1e-8);
                CHECK(angle_gap(o.chords[4].t2(), c.t2()) <= 1e-8);
                ++tested;
            } catch (const std::invalid_argument&) {
            }
        }
        CHECK(tested == 20);
    }
}
