#include "peb/kernels.hpp"

#include "peb/billiard.hpp"
#include "peb/circle_lorentz.hpp"
#include "peb/errors.hpp"

#include <cmath>
#include <numbers>

namespace peb::kernels {

namespace {

std::uint64_t splitmix(std::uint64_t z)
{
    z += 0x9e3779b97f4a7c15ULL;
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

double uniform(std::mt19937_64& g, double a, double b)
{
    return std::uniform_real_distribution<double>(a, b)(g);
}

Vec gaussian(std::mt19937_64& g, int n)
{
    std::normal_distribution<double> d;
    Vec v(n);
    for (int i = 0; i < n; ++i) v(i) = d(g);
    return v;
}

std::vector<double> random_tau(std::mt19937_64& g, int n)
{
    std::vector<double> tau(static_cast<std::size_t>(n));
    for (auto& t : tau) t = uniform(g, 0.0, 1.0) < 0.5 ? -1.0 : 1.0;
    return tau;
}

// Family with well separated poles.
void random_family(std::mt19937_64& g, int n, std::vector<double>& a2, std::vector<double>& tau)
{
    for (;;) {
        tau = random_tau(g, n);
        a2.assign(static_cast<std::size_t>(n), 0.0);
        for (auto& a : a2) a = uniform(g, 0.3, 4.0);
        bool ok = true;
        for (int i = 0; i < n; ++i)
            for (int j = i + 1; j < n; ++j)
                if (std::abs(tau[i] * a2[i] - tau[j] * a2[j]) < 0.05) ok = false;
        if (ok) return;
    }
}

}  // namespace

std::mt19937_64 item_rng(std::uint64_t seed, std::size_t i)
{
    return std::mt19937_64(splitmix(splitmix(seed) ^ static_cast<std::uint64_t>(i)));
}

BounceSample random_bounce(std::uint64_t seed, std::size_t i)
{
    auto g = item_rng(seed, i);
    BounceSample s;
    const int n = 2 + static_cast<int>(uniform(g, 0.0, 3.0));
    s.dim = n;
    const int k = static_cast<int>(uniform(g, 0.0, n + 1.0));
    const Metric m = Metric::signature(k, n - k);
    // Rotated ellipsoid C = R^T diag(1/a^2) R.
    Eigen::HouseholderQR<Mat> qr(Mat::NullaryExpr(n, n, [&]() { return uniform(g, -1.0, 1.0); }));
    const Mat R = qr.householderQ();
    Vec d(n);
    for (int j = 0; j < n; ++j) d(j) = 1.0 / uniform(g, 0.25, 9.0);
    Mat C = R.transpose() * d.asDiagonal() * R;
    C = 0.5 * (C + C.transpose()).eval();
    const Boundary B = Boundary::quadric(m, C);

    Vec x = gaussian(g, n);
    x *= uniform(g, 0.0, 0.95) / std::sqrt(x.dot(C * x));
    const Vec w = gaussian(g, n);
    try {
        const Vec q = next_hit_dir(B, x, w);
        const NormalInfo ni = normal_at(B, q);
        if (ni.singular) {
            s.singular = true;
            return s;
        }
        const Vec w1 = reflect(B, q, w);
        const double scale = std::max(w.squaredNorm(), w1.squaredNorm());
        s.energy = std::abs(quad(m, w1) - quad(m, w)) / scale;
        if (n == 2) {
            const Vec gr = B.gradient(q);
            const Vec t = vec2(-gr(1), gr(0));
            s.harmonic = harmonic_defect(t.normalized(), ni.nu.normalized(), w.normalized(), w1.normalized());
        }
    } catch (const NumericError&) {
        s.singular = true;
    }
    return s;
}

ChordSample circle_cross_check(std::uint64_t seed, std::size_t i)
{
    namespace cl = peb::circle;
    auto g = item_rng(seed, i);
    ChordSample s;
    const double t1 = uniform(g, 0.0, 2.0 * std::numbers::pi);
    const double t2 = uniform(g, 0.0, 2.0 * std::numbers::pi);
    const cl::ChordCoords c = cl::ChordCoords::from_angles(t1, t2);
    static const Boundary B = Boundary::quadric(Metric::null_plane(), Mat::Identity(2, 2));
    try {
        if (c.arc() < 1e-3 || std::abs(c.r1) < 1e-3 || std::abs(c.r2) < 1e-3) throw std::domain_error("skip");
        const cl::ChordCoords next = cl::circle_map(c);
        const Vec q1 = cl::point(c.t1());
        const Vec q2 = cl::point(c.t2());
        const Vec w1 = reflect(B, q2, q2 - q1);
        const Vec q3 = next_hit_dir(B, q2, w1);
        s.err = (q3 - cl::point(next.t2())).norm();
    } catch (const std::exception&) {
        s.skipped = true;
    }
    return s;
}

CountSample random_point_count(std::uint64_t seed, std::size_t i)
{
    auto g = item_rng(seed, i);
    CountSample s;
    const int n = uniform(g, 0.0, 1.0) < 0.5 ? 2 : 3;
    random_family(g, n, s.a2, s.tau);
    s.x = Vec(n);
    for (int j = 0; j < n; ++j) s.x(j) = uniform(g, -3.0, 3.0);
    const ConfocalFamily F(s.a2, s.tau);
    const RootSet r = quadrics_through_point(F, s.x);
    s.count = static_cast<int>(r.lambdas.size());
    s.degenerate = r.degenerate;
    if (!r.degenerate) s.ortho = orthogonality_defect(F, s.x, r.lambdas);
    return s;
}

CountSample random_line_count(std::uint64_t seed, std::size_t i)
{
    auto g = item_rng(seed, i);
    CountSample s;
    const int n = uniform(g, 0.0, 1.0) < 0.5 ? 2 : 3;
    random_family(g, n, s.a2, s.tau);
    s.x = Vec(n);
    for (int j = 0; j < n; ++j) s.x(j) = uniform(g, -3.0, 3.0);
    s.v = gaussian(g, n);
    bool mixed = false;
    for (double t : s.tau) mixed = mixed || t != s.tau[0];
    if (mixed && uniform(g, 0.0, 1.0) < 0.25) {
        // Rescale the positive and negative parts to equal length.
        double pp = 0.0, nn = 0.0;
        for (int j = 0; j < n; ++j) (s.tau[j] > 0 ? pp : nn) += s.v(j) * s.v(j);
        for (int j = 0; j < n; ++j) s.v(j) /= std::sqrt(s.tau[j] > 0 ? pp : nn);
    }
    s.v.normalize();
    const ConfocalFamily F(s.a2, s.tau);
    s.light_like = classify(F.metric(), s.v) == CausalClass::LightLike;
    const TangencySpectrum t = tangent_spectrum_of_line(F, s.x, s.v);
    s.count = static_cast<int>(t.lambdas.size());
    s.degenerate = t.degenerate;
    s.infinite = t.infinite;
    s.ortho = t.orthogonality;
    return s;
}

std::vector<int> confocal_grid_item_row(const ConfocalFamily& F, double w, int res, int row)
{
    std::vector<int> out(static_cast<std::size_t>(res));
    const double y = w - 2.0 * w * (row + 0.5) / res;
    for (int c = 0; c < res; ++c) {
        const double x = -w + 2.0 * w * (c + 0.5) / res;
        const RootSet r = quadrics_through_point(F, vec2(x, y));
        out[static_cast<std::size_t>(c)] = r.degenerate ? -1 : static_cast<int>(r.lambdas.size());
    }
    return out;
}

template <class T, class Fn>
static std::vector<T> serial(std::size_t N, Fn fn)
{
    std::vector<T> out(N);
    for (std::size_t i = 0; i < N; ++i) out[i] = fn(i);
    return out;
}

std::vector<BounceSample> bounces_serial(std::size_t N, std::uint64_t seed)
{
    return serial<BounceSample>(N, [seed](std::size_t i) { return random_bounce(seed, i); });
}

std::vector<ChordSample> chords_serial(std::size_t N, std::uint64_t seed)
{
    return serial<ChordSample>(N, [seed](std::size_t i) { return circle_cross_check(seed, i); });
}

std::vector<CountSample> point_counts_serial(std::size_t N, std::uint64_t seed)
{
    return serial<CountSample>(N, [seed](std::size_t i) { return random_point_count(seed, i); });
}

std::vector<CountSample> line_counts_serial(std::size_t N, std::uint64_t seed)
{
    return serial<CountSample>(N, [seed](std::size_t i) { return random_line_count(seed, i); });
}

std::vector<int> confocal_grid_serial(const ConfocalFamily& F, double w, int res)
{
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(res) * static_cast<std::size_t>(res));
    for (int r = 0; r < res; ++r) {
        const auto row = confocal_grid_item_row(F, w, res, r);
        out.insert(out.end(), row.begin(), row.end());
    }
    return out;
}

}  // namespace peb::kernels
