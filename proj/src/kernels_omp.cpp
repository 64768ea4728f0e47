#include "peb/kernels.hpp"

#include <cstddef>

namespace peb::kernels {

namespace {

template <class T, class Fn>
std::vector<T> parallel(std::size_t N, Fn fn)
{
    std::vector<T> out(N);
    const auto n = static_cast<std::ptrdiff_t>(N);
#pragma omp parallel for schedule(dynamic, 64)
    for (std::ptrdiff_t i = 0; i < n; ++i) out[static_cast<std::size_t>(i)] = fn(static_cast<std::size_t>(i));
    return out;
}

}  // namespace

std::vector<BounceSample> bounces_omp(std::size_t N, std::uint64_t seed)
{
    return parallel<BounceSample>(N, [seed](std::size_t i) { return random_bounce(seed, i); });
}

std::vector<ChordSample> chords_omp(std::size_t N, std::uint64_t seed)
{
    return parallel<ChordSample>(N, [seed](std::size_t i) { return circle_cross_check(seed, i); });
}

std::vector<CountSample> point_counts_omp(std::size_t N, std::uint64_t seed)
{
    return parallel<CountSample>(N, [seed](std::size_t i) { return random_point_count(seed, i); });
}

std::vector<CountSample> line_counts_omp(std::size_t N, std::uint64_t seed)
{
    return parallel<CountSample>(N, [seed](std::size_t i) { return random_line_count(seed, i); });
}

std::vector<int> confocal_grid_omp(const ConfocalFamily& F, double w, int res)
{
    const auto rows = parallel<std::vector<int>>(static_cast<std::size_t>(res), [&](std::size_t r) {
        return confocal_grid_item_row(F, w, res, static_cast<int>(r));
    });
    std::vector<int> out;
    out.reserve(static_cast<std::size_t>(res) * static_cast<std::size_t>(res));
    for (const auto& row : rows) out.insert(out.end(), row.begin(), row.end());
    return out;
}

}  // namespace peb::kernels
