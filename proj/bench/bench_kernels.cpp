#include "peb/confocal.hpp"
#include "peb/kernels.hpp"

#include <benchmark/benchmark.h>

using namespace peb;

namespace {

constexpr std::uint64_t kSeed = 20240601;

template <auto Fn>
void batch(benchmark::State& st)
{
    const auto N = static_cast<std::size_t>(st.range(0));
    for (auto _ : st) benchmark::DoNotOptimize(Fn(N, kSeed));
    st.SetItemsProcessed(static_cast<std::int64_t>(st.iterations()) * st.range(0));
}

template <auto Fn>
void grid(benchmark::State& st)
{
    const ConfocalFamily F({1.0, 1.0}, {1.0, -1.0});
    const int res = static_cast<int>(st.range(0));
    for (auto _ : st) benchmark::DoNotOptimize(Fn(F, 3.0, res));
    st.SetItemsProcessed(static_cast<std::int64_t>(st.iterations()) * res * res);
}

}  // namespace

BENCHMARK(batch<kernels::bounces_serial>)->Name("bounces/serial")->Arg(10000)->Unit(benchmark::kMillisecond);
BENCHMARK(batch<kernels::bounces_omp>)->Name("bounces/omp")->Arg(10000)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(batch<kernels::chords_serial>)->Name("chords/serial")->Arg(10000)->Unit(benchmark::kMillisecond);
BENCHMARK(batch<kernels::chords_omp>)->Name("chords/omp")->Arg(10000)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(batch<kernels::point_counts_serial>)->Name("point_counts/serial")->Arg(10000)->Unit(benchmark::kMillisecond);
BENCHMARK(batch<kernels::point_counts_omp>)->Name("point_counts/omp")->Arg(10000)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(batch<kernels::line_counts_serial>)->Name("line_counts/serial")->Arg(10000)->Unit(benchmark::kMillisecond);
BENCHMARK(batch<kernels::line_counts_omp>)->Name("line_counts/omp")->Arg(10000)->Unit(benchmark::kMillisecond)->UseRealTime();
BENCHMARK(grid<kernels::confocal_grid_serial>)->Name("confocal_grid/serial")->Arg(200)->Unit(benchmark::kMillisecond);
BENCHMARK(grid<kernels::confocal_grid_omp>)->Name("confocal_grid/omp")->Arg(200)->Unit(benchmark::kMillisecond)->UseRealTime();

BENCHMARK_MAIN();
