#pragma once

#include "peb/confocal.hpp"
#include "peb/pseudo_linalg.hpp"

#include <cstdint>
#include <random>
#include <vector>

namespace peb::kernels {

// Independent generator for item i of a batch, so serial and parallel runs agree.
std::mt19937_64 item_rng(std::uint64_t seed, std::size_t i);

struct BounceSample {
    int dim = 0;
    double energy = 0.0;    // |<w1,w1> - <w,w>| / max(|w|^2, |w1|^2)
    double harmonic = 0.0;  // 2-D only
    bool singular = false;
};

// Random signature (k,l) with k+l <= 4, random ellipsoid and interior chord, one reflection.
BounceSample random_bounce(std::uint64_t seed, std::size_t i);

struct ChordSample {
    double err = 0.0;  // |T(c) - engine(c)| in the plane, Euclidean
    bool skipped = false;
};

// circle_map against the generic engine on one random chord.
ChordSample circle_cross_check(std::uint64_t seed, std::size_t i);

struct CountSample {
    std::vector<double> a2;
    std::vector<double> tau;
    Vec x;
    Vec v;  // empty for point samples
    bool light_like = false;
    int count = 0;
    bool degenerate = false;
    bool infinite = false;
    double ortho = 0.0;
};

// Random family (n = 2 or 3, mixed signature) and a random point.
CountSample random_point_count(std::uint64_t seed, std::size_t i);
// Random family and a random line; a quarter of the lines are light-like.
CountSample random_line_count(std::uint64_t seed, std::size_t i);

// Number of real lambdas through each pixel of a res x res grid on [-w,w]^2; -1 if degenerate.
std::vector<int> confocal_grid_item_row(const ConfocalFamily& F, double w, int res, int row);

std::vector<BounceSample> bounces_serial(std::size_t N, std::uint64_t seed);
std::vector<BounceSample> bounces_omp(std::size_t N, std::uint64_t seed);
std::vector<ChordSample> chords_serial(std::size_t N, std::uint64_t seed);
std::vector<ChordSample> chords_omp(std::size_t N, std::uint64_t seed);
std::vector<CountSample> point_counts_serial(std::size_t N, std::uint64_t seed);
std::vector<CountSample> point_counts_omp(std::size_t N, std::uint64_t seed);
std::vector<CountSample> line_counts_serial(std::size_t N, std::uint64_t seed);
std::vector<CountSample> line_counts_omp(std::size_t N, std::uint64_t seed);
std::vector<int> confocal_grid_serial(const ConfocalFamily& F, double w, int res);
std::vector<int> confocal_grid_omp(const ConfocalFamily& F, double w, int res);

}  // namespace peb::kernels
