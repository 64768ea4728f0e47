#pragma once

#include "peb/confocal.hpp"

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

namespace peb::verify {

struct Criterion {
    int id = 0;
    std::string title;
    bool pass = false;
    // Failed only on a requirement the dynamics cannot meet; the rest passed.
    bool unattainable = false;
    std::vector<std::string> details;
};

struct Options {
    std::uint64_t seed = 20240601;
    bool parallel = true;
};

Criterion reflection_law(const Options& o);
Criterion circle_closed_form(const Options& o);
Criterion circle_integrals(const Options& o);
Criterion circle_envelope(const Options& o);
Criterion circle_densities(const Options& o);
Criterion jacobi_points(const Options& o);
Criterion chasles_lines(const Options& o);
Criterion jacobi_chasles_dynamics(const Options& o);
Criterion clairaut(const Options& o);
Criterion diameters(const Options& o);
Criterion caustics(const Options& o);
Criterion line_space_forms(const Options& o);
Criterion near_singular(const Options& o);

std::vector<std::function<Criterion(const Options&)>> all();

// Real roots of sum x_i^2/(a_i^2 + tau_i lambda) = 1 by sign changes on a dense
// pole-clustered sampling of each interval between poles.
int sign_change_count(const ConfocalFamily& F, const Vec& x, int samples = 4000);

// "PASS [n] title: detail; detail" lines.
std::string format(const Criterion& c);

// 0 when every criterion passed or failed only as unattainable.
int exit_code(const std::vector<Criterion>& cs);

}  // namespace peb::verify
