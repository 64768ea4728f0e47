#pragma once

#include <gmpxx.h>

#include <vector>

namespace peb {

// Coefficients in ascending order: c[0] + c[1] x + ...
using Poly = std::vector<double>;
using QPoly = std::vector<mpq_class>;

QPoly qpoly_linear(double c0, double c1);
QPoly qpoly_const(double c);
QPoly qpoly_mul(const QPoly& a, const QPoly& b);
QPoly qpoly_add(const QPoly& a, const QPoly& b);
QPoly qpoly_scale(const QPoly& a, const mpq_class& s);
Poly to_double(const QPoly& a);

double poly_eval(const Poly& p, double x);
Poly poly_derivative(const Poly& p);

struct RealRoots {
    std::vector<double> roots;  // sorted
    bool near_multiple = false; // a cluster or a barely complex pair was seen
};

// Real roots of p with degree taken as p.size()-1 (the caller trims).
RealRoots real_roots(const Poly& p);

}  // namespace peb
