#pragma once

// Independent reference computations for the unit tests. None of these call
// into the library's solvers; they use brute force or a different formulation.

#include <Eigen/Dense>

#include <algorithm>
#include <cmath>
#include <functional>
#include <random>
#include <vector>

namespace oracle {

using Vec = Eigen::VectorXd;
using Mat = Eigen::MatrixXd;

// Antipodal critical chords x, -x of <x-y,x-y>/2 on x^T C x = 1 come from the
// pencil C x = mu E x. With C = L L^T this is the symmetric problem
// L^-1 E L^-T w = nu w, x = L^-T w, f = 2 nu.
struct PencilChord {
    Vec x;
    double f = 0.0;
};

inline std::vector<PencilChord> pencil_chords(const Mat& C, const Mat& E)
{
    const Eigen::LLT<Mat> llt(C);
    const Mat L = llt.matrixL();
    const Mat Li = L.inverse();
    const Mat S = Li * E * Li.transpose();
    const Eigen::SelfAdjointEigenSolver<Mat> es(0.5 * (S + S.transpose()));
    std::vector<PencilChord> out;
    for (Eigen::Index i = 0; i < S.rows(); ++i) {
        PencilChord p;
        p.x = Li.transpose() * es.eigenvectors().col(i);
        p.f = 2.0 * es.eigenvalues()(i);
        out.push_back(p);
    }
    return out;
}

// Sign changes of g on (-1e8, 1e8) minus the poles, counted in long double on a
// grid geometrically refined towards each pole.
inline int count_sign_changes(std::vector<long double> poles, const std::function<long double(long double)>& g)
{
    using LD = long double;
    std::sort(poles.begin(), poles.end());
    std::vector<LD> edges{-1e8L};
    for (LD p : poles) edges.push_back(p);
    edges.push_back(1e8L);
    int count = 0;
    for (std::size_t k = 0; k + 1 < edges.size(); ++k) {
        const LD lo = edges[k], hi = edges[k + 1];
        std::vector<LD> t;
        const int M = 20000;
        for (int j = 0; j <= M; ++j) {
            const LD u = static_cast<LD>(j) / M;
            // Offsets from both ends, 1e-14 .. half the interval.
            const LD w = (hi - lo) / 2;
            const LD d = w * std::pow(1e-14L, 1 - u);
            t.push_back(lo + d);
            t.push_back(hi - d);
        }
        std::sort(t.begin(), t.end());
        int prev = 0;
        for (LD l : t) {
            if (l <= lo || l >= hi) continue;
            const LD v = g(l);
            const int sgn = v > 0 ? 1 : (v < 0 ? -1 : 0);
            if (sgn == 0) continue;
            if (prev != 0 && sgn != prev) ++count;
            prev = sgn;
        }
    }
    return count;
}

inline std::vector<long double> confocal_poles(const std::vector<double>& a2, const std::vector<double>& tau)
{
    std::vector<long double> poles;
    for (std::size_t i = 0; i < a2.size(); ++i) poles.push_back(-static_cast<long double>(tau[i]) * a2[i]);
    return poles;
}

// Real solutions of sum x_i^2/(a_i^2 + tau_i lambda) = 1 from the uncleared function.
inline int count_confocal_roots(const std::vector<double>& a2, const std::vector<double>& tau, const Vec& x)
{
    using LD = long double;
    return count_sign_changes(confocal_poles(a2, tau), [&](LD l) {
        LD s = 0;
        for (std::size_t i = 0; i < a2.size(); ++i) {
            const LD xi = x(static_cast<Eigen::Index>(i));
            s += xi * xi / (a2[i] + tau[i] * l);
        }
        return s - 1;
    });
}

// Members tangent to the line x0 + t v: zero discriminant B^2 - A C of
// A t^2 + 2 B t + C, A = sum v^2/d, B = sum x0 v/d, C = sum x0^2/d - 1.
inline int count_tangent_members(const std::vector<double>& a2, const std::vector<double>& tau, const Vec& x0,
                                 const Vec& v)
{
    using LD = long double;
    return count_sign_changes(confocal_poles(a2, tau), [&](LD l) {
        LD A = 0, B = 0, C = -1;
        for (std::size_t i = 0; i < a2.size(); ++i) {
            const auto e = static_cast<Eigen::Index>(i);
            const LD d = a2[i] + tau[i] * l;
            A += static_cast<LD>(v(e)) * v(e) / d;
            B += static_cast<LD>(x0(e)) * v(e) / d;
            C += static_cast<LD>(x0(e)) * x0(e) / d;
        }
        return B * B - A * C;
    });
}

// Exact great circle through x0 with initial velocity v0 on the unit sphere.
inline Vec great_circle(const Vec& x0, const Vec& v0, double t)
{
    const double w = v0.norm();
    return std::cos(w * t) * x0 + std::sin(w * t) * v0 / w;
}

inline std::mt19937_64 rng(std::uint64_t s) { return std::mt19937_64(s); }

inline double uniform(std::mt19937_64& g, double a, double b)
{
    return std::uniform_real_distribution<double>(a, b)(g);
}

}  // namespace oracle
