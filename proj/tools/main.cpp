// pebcli: scenario runner for the billiard, geodesic and confocal engines.
#include "peb/billiard.hpp"
#include "peb/circle_lorentz.hpp"
#include "peb/config.hpp"
#include "peb/confocal.hpp"
#include "peb/csv.hpp"
#include "peb/errors.hpp"
#include "peb/kernels.hpp"
#include "peb/line_space.hpp"
#include "peb/quadric_dynamics.hpp"
#include "peb/revolution.hpp"
#include "peb/svg.hpp"
#include "peb/variational.hpp"
#include "peb/verify.hpp"

#include <CLI11.hpp>

#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <numbers>
#include <sstream>

using namespace peb;

namespace {

constexpr double kPi = std::numbers::pi;

struct Param {
    std::string key;
    std::string fallback;
    std::string help;
};

struct Command {
    std::string name;
    std::string help;
    std::vector<Param> params;
    std::function<int(const Scenario&)> run;
};

// Exit codes: 0 ok, 1 usage, 2 config, 3 numeric failure, 4 failed checks.
constexpr int kExitConfig = 2;
constexpr int kExitNumeric = 3;

std::string join(const std::vector<std::string>& parts, const std::string& sep)
{
    std::string s;
    for (std::size_t i = 0; i < parts.size(); ++i) s += (i ? sep : "") + parts[i];
    return s;
}

std::string label(const std::string& base, int i) { return base + std::to_string(i + 1); }

std::vector<std::string> labels(const std::string& base, int n)
{
    std::vector<std::string> v;
    for (int i = 0; i < n; ++i) v.push_back(label(base, i));
    return v;
}

Vec to_vec(const std::vector<double>& v) { return Eigen::Map<const Vec>(v.data(), static_cast<Eigen::Index>(v.size())); }

void append(std::vector<double>& row, const Vec& v)
{
    for (Eigen::Index i = 0; i < v.size(); ++i) row.push_back(v(i));
}

// "-" or empty is stdout; otherwise a file that must open.
class Output {
public:
    explicit Output(const std::string& path)
    {
        if (path.empty() || path == "-") return;
        file_ = std::make_unique<std::ofstream>(path, std::ios::binary);
        if (!*file_) throw ConfigError("cannot write " + path);
    }
    std::ostream& stream() { return file_ ? *file_ : std::cout; }

private:
    std::unique_ptr<std::ofstream> file_;
};

void require_dim(const std::string& what, std::size_t got, std::size_t want)
{
    if (got != want)
        throw ConfigError(what + " has " + std::to_string(got) + " entries, expected " + std::to_string(want));
}

std::vector<double> same_size(const Scenario& s, const std::string& key, std::size_t n)
{
    auto v = s.list(key);
    require_dim("'" + key + "'", v.size(), n);
    return v;
}

// Billiard in the ellipsoid sum x_i^2/a_i^2 = 1 with metric diag(tau).
int cmd_billiard(const Scenario& s)
{
    const auto a2 = s.list("a");
    const auto tau = same_size(s, "tau", a2.size());
    const Quadric Q(a2, tau);
    const Vec x0 = to_vec(same_size(s, "x0", a2.size()));
    const Vec v0 = to_vec(same_size(s, "v0", a2.size()));
    const int n = Q.dim();
    const Trajectory tr = quadric_billiard(Q, x0, v0, static_cast<int>(s.integer("bounces")));
    const Metric m = Q.metric();

    Output out(s.str("out"));
    std::vector<std::string> cols{"bounce"};
    for (const auto& c : labels("q", n)) cols.push_back(c);
    for (const auto& c : labels("w", n)) cols.push_back(c);
    cols.insert(cols.end(), {"energy", "harmonic_defect", "Cx.w"});
    for (const auto& c : labels("F", n)) cols.push_back(c);
    CsvWriter csv(out.stream(), cols);
    for (std::size_t k = 0; k < tr.bounces.size(); ++k) {
        const auto& b = tr.bounces[k];
        std::vector<double> row{static_cast<double>(k)};
        append(row, b.point);
        append(row, b.outgoing);
        row.push_back(quad(m, b.outgoing));
        row.push_back(b.harmonic_defect);
        row.push_back(chord_joachimsthal(Q, b.point, b.outgoing));
        for (double f : integrals_F(Q, b.point, b.outgoing)) row.push_back(f);
        csv.row(row);
    }
    std::cerr << "billiard: " << tr.bounces.size() << " bounces, status " << status_name(tr.status) << "\n";
    if (tr.status != Trajectory::Status::Completed) {
        std::cerr << "billiard: " << tr.message << "\n";
        return kExitNumeric;
    }
    return 0;
}

// Level curves num - lambda den = 0 of the circle-billiard integral on the torus (t1, t2).
int cmd_circle_phase(const Scenario& s)
{
    namespace cl = peb::circle;
    const int grid = static_cast<int>(s.integer("grid"));
    if (grid < 8) throw ConfigError("'grid' must be at least 8");
    const auto levels = s.list("levels");
    const double T = 2.0 * kPi;

    Svg svg(640, 640, 0.0, T, 0.0, T);
    svg.rect(0.0, 0.0, T, T, "#ffffff");
    // Light-like stratum t1 + t2 = 0 mod pi.
    for (int j = 1; j <= 3; ++j) {
        const double c = j * kPi;
        svg.segment(vec2(std::max(0.0, c - T), std::min(T, c)), vec2(std::min(T, c), std::max(0.0, c - T)),
                    "#bbbbbb", 1.0);
    }
    svg.segment(vec2(0.0, 4.0 * kPi - T), vec2(4.0 * kPi - T, 0.0), "#bbbbbb", 1.0);

    std::unique_ptr<Output> out;
    std::unique_ptr<CsvWriter> csv;
    if (!s.str("out").empty()) {
        out = std::make_unique<Output>(s.str("out"));
        csv = std::make_unique<CsvWriter>(out->stream(), std::vector<std::string>{"lambda", "t1a", "t2a", "t1b", "t2b"});
    }
    static const char* colors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"};
    std::size_t ci = 0;
    for (double lambda : levels) {
        auto g = [lambda](double t1, double t2) {
            const double h = std::sin(0.5 * (t2 - t1));
            return h * h - lambda * std::sin(t1 + t2);
        };
        const auto segs = contour(g, 0.0, 0.0, T, 0.0, T, grid, grid);
        const std::string color = colors[ci++ % 6];
        for (const auto& sg : segs) {
            svg.segment(sg.a, sg.b, color, 1.2);
            if (csv) csv->row(std::vector<double>{lambda, sg.a(0), sg.a(1), sg.b(0), sg.b(1)});
        }
    }
    const int steps = static_cast<int>(s.integer("orbit-steps"));
    if (steps > 0) {
        const auto t = s.list("orbit");
        require_dim("'orbit'", t.size(), 2);
        const cl::Orbit o = cl::orbit(cl::ChordCoords::from_angles(t[0], t[1]), steps);
        for (const auto& c : o.chords) svg.dot(vec2(c.t1(), c.t2()), 1.5, "#000000");
        if (o.stopped) std::cerr << "circle-phase: orbit stopped at a singular point\n";
    }
    svg.text(vec2(0.1, T - 0.3), "t1 horizontal, t2 vertical");
    svg.save(s.str("svg"));
    std::cerr << "circle-phase: " << levels.size() << " levels written to " << s.str("svg") << "\n";
    return 0;
}

// Number of real lambdas through each pixel, with a few members drawn on top.
int cmd_confocal_count(const Scenario& s)
{
    const long n = s.integer("n");
    if (n != 2) throw ConfigError("confocal-count draws a planar raster; 'n' must be 2");
    const auto a2 = same_size(s, "a", 2);
    const auto tau = same_size(s, "tau", 2);
    const double w = s.number("window");
    const int res = static_cast<int>(s.integer("res"));
    if (w <= 0.0 || res < 2) throw ConfigError("'window' must be positive and 'res' at least 2");
    const ConfocalFamily F(a2, tau);
    const std::vector<int> counts = kernels::confocal_grid_omp(F, w, res);

    Svg svg(640, 640, -w, w, -w, w);
    const double px = 2.0 * w / res;
    std::map<int, int> hist;
    auto fill = [](int k) { return k < 0 ? "#888888" : k == 0 ? "#fde0c5" : k == 1 ? "#c6dbef" : "#9ecae1"; };
    // One rectangle per run of equal counts along a row.
    for (int r = 0; r < res; ++r) {
        int c0 = 0;
        for (int c = 0; c <= res; ++c) {
            const int k0 = counts[static_cast<std::size_t>(r * res + c0)];
            if (c < res) {
                const int k = counts[static_cast<std::size_t>(r * res + c)];
                ++hist[k];
                if (k == k0) continue;
            }
            const double y = w - (r + 1) * px;
            svg.rect(-w + c0 * px, y, -w + c * px, y + px, fill(k0));
            c0 = c;
        }
    }
    for (double lambda : s.list("members")) {
        auto g = [&](double x, double y) { return F.f(vec2(x, y), lambda) - 1.0; };
        for (const auto& sg : contour(g, 0.0, -w, w, -w, w, 300, 300)) svg.segment(sg.a, sg.b, "#08306b", 0.8);
    }
    svg.save(s.str("svg"));

    if (!s.str("out").empty()) {
        Output out(s.str("out"));
        CsvWriter csv(out.stream(), {"x", "y", "count"});
        for (int r = 0; r < res; ++r)
            for (int c = 0; c < res; ++c)
                csv.row(std::vector<double>{-w + (c + 0.5) * px, w - (r + 0.5) * px,
                                            static_cast<double>(counts[static_cast<std::size_t>(r * res + c)])});
    }
    std::vector<std::string> h;
    for (const auto& [k, v] : hist) h.push_back((k < 0 ? std::string("degenerate") : std::to_string(k)) + ":" + std::to_string(v));
    std::cerr << "confocal-count: pixels by count " << join(h, " ") << "\n";
    return 0;
}

int finish_geodesic(const GeoRun& r, const char* who)
{
    std::cerr << who << ": " << r.states.size() << " states, arclength " << r.param.back() << ", status "
              << geo_status_name(r.status) << "\n";
    if (r.status == GeoStatus::StepUnderflow) {
        std::cerr << who << ": " << r.message << "\n";
        return kExitNumeric;
    }
    return 0;
}

// Geodesic on the ellipsoid with its integrals along the way.
int cmd_geodesic(const Scenario& s)
{
    const auto a2 = s.list("a");
    const auto tau = same_size(s, "tau", a2.size());
    const Quadric Q(a2, tau);
    const int n = Q.dim();
    StepOptions opt;
    opt.tol = s.number("tol");
    const GeoRun r = integrate_quadric_geodesic(Q, {to_vec(same_size(s, "x0", a2.size())), to_vec(same_size(s, "v0", a2.size()))},
                                                s.number("length"), opt);
    Output out(s.str("out"));
    std::vector<std::string> cols{"s"};
    for (const auto& c : labels("x", n)) cols.push_back(c);
    for (const auto& c : labels("v", n)) cols.push_back(c);
    for (const auto& c : labels("F", n)) cols.push_back(c);
    cols.insert(cols.end(), {"J", "energy"});
    CsvWriter csv(out.stream(), cols);
    const long every = std::max(1L, s.integer("every"));
    for (std::size_t i = 0; i < r.states.size(); ++i) {
        if (i % static_cast<std::size_t>(every) != 0 && i + 1 != r.states.size()) continue;
        const auto& st = r.states[i];
        std::vector<double> row{r.param[i]};
        append(row, st.x);
        append(row, st.v);
        for (double f : integrals_F(Q, st.x, st.v)) row.push_back(f);
        row.push_back(joachimsthal(Q, st.x, st.v));
        row.push_back(quad(Q.metric(), st.v));
        csv.row(row);
    }
    return finish_geodesic(r, "geodesic");
}

// Geodesic on a surface of revolution in Minkowski 3-space.
int cmd_revolution(const Scenario& s)
{
    const std::vector<double> coeffs = s.str("coeffs").empty() ? std::vector<double>{} : s.list("coeffs");
    const RevolutionSurface S = RevolutionSurface::from_name(s.str("profile"), coeffs);
    const Metric m = RevolutionSurface::metric();
    GeoState st = S.state(s.number("phi0"), s.number("z0"), s.number("vz"), s.number("vphi"));
    const double q = quad(m, st.v);
    if (s.integer("unit") != 0 && classify(m, st.v) != CausalClass::LightLike) st.v /= std::sqrt(std::abs(q));
    StepOptions opt;
    opt.tol = s.number("tol");
    const GeoRun r = integrate_revolution_geodesic(S, st, s.number("length"), opt);

    Output out(s.str("out"));
    CsvWriter csv(out.stream(), {"s", "x", "y", "z", "vx", "vy", "vz", "r", "m", "clairaut", "meridian_angle"});
    const long every = std::max(1L, s.integer("every"));
    for (std::size_t i = 0; i < r.states.size(); ++i) {
        if (i % static_cast<std::size_t>(every) != 0 && i + 1 != r.states.size()) continue;
        const auto& g = r.states[i];
        std::vector<double> row{r.param[i]};
        append(row, g.x);
        append(row, g.v);
        row.push_back(std::hypot(g.x(0), g.x(1)));
        row.push_back(angular_momentum(g.x, g.v));
        row.push_back(clairaut_invariant(S, g.x, g.v));
        row.push_back(meridian_angle(S, g.x, g.v));
        csv.row(row);
    }
    std::cerr << "revolution: start is " << class_name(classify(m, st.v)) << "\n";
    return finish_geodesic(r, "revolution");
}

int cmd_diameters(const Scenario& s)
{
    const auto a2 = s.list("a");
    const auto tau = same_size(s, "tau", a2.size());
    const int n = static_cast<int>(a2.size());
    Vec d(n);
    for (int i = 0; i < n; ++i) {
        if (a2[static_cast<std::size_t>(i)] <= 0.0) throw ConfigError("'a' entries must be positive");
        d(i) = 1.0 / a2[static_cast<std::size_t>(i)];
    }
    Mat C = d.asDiagonal();
    if (s.integer("rotate") != 0) {
        auto g = kernels::item_rng(s.seed("seed"), 0);
        std::uniform_real_distribution<double> U(-1.0, 1.0);
        Eigen::HouseholderQR<Mat> qr(Mat::NullaryExpr(n, n, [&]() { return U(g); }));
        const Mat R = qr.householderQ();
        C = R.transpose() * C * R;
        C = 0.5 * (C + C.transpose()).eval();
    }
    const Metric m = Metric::diagonal(tau);
    const DiameterSearch ds = find_diameters(C, m, static_cast<int>(s.integer("pairs")), s.seed("seed"));

    Output out(s.str("out"));
    std::vector<std::string> cols{"f"};
    for (const auto& c : labels("x", n)) cols.push_back(c);
    for (const auto& c : labels("y", n)) cols.push_back(c);
    cols.insert(cols.end(), {"ortho_x", "ortho_y", "gradient", "class"});
    CsvWriter csv(out.stream(), cols);
    for (const auto& dm : ds.diameters) {
        std::vector<std::string> row{format_number(dm.f)};
        for (Eigen::Index i = 0; i < n; ++i) row.push_back(format_number(dm.x(i)));
        for (Eigen::Index i = 0; i < n; ++i) row.push_back(format_number(dm.y(i)));
        row.insert(row.end(), {format_number(dm.ortho_x), format_number(dm.ortho_y), format_number(dm.grad_norm),
                               class_name(dm.cls)});
        csv.row(row);
    }
    std::cerr << "diameters: " << ds.count(CausalClass::SpaceLike) << " space-like (at least " << m.positive()
              << "), " << ds.count(CausalClass::TimeLike) << " time-like (at least " << m.negative() << "), "
              << ds.light_like.size() << " light-like excluded, " << ds.failed_seeds << " seeds failed\n";
    return 0;
}

// Envelope of the metric normals of a planar ellipse.
int cmd_caustic(const Scenario& s)
{
    const auto a2 = same_size(s, "a", 2);
    const auto tau = same_size(s, "tau", 2);
    const Metric m = Metric::diagonal(tau);
    const Boundary B = Boundary::ellipsoid(m, a2);
    const double ax = std::sqrt(a2[0]), ay = std::sqrt(a2[1]);
    auto q = [ax, ay](double t) { return vec2(ax * std::cos(t), ay * std::sin(t)); };
    const int N = static_cast<int>(s.integer("points"));
    if (N < 4) throw ConfigError("'points' must be at least 4");

    std::vector<std::vector<Vec>> branches(1);
    std::vector<double> ts_ok;
    int skipped = 0;
    for (int i = 0; i < N; ++i) {
        const double t = 2.0 * kPi * i / N;
        try {
            const Vec p = caustic_envelope(B, q, {t}).front();
            branches.back().push_back(p);
            ts_ok.push_back(t);
        } catch (const NumericError&) {
            ++skipped;
            if (!branches.back().empty()) branches.emplace_back();
        }
    }
    const double L = s.number("extent") > 0.0 ? s.number("extent") : 2.5 * std::max(ax, ay);
    Svg svg(640, 640, -L, L, -L, L);
    svg.rect(-L, -L, L, L, "#ffffff");
    const int normals = static_cast<int>(s.integer("normals"));
    for (int i = 0; i < normals; ++i) {
        const double t = 2.0 * kPi * (i + 0.5) / normals;
        const Vec p = q(t);
        Vec nu = sharp(m, B.gradient(p));
        nu /= nu.norm();
        svg.segment(p - 3.0 * L * nu, p + 3.0 * L * nu, "#c7c7c7", 0.6);
    }
    std::vector<Vec> ellipse;
    for (int i = 0; i < 400; ++i) ellipse.push_back(q(2.0 * kPi * i / 400));
    svg.polyline(ellipse, "#000000", 1.5, true);
    for (const auto& br : branches) {
        std::vector<Vec> clipped;
        for (const Vec& p : br) {
            if (p.cwiseAbs().maxCoeff() <= L) {
                clipped.push_back(p);
            } else if (clipped.size() > 1) {
                svg.polyline(clipped, "#d62728", 1.5);
                clipped.clear();
            } else {
                clipped.clear();
            }
        }
        if (clipped.size() > 1) svg.polyline(clipped, "#d62728", 1.5);
    }
    svg.save(s.str("svg"));
    if (!s.str("out").empty()) {
        Output out(s.str("out"));
        CsvWriter csv(out.stream(), {"t", "x", "y"});
        std::size_t k = 0;
        for (const auto& br : branches)
            for (const Vec& p : br) csv.row(std::vector<double>{ts_ok[k++], p(0), p(1)});
    }
    std::cerr << "caustic: " << ts_ok.size() << " envelope points, " << skipped << " where the normal family does not turn\n";
    return 0;
}

// Scaling of the eigenvalues of the 3-D line-space form against r2.
int cmd_eigen_sweep(const Scenario& s)
{
    const double lo = s.number("r2-min"), hi = s.number("r2-max");
    const int count = static_cast<int>(s.integer("count"));
    if (lo <= 0.0 || hi <= lo || count < 2) throw ConfigError("need 0 < r2-min < r2-max and count >= 2");
    std::vector<double> r2;
    for (int i = 0; i < count; ++i) r2.push_back(lo * std::pow(hi / lo, static_cast<double>(i) / (count - 1)));
    const double phi = s.number("phi");
    const auto pairs = omega3_eigen_scaling(phi, r2);
    Output out(s.str("out"));
    CsvWriter csv(out.stream(), {"r2", "small", "large", "a_closed", "b_closed"});
    for (std::size_t i = 0; i < r2.size(); ++i) {
        const CharCoeffs c = omega3_char_closed(phi, r2[i]);
        csv.row(std::vector<double>{r2[i], pairs[i].small, pairs[i].large, c.a, c.b});
    }
    return 0;
}

int cmd_checks(const Scenario& s)
{
    verify::Options o;
    o.seed = s.seed("seed");
    o.parallel = s.integer("parallel") != 0;
    std::vector<verify::Criterion> cs;
    for (const auto& fn : verify::all()) {
        const auto t0 = std::chrono::steady_clock::now();
        cs.push_back(fn(o));
        const double dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
        std::cerr << verify::format(cs.back()) << " (" << dt << "s)\n";
    }
    if (!s.str("out").empty()) {
        Output out(s.str("out"));
        CsvWriter csv(out.stream(), {"id", "title", "pass", "unattainable", "details"});
        for (const auto& c : cs)
            csv.row(std::vector<std::string>{std::to_string(c.id), c.title, c.pass ? "1" : "0",
                                             c.unattainable ? "1" : "0", join(c.details, "; ")});
    }
    const int code = verify::exit_code(cs);
    return code == 0 ? 0 : 4;
}

std::vector<Command> commands()
{
    const Param out{"out", "-", "CSV output path, - for stdout"};
    const Param out_opt{"out", "", "optional CSV output path, - for stdout"};
    const Param seed{"seed", "20240601", "64-bit seed for randomized parts"};
    return {
        {"billiard", "Billiard in an ellipsoid of a pseudo-Euclidean space",
         {{"a", "4,1", "squared semi-axes a_i^2"},
          {"tau", "1,-1", "metric signs"},
          {"x0", "0.3,0.1", "start point inside the table"},
          {"v0", "1,0.3", "start direction"},
          {"bounces", "50", "number of reflections"},
          out,
          seed},
         cmd_billiard},
        {"circle-phase", "SVG of the level curves of the circle-billiard integral",
         {{"grid", "200", "contouring grid per axis"},
          {"levels", "-4,-1,-0.6,-0.5,-0.3,0.3,0.5,0.6,1,4", "lambda levels, num = lambda den"},
          {"orbit", "0.3,2.0", "start chord (t1,t2) for the overlaid orbit"},
          {"orbit-steps", "0", "iterates to overlay, 0 for none"},
          {"svg", "circle_phase.svg", "SVG output path"},
          out_opt,
          seed},
         cmd_circle_phase},
        {"confocal-count", "Raster of the number of family members through each point",
         {{"n", "2", "dimension, must be 2"},
          {"a", "1,1", "a_i^2"},
          {"tau", "1,-1", "metric signs"},
          {"window", "3", "half-width of the square window"},
          {"res", "300", "pixels per side"},
          {"members", "-3,-2.5,-2,-1.5,-0.5,0,0.5,1.5,2,2.5,3", "members lambda drawn over the raster"},
          {"svg", "confocal_count.svg", "SVG output path"},
          out_opt,
          seed},
         cmd_confocal_count},
        {"geodesic", "Geodesic on an ellipsoid with the integrals F_k and J",
         {{"a", "1,2,3", "a_i^2"},
          {"tau", "1,1,-1", "metric signs"},
          {"x0", "0.6,0.9,0.9", "start point, projected onto the quadric"},
          {"v0", "0.2,-0.3,0.1", "start velocity, projected onto the tangent space"},
          {"length", "10", "requested arclength"},
          {"tol", "1e-10", "local error target"},
          {"every", "1", "write every k-th state"},
          out,
          seed},
         cmd_geodesic},
        {"revolution", "Geodesic on a surface of revolution in dx^2+dy^2-dz^2",
         {{"profile", "sine", "sine, cylinder or polynomial"},
          {"coeffs", "", "profile coefficients (cylinder radius, sine base, polynomial c0,c1,...)"},
          {"phi0", "0", "start azimuth"},
          {"z0", "4.712", "start height"},
          {"vz", "0.5", "meridian speed"},
          {"vphi", "1.3", "parallel speed"},
          {"unit", "1", "rescale to |<v,v>| = 1 unless light-like"},
          {"length", "50", "requested arclength"},
          {"tol", "1e-10", "local error target"},
          {"every", "1", "write every k-th state"},
          out,
          seed},
         cmd_revolution},
        {"diameters", "Critical chords of <x-y,x-y>/2 on an ellipsoid",
         {{"a", "4,1", "a_i^2"},
          {"tau", "1,-1", "metric signs"},
          {"pairs", "50", "random seed pairs"},
          {"rotate", "0", "apply a random rotation to the ellipsoid"},
          out,
          seed},
         cmd_diameters},
        {"caustic", "Envelope of the normal lines of a planar ellipse",
         {{"a", "1,1", "a_i^2"},
          {"tau", "1,-1", "metric signs"},
          {"points", "720", "envelope samples"},
          {"normals", "60", "normal lines drawn"},
          {"extent", "0", "half-width of the window, 0 for automatic"},
          {"svg", "caustic.svg", "SVG output path"},
          out_opt,
          seed},
         cmd_caustic},
        {"eigen-sweep", "Eigenvalue scaling of the 3-D line-space form",
         {{"phi", "0.5", "angle parameter phi"},
          {"r2-min", "10", "smallest r2"},
          {"r2-max", "10000", "largest r2"},
          {"count", "13", "log-spaced samples"},
          out,
          seed},
         cmd_eigen_sweep},
        {"checks", "Run the full invariant suite", {{"parallel", "1", "use the OpenMP kernels"}, out_opt, seed},
         cmd_checks},
    };
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Pseudo-Euclidean billiards and geodesics"};
    app.require_subcommand(1);
    const auto cmds = commands();
    std::map<std::string, std::map<std::string, std::string>> storage;
    std::map<std::string, std::map<std::string, CLI::Option*>> opts;
    std::map<std::string, std::string> config_path;
    std::map<std::string, CLI::App*> subs;
    for (const auto& c : cmds) {
        CLI::App* sub = app.add_subcommand(c.name, c.help);
        subs[c.name] = sub;
        sub->add_option("--config", config_path[c.name], "key = value file; flags override it");
        for (const auto& p : c.params)
            opts[c.name][p.key] = sub->add_option("--" + p.key, storage[c.name][p.key], p.help + " [" + p.fallback + "]");
    }
    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e);
    }

    for (const auto& c : cmds) {
        if (!subs[c.name]->parsed()) continue;
        try {
            std::vector<std::string> known;
            std::map<std::string, std::string> defaults, flags;
            for (const auto& p : c.params) {
                known.push_back(p.key);
                defaults[p.key] = p.fallback;
                if (opts[c.name][p.key]->count() > 0) flags[p.key] = storage[c.name][p.key];
            }
            ConfigFile file;
            if (!config_path[c.name].empty()) file = parse_config(config_path[c.name], known);
            for (const auto& w : file.warnings) std::cerr << "warning: " << w << "\n";
            return c.run(resolve(c.name, defaults, file, flags));
        } catch (const ConfigError& e) {
            std::cerr << c.name << ": " << e.what() << "\n";
            return kExitConfig;
        } catch (const std::invalid_argument& e) {
            std::cerr << c.name << ": " << e.what() << "\n";
            return kExitConfig;
        } catch (const NumericError& e) {
            std::cerr << c.name << ": " << kind_name(e.kind()) << ": " << e.what() << "\n";
            return kExitNumeric;
        } catch (const std::exception& e) {
            std::cerr << c.name << ": " << e.what() << "\n";
            return kExitNumeric;
        }
    }
    return 1;
}
