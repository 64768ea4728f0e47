#include "peb/svg.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace peb {

Svg::Svg(double width, double height, double xmin, double xmax, double ymin, double ymax)
    : w_(width), h_(height), x0_(xmin), x1_(xmax), y0_(ymin), y1_(ymax)
{
    if (!(xmax > xmin) || !(ymax > ymin)) throw std::invalid_argument("svg: empty window");
}

double Svg::px(double x) const { return (x - x0_) / (x1_ - x0_) * w_; }
double Svg::py(double y) const { return (y1_ - y) / (y1_ - y0_) * h_; }

namespace {

std::string num(double x)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3f", x);
    return buf;
}

std::string escape(const std::string& s)
{
    std::string out;
    for (char c : s) {
        switch (c) {
        case '<': out += "&lt;"; break;
        case '>': out += "&gt;"; break;
        case '&': out += "&amp;"; break;
        case '"': out += "&quot;"; break;
        default: out += c;
        }
    }
    return out;
}

}  // namespace

void Svg::polyline(const std::vector<Vec>& pts, const std::string& stroke, double width, bool closed)
{
    if (pts.size() < 2) return;
    std::string d;
    for (std::size_t i = 0; i < pts.size(); ++i)
        d += (i ? " L" : "M") + num(px(pts[i](0))) + "," + num(py(pts[i](1)));
    if (closed) d += " Z";
    body_ += "<path d=\"" + d + "\" fill=\"none\" stroke=\"" + stroke + "\" stroke-width=\"" + num(width) + "\"/>\n";
}

void Svg::segment(const Vec& a, const Vec& b, const std::string& stroke, double width)
{
    body_ += "<line x1=\"" + num(px(a(0))) + "\" y1=\"" + num(py(a(1))) + "\" x2=\"" + num(px(b(0))) + "\" y2=\"" +
             num(py(b(1))) + "\" stroke=\"" + stroke + "\" stroke-width=\"" + num(width) + "\"/>\n";
}

void Svg::dot(const Vec& p, double radius, const std::string& fill)
{
    body_ += "<circle cx=\"" + num(px(p(0))) + "\" cy=\"" + num(py(p(1))) + "\" r=\"" + num(radius) + "\" fill=\"" +
             fill + "\"/>\n";
}

void Svg::rect(double x0, double y0, double x1, double y1, const std::string& fill)
{
    const double a = px(std::min(x0, x1)), b = py(std::max(y0, y1));
    body_ += "<rect x=\"" + num(a) + "\" y=\"" + num(b) + "\" width=\"" + num(std::abs(px(x1) - px(x0))) +
             "\" height=\"" + num(std::abs(py(y1) - py(y0))) + "\" fill=\"" + fill + "\"/>\n";
}

void Svg::text(const Vec& p, const std::string& s, double size)
{
    body_ += "<text x=\"" + num(px(p(0))) + "\" y=\"" + num(py(p(1))) + "\" font-size=\"" + num(size) +
             "\" font-family=\"sans-serif\">" + escape(s) + "</text>\n";
}

std::string Svg::str() const
{
    std::ostringstream os;
    os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n"
       << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << num(w_) << "\" height=\""
       << num(h_) << "\" viewBox=\"0 0 " << num(w_) << " " << num(h_) << "\">\n"
       << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n"
       << body_ << "</svg>\n";
    return os.str();
}

void Svg::save(const std::string& path) const
{
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("svg: cannot open " + path);
    f << str();
}

std::vector<Segment> contour(const std::function<double(double, double)>& g, double level, double x0, double x1,
                             double y0, double y1, int nx, int ny)
{
    if (nx < 1 || ny < 1) throw std::invalid_argument("contour: empty grid");
    std::vector<double> v(static_cast<std::size_t>((nx + 1) * (ny + 1)));
    auto X = [&](int i) { return x0 + (x1 - x0) * i / nx; };
    auto Y = [&](int j) { return y0 + (y1 - y0) * j / ny; };
    auto at = [&](int i, int j) -> double& { return v[static_cast<std::size_t>(j * (nx + 1) + i)]; };
    for (int j = 0; j <= ny; ++j)
        for (int i = 0; i <= nx; ++i) at(i, j) = g(X(i), Y(j)) - level;

    std::vector<Segment> out;
    for (int j = 0; j < ny; ++j)
        for (int i = 0; i < nx; ++i) {
            const double c[4] = {at(i, j), at(i + 1, j), at(i + 1, j + 1), at(i, j + 1)};
            const Vec p[4] = {vec2(X(i), Y(j)), vec2(X(i + 1), Y(j)), vec2(X(i + 1), Y(j + 1)), vec2(X(i), Y(j + 1))};
            bool finite = true;
            for (double q : c) finite = finite && std::isfinite(q);
            if (!finite) continue;
            std::vector<Vec> cuts;
            for (int e = 0; e < 4; ++e) {
                const double a = c[e], b = c[(e + 1) % 4];
                if ((a < 0) != (b < 0)) cuts.push_back(p[e] + (a / (a - b)) * (p[(e + 1) % 4] - p[e]));
            }
            if (cuts.size() == 2) out.push_back({cuts[0], cuts[1]});
            if (cuts.size() == 4) {
                // Saddle: pair cuts by the sign of the cell centre.
                const double mid = 0.25 * (c[0] + c[1] + c[2] + c[3]);
                if ((mid < 0) == (c[0] < 0)) {
                    out.push_back({cuts[0], cuts[3]});
                    out.push_back({cuts[1], cuts[2]});
                } else {
                    out.push_back({cuts[0], cuts[1]});
                    out.push_back({cuts[2], cuts[3]});
                }
            }
        }
    return out;
}

}  // namespace peb
