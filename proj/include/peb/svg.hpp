#pragma once

#include "peb/pseudo_linalg.hpp"

#include <functional>
#include <string>
#include <vector>

namespace peb {

// SVG 1.1 document over a world window; y points up.
class Svg {
public:
    Svg(double width, double height, double xmin, double xmax, double ymin, double ymax);

    void polyline(const std::vector<Vec>& pts, const std::string& stroke, double width = 1.0, bool closed = false);
    void segment(const Vec& a, const Vec& b, const std::string& stroke, double width = 1.0);
    void dot(const Vec& p, double radius, const std::string& fill);
    void rect(double x0, double y0, double x1, double y1, const std::string& fill);
    void text(const Vec& p, const std::string& s, double size = 12.0);

    std::string str() const;
    void save(const std::string& path) const;

private:
    double px(double x) const;
    double py(double y) const;

    double w_, h_, x0_, x1_, y0_, y1_;
    std::string body_;
};

struct Segment {
    Vec a;
    Vec b;
};

// Marching squares on samples of g over [x0,x1]x[y0,y1] with (nx+1)(ny+1) nodes.
std::vector<Segment> contour(const std::function<double(double, double)>& g, double level, double x0, double x1,
                             double y0, double y1, int nx, int ny);

}  // namespace peb
