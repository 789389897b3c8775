#include "gdmorph/shapes.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numbers>

#include "gdmorph/drawing.hpp"
#include "gdmorph/errors.hpp"
#include "gdmorph/io.hpp"

namespace gdmorph {

namespace {

// n points at equal arc-length steps around a closed polyline.
std::vector<Vec2> resample_closed(std::span<const Vec2> poly, int n) {
    const int k = static_cast<int>(poly.size());
    std::vector<double> seg(k);
    double perimeter = 0.0;
    for (int i = 0; i < k; ++i) {
        seg[i] = distance(poly[i], poly[(i + 1) % k]);
        perimeter += seg[i];
    }
    if (perimeter <= 0.0) {
        throw input_error("contour has zero length");
    }
    std::vector<Vec2> out;
    out.reserve(n);
    int s = 0;
    double seg_start = 0.0;
    for (int i = 0; i < n; ++i) {
        const double target = perimeter * i / n;
        while (s < k - 1 && seg_start + seg[s] <= target) {
            seg_start += seg[s];
            ++s;
        }
        const double t =
            seg[s] > 0.0 ? std::clamp((target - seg_start) / seg[s], 0.0, 1.0) : 0.0;
        const Vec2 a = poly[s];
        const Vec2 b = poly[(s + 1) % k];
        out.push_back({a.x + (b.x - a.x) * t, a.y + (b.y - a.y) * t});
    }
    return out;
}

std::vector<Vec2> circle_points(int n) {
    std::vector<Vec2> pts;
    pts.reserve(n);
    for (int k = 0; k < n; ++k) {
        const double angle = 2.0 * std::numbers::pi * k / n;
        pts.push_back({0.5 + 0.5 * std::cos(angle), 0.5 + 0.5 * std::sin(angle)});
    }
    return pts;
}

// Points alternate between the two diagonals of the unit square; each
// diagonal spreads its share evenly from corner to corner.
std::vector<Vec2> cross_points(int n) {
    std::vector<Vec2> pts;
    pts.reserve(n);
    const int counts[2] = {n - n / 2, n / 2};
    for (int j = 0; j < n; ++j) {
        const int d = j % 2;
        const int idx = j / 2;
        const double t = static_cast<double>(idx) / (counts[d] - 1);
        pts.push_back(d == 0 ? Vec2{t, t} : Vec2{t, 1.0 - t});
    }
    return pts;
}

// Round-robin over the parallel lines, spread evenly along each one.
// A line that ends up with a single point gets it at the midpoint.
std::vector<Vec2> line_points(int n, bool vertical) {
    const int lines = static_cast<int>(kLineOffsets.size());
    std::vector<Vec2> pts;
    pts.reserve(n);
    for (int j = 0; j < n; ++j) {
        const int l = j % lines;
        const int idx = j / lines;
        const int cnt = n / lines + (l < n % lines ? 1 : 0);
        const double along = cnt > 1 ? static_cast<double>(idx) / (cnt - 1) : 0.5;
        const double fixed = kLineOffsets[l];
        pts.push_back(vertical ? Vec2{fixed, along} : Vec2{along, fixed});
    }
    return pts;
}

std::vector<Vec2> grid_points(int n) {
    int k = static_cast<int>(std::ceil(std::sqrt(static_cast<double>(n))));
    while (k > 2 && (k - 1) * (k - 1) >= n) --k;
    while (k * k < n) ++k;
    std::vector<Vec2> pts;
    pts.reserve(n);
    for (int j = 0; j < n; ++j) {
        const int col = j % k;
        const int row = j / k;
        pts.push_back({static_cast<double>(col) / (k - 1), static_cast<double>(row) / (k - 1)});
    }
    return pts;
}

std::vector<Vec2> dino_points(int n) {
    const auto outline = dino_outline();
    Drawing contour;
    contour.pts.assign(outline.begin(), outline.end());
    return resample_closed(normalize(contour).pts, n);
}

}  // namespace

std::string to_string(ShapeLabel label) {
    switch (label) {
    case ShapeLabel::X: return "X";
    case ShapeLabel::Vert: return "VERT";
    case ShapeLabel::Hor: return "HOR";
    case ShapeLabel::O: return "O";
    case ShapeLabel::Dino: return "DINO";
    case ShapeLabel::Grid: return "GRID";
    case ShapeLabel::Custom: return "CUSTOM";
    }
    return "?";
}

ShapeLabel shape_from_string(const std::string& name) {
    std::string upper = name;
    std::transform(upper.begin(), upper.end(), upper.begin(),
                   [](unsigned char c) { return static_cast<char>(std::toupper(c)); });
    for (ShapeLabel label : kBuiltinShapes) {
        if (upper == to_string(label)) return label;
    }
    if (upper == "CUSTOM") return ShapeLabel::Custom;
    throw input_error("unknown shape label '" + name + "'");
}

TargetShape generate(ShapeLabel label, int n) {
    if (n < 4) {
        throw input_error("shape generation requires n >= 4, got " + std::to_string(n));
    }
    TargetShape shape;
    shape.label = label;
    switch (label) {
    case ShapeLabel::O: shape.points = circle_points(n); break;
    case ShapeLabel::X: shape.points = cross_points(n); break;
    case ShapeLabel::Vert: shape.points = line_points(n, true); break;
    case ShapeLabel::Hor: shape.points = line_points(n, false); break;
    case ShapeLabel::Grid: shape.points = grid_points(n); break;
    case ShapeLabel::Dino: shape.points = dino_points(n); break;
    case ShapeLabel::Custom:
        throw input_error("CUSTOM targets come from files; use load_target");
    }
    for (Vec2& p : shape.points) {
        p.x = std::clamp(p.x, 0.0, 1.0);
        p.y = std::clamp(p.y, 0.0, 1.0);
    }
    return shape;
}

TargetShape load_target(const std::string& path) {
    TargetShape shape;
    shape.label = ShapeLabel::Custom;
    shape.points = normalize(load_coords_csv(path)).pts;
    return shape;
}

}  // namespace gdmorph
