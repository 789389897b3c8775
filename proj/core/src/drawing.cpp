#include "gdmorph/drawing.hpp"

#include <algorithm>
#include <limits>

#include "gdmorph/errors.hpp"

namespace gdmorph {

namespace {

struct Box {
    double min_x, max_x, min_y, max_y;
    double width() const { return max_x - min_x; }
    double height() const { return max_y - min_y; }
    double long_side() const { return std::max(width(), height()); }
};

Box bounding_box(const std::vector<Vec2>& pts) {
    Box b{std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity(),
          std::numeric_limits<double>::infinity(), -std::numeric_limits<double>::infinity()};
    for (const auto& p : pts) {
        b.min_x = std::min(b.min_x, p.x);
        b.max_x = std::max(b.max_x, p.x);
        b.min_y = std::min(b.min_y, p.y);
        b.max_y = std::max(b.max_y, p.y);
    }
    return b;
}

// The transform maps the long-axis extremes to exactly 0 and 1; the
// short axis gets a centering offset that can differ by an ulp when
// recomputed from transformed coordinates. Detecting "already
// normalized" with a small tolerance (and clamping, which is itself
// idempotent) makes repeated normalization bitwise stable.
bool already_normalized(const Box& b, double tol) {
    const bool x_long = b.width() >= b.height();
    const double lo_long = x_long ? b.min_x : b.min_y;
    const double hi_long = x_long ? b.max_x : b.max_y;
    const double lo_short = x_long ? b.min_y : b.min_x;
    const double short_side = x_long ? b.height() : b.width();
    return std::abs(lo_long) <= tol && std::abs(hi_long - 1.0) <= tol &&
           std::abs(lo_short - (1.0 - short_side) / 2.0) <= tol;
}

double clamp01(double v) { return std::min(1.0, std::max(0.0, v)); }

}  // namespace

Drawing normalize(const Drawing& d) {
    if (d.pts.empty()) {
        throw input_error("cannot normalize an empty drawing");
    }
    const Box b = bounding_box(d.pts);
    const double len = b.long_side();
    if (len <= 0.0) {
        throw input_error("degenerate drawing: all nodes coincide");
    }
    Drawing out;
    out.pts.reserve(d.pts.size());
    if (already_normalized(b, 1e-12)) {
        for (const auto& p : d.pts) {
            out.pts.push_back({clamp01(p.x), clamp01(p.y)});
        }
        return out;
    }
    const bool x_long = b.width() >= b.height();
    const double off_x = x_long ? 0.0 : (1.0 - b.width() / len) / 2.0;
    const double off_y = x_long ? (1.0 - b.height() / len) / 2.0 : 0.0;
    for (const auto& p : d.pts) {
        out.pts.push_back({clamp01((p.x - b.min_x) / len + off_x),
                           clamp01((p.y - b.min_y) / len + off_y)});
    }
    return out;
}

bool is_normalized(const Drawing& d, double tol) {
    if (d.pts.empty()) {
        return false;
    }
    for (const auto& p : d.pts) {
        if (p.x < -tol || p.x > 1.0 + tol || p.y < -tol || p.y > 1.0 + tol) {
            return false;
        }
    }
    return true;
}

}  // namespace gdmorph
