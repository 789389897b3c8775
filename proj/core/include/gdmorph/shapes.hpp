#pragma once

#include <array>
#include <span>
#include <string>
#include <vector>

#include "gdmorph/geometry.hpp"

namespace gdmorph {

enum class ShapeLabel { X, Vert, Hor, O, Dino, Grid, Custom };

// The six generated shapes, in display order.
inline constexpr std::array<ShapeLabel, 6> kBuiltinShapes = {
    ShapeLabel::X,    ShapeLabel::Vert, ShapeLabel::Hor,
    ShapeLabel::O,    ShapeLabel::Dino, ShapeLabel::Grid,
};

std::string to_string(ShapeLabel label);
ShapeLabel shape_from_string(const std::string& name);  // case-insensitive; throws on unknown

// Number of parallel lines making up VERT/HOR and where they sit. The
// values are a presentation choice, not derived from anything; change
// them here if a different look is wanted.
inline constexpr std::array<double, 3> kLineOffsets = {0.1, 0.5, 0.9};

struct TargetShape {
    std::vector<Vec2> points;  // all inside [0,1]^2
    ShapeLabel label = ShapeLabel::Custom;

    int size() const { return static_cast<int>(points.size()); }
};

// Deterministically generate `n` points (n >= 4) for one of the six
// built-in shapes. Throws input_error for Custom or n < 4.
TargetShape generate(ShapeLabel label, int n);

// Read an x,y CSV and normalize it into the unit box. The point count is
// whatever the file holds; the morph entry point enforces |Y| = |X|.
TargetShape load_target(const std::string& path);

// The embedded closed contour DINO is resampled from, in its raw
// (un-normalized) coordinates. Exposed so tests can reason about it.
std::span<const Vec2> dino_outline();

}  // namespace gdmorph
