#pragma once

#include <vector>

#include "gdmorph/geometry.hpp"

namespace gdmorph {

/// Straight-line drawing: one 2-D position per node, row k = node k.
struct Drawing {
    std::vector<Vec2> pts;

    int size() const { return static_cast<int>(pts.size()); }
};

/// Translate and uniformly scale into the unit square: the longer
/// bounding-box side spans exactly [0, 1] and the shorter side is
/// centered. Uniform scaling keeps crossings, angles and (scale-free)
/// stress unchanged. Idempotent bit-for-bit: a drawing that is already
/// normalized is returned unchanged.
/// Throws input_error if all points coincide.
Drawing normalize(const Drawing& d);

/// True if the coordinates satisfy the normalize postcondition (within
/// `tol` of it); morph requires this of its start drawing.
bool is_normalized(const Drawing& d, double tol = 1e-9);

}  // namespace gdmorph
