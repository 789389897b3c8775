#pragma once

#include <cmath>

namespace gdmorph {

struct Vec2 {
    double x = 0.0;
    double y = 0.0;
};

inline Vec2 operator+(Vec2 a, Vec2 b) { return {a.x + b.x, a.y + b.y}; }
inline Vec2 operator-(Vec2 a, Vec2 b) { return {a.x - b.x, a.y - b.y}; }
inline Vec2 operator*(double s, Vec2 a) { return {s * a.x, s * a.y}; }

inline double dot(Vec2 a, Vec2 b) { return a.x * b.x + a.y * b.y; }
inline double cross(Vec2 a, Vec2 b) { return a.x * b.y - a.y * b.x; }

inline double norm(Vec2 a) { return std::hypot(a.x, a.y); }
inline double distance(Vec2 a, Vec2 b) { return norm(a - b); }
inline double squared_distance(Vec2 a, Vec2 b) {
    const double dx = a.x - b.x;
    const double dy = a.y - b.y;
    return dx * dx + dy * dy;
}

/// Magnitudes of the orientation cross product below this are treated
/// as collinear. Coordinates live in [0,1]^2, so the cross product is
/// bounded by 2 and the threshold is effectively exact for random data.
constexpr double kCollinearTol = 1e-12;

/// Sign of the turn a->b->c: +1 counter-clockwise, -1 clockwise, 0 collinear.
inline int orientation(Vec2 a, Vec2 b, Vec2 c) {
    const double v = cross(b - a, c - a);
    if (v > kCollinearTol) return 1;
    if (v < -kCollinearTol) return -1;
    return 0;
}

/// Whether p lies inside the bounding box of [a, b]; used for the
/// collinear branches of the segment test.
inline bool in_box(Vec2 a, Vec2 b, Vec2 p) {
    return std::fmin(a.x, b.x) <= p.x && p.x <= std::fmax(a.x, b.x) &&
           std::fmin(a.y, b.y) <= p.y && p.y <= std::fmax(a.y, b.y);
}

/// Closed segment intersection test: touching endpoints and collinear
/// overlap both count as intersecting. Zero-length segments intersect
/// nothing.
inline bool segments_intersect(Vec2 a1, Vec2 a2, Vec2 b1, Vec2 b2) {
    if ((a1.x == a2.x && a1.y == a2.y) || (b1.x == b2.x && b1.y == b2.y)) {
        return false;
    }
    const int d1 = orientation(b1, b2, a1);
    const int d2 = orientation(b1, b2, a2);
    const int d3 = orientation(a1, a2, b1);
    const int d4 = orientation(a1, a2, b2);
    if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) &&
        ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0))) {
        return true;
    }
    if (d1 == 0 && in_box(b1, b2, a1)) return true;
    if (d2 == 0 && in_box(b1, b2, a2)) return true;
    if (d3 == 0 && in_box(a1, a2, b1)) return true;
    if (d4 == 0 && in_box(a1, a2, b2)) return true;
    return false;
}

}  // namespace gdmorph
