#include <cmath>
#include <vector>

#include <doctest.h>

#include <boost/multiprecision/cpp_int.hpp>

#include "gdmorph/distance_matrix.hpp"
#include "gdmorph/errors.hpp"
#include "gdmorph/metrics.hpp"
#include "gdmorph/rng.hpp"
#include "testutil.hpp"

using namespace gdmorph;
using testutil::random_connected_graph;
using testutil::random_drawing;

namespace {

using rational = boost::multiprecision::cpp_rational;

struct RVec {
    rational x, y;
};

int rsign(const rational& v) { return v == 0 ? 0 : (v > 0 ? 1 : -1); }

rational rcross(const RVec& o, const RVec& a, const RVec& b) {
    return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

bool rin_box(const RVec& a, const RVec& b, const RVec& p) {
    const rational lox = a.x < b.x ? a.x : b.x;
    const rational hix = a.x < b.x ? b.x : a.x;
    const rational loy = a.y < b.y ? a.y : b.y;
    const rational hiy = a.y < b.y ? b.y : a.y;
    return lox <= p.x && p.x <= hix && loy <= p.y && p.y <= hiy;
}

// Exact closed-segment intersection over rationals: the reference the
// floating-point predicate is checked against. Doubles convert to
// rationals losslessly, so this has no tolerance at all.
bool rsegments_intersect(Vec2 a1d, Vec2 a2d, Vec2 b1d, Vec2 b2d) {
    const RVec a1{rational(a1d.x), rational(a1d.y)};
    const RVec a2{rational(a2d.x), rational(a2d.y)};
    const RVec b1{rational(b1d.x), rational(b1d.y)};
    const RVec b2{rational(b2d.x), rational(b2d.y)};
    if ((a1.x == a2.x && a1.y == a2.y) || (b1.x == b2.x && b1.y == b2.y)) {
        return false;
    }
    const int d1 = rsign(rcross(b1, b2, a1));
    const int d2 = rsign(rcross(b1, b2, a2));
    const int d3 = rsign(rcross(a1, a2, b1));
    const int d4 = rsign(rcross(a1, a2, b2));
    if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) &&
        ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0))) {
        return true;
    }
    if (d1 == 0 && rin_box(b1, b2, a1)) return true;
    if (d2 == 0 && rin_box(b1, b2, a2)) return true;
    if (d3 == 0 && rin_box(a1, a2, b1)) return true;
    if (d4 == 0 && rin_box(a1, a2, b2)) return true;
    return false;
}

int exact_crossing_number(const Graph& g, const Drawing& d) {
    int count = 0;
    const auto& edges = g.edges();
    for (std::size_t e = 0; e < edges.size(); ++e) {
        for (std::size_t f = e + 1; f < edges.size(); ++f) {
            const auto& [a, b] = edges[e];
            const auto& [c, h] = edges[f];
            if (a == c || a == h || b == c || b == h) continue;  // shared endpoint
            if (rsegments_intersect(d.pts[a], d.pts[b], d.pts[c], d.pts[h])) ++count;
        }
    }
    return count;
}

// Literal transcription of the stress definition, written without
// reference to the production code: scale from the ratio of sums, then
// the mean squared relative gap.
double naive_stress(const Drawing& d, const DistanceMatrix& dist) {
    const int n = d.size();
    double num = 0.0, den = 0.0;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const double r = distance(d.pts[i], d.pts[j]);
            const double gd = dist(i, j);
            num += r / gd;
            den += (r * r) / (gd * gd);
        }
    }
    const double alpha = num / den;
    double total = 0.0;
    int pairs = 0;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const double r = distance(d.pts[i], d.pts[j]);
            const double gd = dist(i, j);
            const double gap = alpha * r - gd;
            total += (gap * gap) / (gd * gd);
            ++pairs;
        }
    }
    return total / pairs;
}

}  // namespace

TEST_SUITE("metrics") {

TEST_CASE("triangle stress fixture") {
    // K3 at (0,0), (1,0), (0,1): distances 1, 1, sqrt(2) against hop
    // distance 1 everywhere; working the scale through by hand gives
    // 0.0285955...
    const Graph g(3, {{0, 1}, {0, 2}, {1, 2}});
    Drawing d;
    d.pts = {{0, 0}, {1, 0}, {0, 1}};
    const DistanceMatrix dist = shortest_paths(g);
    CHECK_NEAR(stress(d, dist), 0.028595, 1e-5);
}

TEST_CASE("stress matches the naive transcription on random instances") {
    Rng rng(20260);
    for (int rep = 0; rep < 100; ++rep) {
        const int n = rng.uniform_int(2, 25);
        const Graph g = random_connected_graph(n, rng.uniform_int(0, n), rng);
        const Drawing d = random_drawing(n, rng);
        const DistanceMatrix dist = shortest_paths(g);
        CHECK_NEAR(stress(d, dist), naive_stress(d, dist), 1e-9);
    }
}

TEST_CASE("coincident node pair contributes its full relative gap") {
    // Two coincident nodes (r = 0) leave a (0 - d)^2 / d^2 = 1 term.
    const Graph g(3, {{0, 1}, {1, 2}});
    Drawing d;
    d.pts = {{0, 0}, {0, 0}, {1, 0}};
    const DistanceMatrix dist = shortest_paths(g);
    CHECK(std::isfinite(stress(d, dist)));
    CHECK_NEAR(stress(d, dist), naive_stress(d, dist), 1e-12);
}

TEST_CASE("stress rejects an all-coincident drawing") {
    const Graph g(2, {{0, 1}});
    Drawing d;
    d.pts = {{0.5, 0.5}, {0.5, 0.5}};
    const DistanceMatrix dist = shortest_paths(g);
    CHECK_THROWS_AS(stress(d, dist), input_error);
}

TEST_CASE("edge length deviation fixture") {
    // Path with drawn lengths 0.2 and 0.4: mean 0.3, population SD 0.1.
    const Graph g(3, {{0, 1}, {1, 2}});
    Drawing d;
    d.pts = {{0, 0}, {0.2, 0}, {0.6, 0}};
    CHECK_NEAR(edge_length_deviation(g, d), 0.1, 1e-15);
}

TEST_CASE("edge length deviation is zero for equal lengths") {
    const Graph g(3, {{0, 1}, {1, 2}});
    Drawing d;
    d.pts = {{0, 0}, {0.5, 0}, {1.0, 0}};
    CHECK_NEAR(edge_length_deviation(g, d), 0.0, 1e-15);
}

TEST_CASE("edge length deviation needs at least one edge") {
    const Graph g(2, {});
    Drawing d;
    d.pts = {{0, 0}, {1, 1}};
    CHECK_THROWS_AS(edge_length_deviation(g, d), input_error);
}

TEST_CASE("crossing number hand cases") {
    // Two crossing diagonals of a square, no shared endpoints.
    const Graph cross(4, {{0, 2}, {1, 3}});
    Drawing d;
    d.pts = {{0, 0}, {1, 0}, {1, 1}, {0, 1}};
    CHECK(crossing_number(cross, d) == 1);

    // Same picture but the segments share graph node 0: exempt.
    const Graph shared(3, {{0, 1}, {0, 2}});
    Drawing s;
    s.pts = {{0, 0}, {1, 0}, {0, 1}};
    CHECK(crossing_number(shared, s) == 0);

    // An endpoint resting on another segment counts.
    const Graph touch(4, {{0, 1}, {2, 3}});
    Drawing t;
    t.pts = {{0, 0}, {1, 0}, {0.5, 0}, {0.5, 1}};
    CHECK(crossing_number(touch, t) == 1);

    // Collinear overlap counts once.
    Drawing o;
    o.pts = {{0, 0}, {1, 0}, {0.5, 0}, {1.5, 0}};
    CHECK(crossing_number(touch, o) == 1);

    // A zero-length segment crosses nothing, even sitting on an edge.
    const Graph degen(4, {{0, 1}, {2, 3}});
    Drawing z;
    z.pts = {{0, 0}, {1, 0}, {0.5, 0}, {0.5, 0}};
    CHECK(crossing_number(degen, z) == 0);
}

TEST_CASE("crossing number matches exact rational arithmetic") {
    Rng rng(31337);
    for (int rep = 0; rep < 200; ++rep) {
        const int n = rng.uniform_int(4, 20);
        const Graph g = random_connected_graph(n, rng.uniform_int(0, 2 * n), rng);
        const Drawing d = random_drawing(n, rng);
        CHECK(crossing_number(g, d) == exact_crossing_number(g, d));
    }
}

TEST_CASE("right angle at a degree-2 node scores one half") {
    // Ideal spacing for degree 2 is pi; a right angle falls short by
    // half of that: |(pi - pi/2) / pi| = 0.5.
    const Graph g(3, {{0, 1}, {1, 2}});
    Drawing d;
    d.pts = {{1, 0}, {0, 0}, {0, 1}};
    CHECK_NEAR(angular_resolution(g, d), 0.5, 1e-12);
}

TEST_CASE("evenly spread edges have zero angular deviation") {
    const Graph g(4, {{0, 1}, {0, 2}, {0, 3}});
    Drawing d;
    const double r = 0.4;
    d.pts = {{0.5, 0.5}};
    for (int k = 0; k < 3; ++k) {
        const double a = 2.0 * 3.14159265358979323846 * k / 3.0;
        d.pts.push_back({0.5 + r * std::cos(a), 0.5 + r * std::sin(a)});
    }
    CHECK_NEAR(angular_resolution(g, d), 0.0, 1e-9);
}

TEST_CASE("angular resolution averages only nodes of degree two or more") {
    // Path 0-1-2-3 drawn with a right angle at node 1 and a straight
    // pass-through at node 2: mean of 0.5 and 0.
    const Graph g(4, {{0, 1}, {1, 2}, {2, 3}});
    Drawing d;
    d.pts = {{0, 1}, {0, 0}, {1, 0}, {2, 0}};
    CHECK_NEAR(angular_resolution(g, d), 0.25, 1e-12);
}

TEST_CASE("angular resolution error cases") {
    // A zero-length incident edge has no direction.
    const Graph g(3, {{0, 1}, {1, 2}});
    Drawing z;
    z.pts = {{0, 0}, {0, 0}, {1, 0}};
    CHECK_THROWS_AS(angular_resolution(g, z), input_error);

    // No node of degree >= 2: the mean is over an empty set.
    const Graph single(2, {{0, 1}});
    Drawing d;
    d.pts = {{0, 0}, {1, 0}};
    CHECK_THROWS_AS(angular_resolution(single, d), input_error);
}

TEST_CASE("angular resolution stays within [0, 1]") {
    Rng rng(555);
    for (int rep = 0; rep < 50; ++rep) {
        const int n = rng.uniform_int(3, 15);
        const Graph g = random_connected_graph(n, rng.uniform_int(1, n), rng);
        const Drawing d = random_drawing(n, rng);
        const double ar = angular_resolution(g, d);
        CHECK(ar >= 0.0);
        CHECK(ar <= 1.0);
    }
}

TEST_CASE("metric names round trip") {
    for (MetricId id : kAllMetrics) {
        CHECK(metric_from_string(to_string(id)) == id);
    }
    CHECK(to_string(MetricId::ST) == "ST");
    CHECK(to_string(MetricId::ELD) == "ELD");
    CHECK(to_string(MetricId::CN) == "CN");
    CHECK(to_string(MetricId::AR) == "AR");
    CHECK_THROWS_AS(metric_from_string("XY"), input_error);
}

TEST_CASE("evaluate keeps the caller's metric order") {
    const Graph g(3, {{0, 1}, {0, 2}, {1, 2}});
    Drawing d;
    d.pts = {{0, 0}, {1, 0}, {0, 1}};
    const DistanceMatrix dist = shortest_paths(g);
    const MetricId order[] = {MetricId::AR, MetricId::ST};
    const std::vector<double> v = evaluate(order, g, d, dist);
    REQUIRE(v.size() == 2);
    CHECK(v[0] == angular_resolution(g, d));
    CHECK(v[1] == stress(d, dist));
}

}  // TEST_SUITE
