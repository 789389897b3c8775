#include <algorithm>
#include <memory>
#include <vector>

#include <doctest.h>

#include "gdmorph/distance_matrix.hpp"
#include "gdmorph/errors.hpp"
#include "gdmorph/generators.hpp"
#include "gdmorph/metric_state.hpp"
#include "gdmorph/metrics.hpp"
#include "gdmorph/rng.hpp"
#include "testutil.hpp"

using namespace gdmorph;
using testutil::random_connected_graph;
using testutil::random_drawing;

namespace {

double full_value(MetricId id, const Graph& g, const Drawing& d, const DistanceMatrix& dist) {
    return evaluate(std::span(&id, 1), g, d, dist)[0];
}

// Move `count` random nodes of `d` to fresh uniform positions; returns
// the sorted list of moved rows.
std::vector<int> move_random(Drawing& d, int count, Rng& rng) {
    std::vector<int> moved;
    while (static_cast<int>(moved.size()) < count) {
        const int v = rng.uniform_int(0, d.size() - 1);
        if (std::find(moved.begin(), moved.end(), v) == moved.end()) {
            moved.push_back(v);
        }
    }
    for (int v : moved) {
        d.pts[v] = {rng.uniform(), rng.uniform()};
    }
    std::sort(moved.begin(), moved.end());
    return moved;
}

}  // namespace

TEST_SUITE("metric-state") {

TEST_CASE("incremental states track full evaluation through single moves") {
    Rng rng(808);
    const int n = 24;
    const Graph g = random_connected_graph(n, n, rng);
    const DistanceMatrix dist = shortest_paths(g);

    for (MetricId id : kAllMetrics) {
        CAPTURE(to_string(id));
        Drawing d = random_drawing(n, rng);
        auto state = make_metric_state(id, g, d, dist);
        CHECK_NEAR(state->value(), full_value(id, g, d, dist), 1e-12);

        for (int step = 0; step < 1000; ++step) {
            Drawing after = d;
            const std::vector<int> moved = move_random(after, 1, rng);
            const double previewed = state->preview(after, moved);
            CHECK_NEAR(previewed, full_value(id, g, after, dist), 1e-9);
            state->commit(after, moved);
            CHECK_NEAR(state->value(), previewed, 1e-12);
            d = after;
        }
    }
}

TEST_CASE("incremental states track full evaluation through subset moves") {
    Rng rng(809);
    const int n = 30;
    const Graph g = random_connected_graph(n, 2 * n, rng);
    const DistanceMatrix dist = shortest_paths(g);

    for (MetricId id : kAllMetrics) {
        CAPTURE(to_string(id));
        Drawing d = random_drawing(n, rng);
        auto state = make_metric_state(id, g, d, dist);
        for (int step = 0; step < 300; ++step) {
            Drawing after = d;
            const std::vector<int> moved = move_random(after, rng.uniform_int(1, n / 3), rng);
            const double previewed = state->preview(after, moved);
            CHECK_NEAR(previewed, full_value(id, g, after, dist), 1e-9);
            state->commit(after, moved);
            d = after;
        }
        CHECK_NEAR(state->value(), full_value(id, g, d, dist), 1e-9);
    }
}

TEST_CASE("preview does not mutate the state") {
    Rng rng(810);
    const int n = 16;
    const Graph g = random_connected_graph(n, n, rng);
    const DistanceMatrix dist = shortest_paths(g);
    for (MetricId id : kAllMetrics) {
        Drawing d = random_drawing(n, rng);
        auto state = make_metric_state(id, g, d, dist);
        const double before = state->value();
        Drawing after = d;
        const std::vector<int> moved = move_random(after, 3, rng);
        const double p1 = state->preview(after, moved);
        const double p2 = state->preview(after, moved);
        CHECK(p1 == p2);
        CHECK(state->value() == before);
    }
}

TEST_CASE("a drifted unmoved row is reported as a logic error") {
    Rng rng(811);
    const int n = 12;
    const Graph g = random_connected_graph(n, 4, rng);
    const DistanceMatrix dist = shortest_paths(g);
    Drawing d = random_drawing(n, rng);
    auto state = make_metric_state(MetricId::ST, g, d, dist);

    Drawing after = d;
    after.pts[3].x += 0.01;  // changed...
    const int moved[] = {7};  // ...but not declared
    CHECK_THROWS_AS(state->preview(after, moved), std::logic_error);
}

TEST_CASE("crossing state honours the shared-endpoint exemption") {
    // Diagonals from node 0: crossings with its incident edges are
    // exempt no matter how the picture moves.
    const Graph g(5, {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {1, 3}, {2, 4}});
    Rng rng(812);
    Drawing d = random_drawing(5, rng);
    const DistanceMatrix dist = shortest_paths(g);
    auto state = make_metric_state(MetricId::CN, g, d, dist);
    for (int step = 0; step < 200; ++step) {
        Drawing after = d;
        const std::vector<int> moved = move_random(after, 2, rng);
        CHECK(state->preview(after, moved) == crossing_number(g, after));
        state->commit(after, moved);
        d = after;
    }
}

TEST_CASE("states report their metric id and refuse impossible inputs") {
    Rng rng(813);
    const Graph g = random_connected_graph(10, 5, rng);
    const DistanceMatrix dist = shortest_paths(g);
    const Drawing d = random_drawing(10, rng);
    for (MetricId id : kAllMetrics) {
        CHECK(make_metric_state(id, g, d, dist)->id() == id);
    }

    // Angular state over a graph with no degree-2 node is undefined
    // from the start.
    const Graph single(2, {{0, 1}});
    Drawing two;
    two.pts = {{0, 0}, {1, 1}};
    const DistanceMatrix dist2 = shortest_paths(single);
    CHECK_THROWS_AS(make_metric_state(MetricId::AR, single, two, dist2), input_error);
}

}  // TEST_SUITE
