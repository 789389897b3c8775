#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include <doctest.h>

#include "gdmorph/errors.hpp"
#include "gdmorph/rng.hpp"
#include "gdmorph/similarity.hpp"
#include "testutil.hpp"

using namespace gdmorph;

namespace {

std::vector<Vec2> random_points(int n, Rng& rng) {
    std::vector<Vec2> pts;
    for (int i = 0; i < n; ++i) pts.push_back({rng.uniform(), rng.uniform()});
    return pts;
}

// Minimal total matching cost over all permutations; tractable up to
// n = 7 and a true lower bound for any matching strategy.
double optimal_matching(const std::vector<Vec2>& x, const std::vector<Vec2>& y) {
    std::vector<int> perm(y.size());
    std::iota(perm.begin(), perm.end(), 0);
    double best = 1e18;
    do {
        double total = 0.0;
        for (std::size_t i = 0; i < x.size(); ++i) {
            total += distance(x[i], y[perm[i]]);
        }
        best = std::min(best, total);
    } while (std::next_permutation(perm.begin(), perm.end()));
    return best;
}

}  // namespace

TEST_SUITE("similarity") {

TEST_CASE("greedy matching walks row order and is suboptimal by design") {
    // First point grabs the near target, pushing the second to the far
    // one: 1 + 1 = 2. The optimal pairing would also cost 2 here; the
    // reversed order shows the order dependence.
    const std::vector<Vec2> x = {{0, 0}, {2, 0}};
    const std::vector<Vec2> y = {{1, 0}, {3, 0}};
    CHECK(sim_greedy(x, y) == 2.0);

    const std::vector<Vec2> x_rev = {{2, 0}, {0, 0}};
    CHECK(sim_greedy(x_rev, y) == 4.0);
}

TEST_CASE("greedy ties go to the lowest remaining target index") {
    // (0.5, 0) is equidistant from both targets; taking index 0 forces
    // the second point onto the far target for a total of 1.5.
    const std::vector<Vec2> x = {{0.5, 0}, {0, 0}};
    const std::vector<Vec2> y = {{0, 0}, {1, 0}};
    CHECK(sim_greedy(x, y) == 1.5);
}

TEST_CASE("greedy loss is zero exactly on a permuted copy") {
    Rng rng(611);
    const std::vector<Vec2> x = random_points(8, rng);
    std::vector<Vec2> y = x;
    std::reverse(y.begin(), y.end());
    CHECK(sim_greedy(x, y) == 0.0);
}

TEST_CASE("greedy is bounded below by the optimal assignment") {
    Rng rng(612);
    for (int rep = 0; rep < 50; ++rep) {
        const int n = rng.uniform_int(2, 7);
        const std::vector<Vec2> x = random_points(n, rng);
        const std::vector<Vec2> y = random_points(n, rng);
        const double greedy = sim_greedy(x, y);
        const double best = optimal_matching(x, y);
        CHECK(greedy >= best - 1e-12);
    }
}

TEST_CASE("greedy is invariant to target order") {
    Rng rng(613);
    const std::vector<Vec2> x = random_points(9, rng);
    std::vector<Vec2> y = random_points(9, rng);
    const double before = sim_greedy(x, y);
    std::reverse(y.begin(), y.end());
    CHECK_NEAR(sim_greedy(x, y), before, 1e-12);
}

TEST_CASE("mean squared distance fixture") {
    const std::vector<Vec2> x = {{0, 0}, {1, 0}};
    const std::vector<Vec2> y = {{0, 1}, {1, 2}};
    // Displacements of length 1 and 2: mean of 1 and 4.
    CHECK(sim_mse(x, y) == 2.5);
    CHECK(sim_mse(x, x) == 0.0);
}

TEST_CASE("procrustes ignores translation, rotation and scale") {
    Rng rng(614);
    const std::vector<Vec2> x = random_points(12, rng);
    const double angle = 1.1;
    const double scale = 2.7;
    std::vector<Vec2> y;
    for (const Vec2& p : x) {
        y.push_back({scale * (p.x * std::cos(angle) - p.y * std::sin(angle)) + 5.0,
                     scale * (p.x * std::sin(angle) + p.y * std::cos(angle)) - 3.0});
    }
    CHECK_NEAR(sim_procrustes(x, y), 0.0, 1e-9);
}

TEST_CASE("procrustes stays within its unit range") {
    Rng rng(615);
    for (int rep = 0; rep < 30; ++rep) {
        const int n = rng.uniform_int(3, 20);
        const double v = sim_procrustes(random_points(n, rng), random_points(n, rng));
        CHECK(v >= 0.0);
        CHECK(v <= 1.0);
    }
}

TEST_CASE("procrustes rejects a fully coincident set") {
    const std::vector<Vec2> x = {{0.5, 0.5}, {0.5, 0.5}};
    const std::vector<Vec2> y = {{0, 0}, {1, 1}};
    CHECK_THROWS_AS(sim_procrustes(x, y), input_error);
    CHECK_THROWS_AS(sim_procrustes(y, x), input_error);
}

TEST_CASE("the dispatcher matches the named functions") {
    Rng rng(616);
    const std::vector<Vec2> x = random_points(6, rng);
    const std::vector<Vec2> y = random_points(6, rng);
    CHECK(sim(SimilarityKind::Greedy, x, y) == sim_greedy(x, y));
    CHECK(sim(SimilarityKind::Mse, x, y) == sim_mse(x, y));
    CHECK(sim(SimilarityKind::Procrustes, x, y) == sim_procrustes(x, y));
}

TEST_CASE("similarity kind names round trip") {
    for (SimilarityKind kind :
         {SimilarityKind::Greedy, SimilarityKind::Mse, SimilarityKind::Procrustes}) {
        CHECK(similarity_from_string(to_string(kind)) == kind);
    }
    CHECK(similarity_from_string("GREEDY") == SimilarityKind::Greedy);
    CHECK_THROWS_AS(similarity_from_string("hausdorff"), input_error);
}

TEST_CASE("mismatched or empty point sets are rejected") {
    const std::vector<Vec2> two = {{0, 0}, {1, 1}};
    const std::vector<Vec2> three = {{0, 0}, {1, 1}, {2, 2}};
    const std::vector<Vec2> none;
    CHECK_THROWS_AS(sim_greedy(two, three), input_error);
    CHECK_THROWS_AS(sim_mse(two, three), input_error);
    CHECK_THROWS_AS(sim_procrustes(two, three), input_error);
    CHECK_THROWS_AS(sim_greedy(none, none), input_error);
}

TEST_CASE("percent measures progress toward the target") {
    CHECK(percent(0.0, 2.0) == 100.0);
    CHECK(percent(2.0, 2.0) == 0.0);
    CHECK(percent(1.0, 2.0) == 50.0);
    CHECK(percent(3.0, 2.0) == -50.0);
    CHECK_THROWS_AS(percent(1.0, 0.0), input_error);
}

}  // TEST_SUITE
