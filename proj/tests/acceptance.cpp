// Acceptance runner: one line of output per criterion, exit code equal
// to the number of failed criteria. Every check is deterministic (fixed
// seeds throughout), so a pass here is reproducible bit for bit.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <cstring>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <numeric>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "gdmorph/annealer.hpp"
#include "gdmorph/distance_matrix.hpp"
#include "gdmorph/drawing.hpp"
#include "gdmorph/errors.hpp"
#include "gdmorph/experiment.hpp"
#include "gdmorph/generators.hpp"
#include "gdmorph/graph.hpp"
#include "gdmorph/layout.hpp"
#include "gdmorph/metric_state.hpp"
#include "gdmorph/metrics.hpp"
#include "gdmorph/result_io.hpp"
#include "gdmorph/rng.hpp"
#include "gdmorph/shapes.hpp"
#include "gdmorph/significance.hpp"
#include "gdmorph/similarity.hpp"
#include "gdmorph/stats.hpp"

using namespace gdmorph;

namespace fs = std::filesystem;

namespace {

// ---------------------------------------------------------------- shared

struct Failure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

void require(bool ok, const std::string& what) {
    if (!ok) throw Failure(what);
}

std::string fmt(double v) {
    std::ostringstream out;
    out << v;
    return out.str();
}

double median5(std::vector<double> values) {
    if (values.size() != 5) throw Failure("median5 expects 5 values");
    std::sort(values.begin(), values.end());
    return values[2];
}

Graph random_connected_graph(int n, int extra, Rng& rng) {
    std::vector<std::pair<int, int>> edges;
    std::vector<std::pair<int, int>> used;
    for (int v = 1; v < n; ++v) {
        edges.emplace_back(rng.uniform_int(0, v - 1), v);
    }
    used = edges;
    for (auto& [u, v] : used) {
        if (u > v) std::swap(u, v);
    }
    std::sort(used.begin(), used.end());
    for (int t = 0; t < extra * 10 && static_cast<int>(edges.size()) < n - 1 + extra; ++t) {
        int u = rng.uniform_int(0, n - 1);
        int v = rng.uniform_int(0, n - 1);
        if (u == v) continue;
        if (u > v) std::swap(u, v);
        const std::pair<int, int> key{u, v};
        const auto at = std::lower_bound(used.begin(), used.end(), key);
        if (at != used.end() && *at == key) continue;
        used.insert(at, key);
        edges.emplace_back(u, v);
    }
    return Graph(n, std::move(edges));
}

Drawing random_drawing(int n, Rng& rng) {
    Drawing d;
    d.pts.reserve(n);
    for (int i = 0; i < n; ++i) {
        d.pts.push_back({rng.uniform(), rng.uniform()});
    }
    return d;
}

std::string slurp(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

// ------------------------------------------------- independent oracles

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

// Exact closed-segment intersection in rational arithmetic; doubles
// convert losslessly, so there is no tolerance anywhere.
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
            if (a == c || a == h || b == c || b == h) continue;
            if (rsegments_intersect(d.pts[a], d.pts[b], d.pts[c], d.pts[h])) ++count;
        }
    }
    return count;
}

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

std::vector<double> avg_ranks(const std::vector<double>& values) {
    const std::size_t n = values.size();
    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
    std::vector<double> ranks(n);
    std::size_t i = 0;
    while (i < n) {
        std::size_t j = i;
        while (j + 1 < n && values[order[j + 1]] == values[order[i]]) ++j;
        for (std::size_t t = i; t <= j; ++t) {
            ranks[order[t]] = 0.5 * static_cast<double>(i + j) + 1.0;
        }
        i = j + 1;
    }
    return ranks;
}

// Full sign-pattern enumeration of the signed-rank test.
double enum_wilcoxon(const std::vector<double>& a, const std::vector<double>& b) {
    std::vector<double> diffs;
    for (std::size_t i = 0; i < a.size(); ++i) {
        if (a[i] != b[i]) diffs.push_back(a[i] - b[i]);
    }
    const std::size_t n = diffs.size();
    std::vector<double> mags(n);
    for (std::size_t i = 0; i < n; ++i) mags[i] = std::abs(diffs[i]);
    const std::vector<double> ranks = avg_ranks(mags);
    std::int64_t observed = 0;
    std::vector<std::int64_t> doubled(n);
    for (std::size_t i = 0; i < n; ++i) {
        doubled[i] = std::llround(2.0 * ranks[i]);
        if (diffs[i] > 0.0) observed += doubled[i];
    }
    const std::uint32_t patterns = 1u << n;
    std::uint32_t hits = 0;
    for (std::uint32_t mask = 0; mask < patterns; ++mask) {
        std::int64_t w = 0;
        for (std::size_t i = 0; i < n; ++i) {
            if (mask & (1u << i)) w += doubled[i];
        }
        if (w >= observed) ++hits;
    }
    return static_cast<double>(hits) / static_cast<double>(patterns);
}

// Full assignment enumeration of the rank-sum test.
double enum_mann_whitney(const std::vector<double>& a, const std::vector<double>& b) {
    std::vector<double> pooled = a;
    pooled.insert(pooled.end(), b.begin(), b.end());
    const std::size_t total = pooled.size();
    const std::size_t na = a.size();
    const auto doubled_u = [&](const std::vector<char>& in_a) {
        std::int64_t u = 0;
        for (std::size_t i = 0; i < total; ++i) {
            if (!in_a[i]) continue;
            for (std::size_t j = 0; j < total; ++j) {
                if (in_a[j]) continue;
                if (pooled[i] > pooled[j]) u += 2;
                else if (pooled[i] == pooled[j]) u += 1;
            }
        }
        return u;
    };
    std::vector<char> actual(total, 0);
    for (std::size_t i = 0; i < na; ++i) actual[i] = 1;
    const std::int64_t observed = doubled_u(actual);
    std::vector<char> in_a(total, 0);
    for (std::size_t i = total - na; i < total; ++i) in_a[i] = 1;
    std::uint64_t splits = 0;
    std::uint64_t hits = 0;
    do {
        ++splits;
        if (doubled_u(in_a) >= observed) ++hits;
    } while (std::next_permutation(in_a.begin(), in_a.end()));
    return static_cast<double>(hits) / static_cast<double>(splits);
}

// ------------------------------------------------------------ criteria

// Randomized morphs: every accepted trace step and every final drawing
// must hold every constrained metric inside its band. Zero violations.
std::string criterion_band_enforcement() {
    const auto combos = all_metric_combos();
    const std::pair<int, int> lattice_dims[] = {{6, 7}, {8, 9}, {10, 11}, {12, 12}, {5, 8}};
    long accepted_steps = 0;
    long violations = 0;
    int max_nodes = 0;
    std::vector<bool> combo_used(combos.size(), false);

    for (int i = 0; i < 20; ++i) {
        Graph g = (i % 4 == 3) ? grid_graph(lattice_dims[i / 4].first, lattice_dims[i / 4].second)
                               : dual_barabasi_albert(30 + 6 * i, 1, 1 + (i % 2), 0.75,
                                                      static_cast<std::uint64_t>(100 + i));
        const int n = g.node_count();
        max_nodes = std::max(max_nodes, n);
        require(n <= 150, "graph too large for this criterion");
        const DistanceMatrix dist = shortest_paths(g);
        const Drawing start = force_layout(g, 200, 1);
        const TargetShape target = generate(kBuiltinShapes[i % 6], n);

        const std::vector<MetricId>& combo = combos[i % combos.size()];
        combo_used[i % combos.size()] = true;
        AnnealConfig cfg;
        cfg.n_max = 1200;
        cfg.trace_stride = 1;
        cfg.seed = static_cast<std::uint64_t>(1000 + i);

        const MorphResult result = morph(g, start, dist, target, combo, cfg);
        require(result.trace.size() == static_cast<std::size_t>(cfg.n_max),
                "trace incomplete at stride 1");

        const std::size_t k = combo.size();
        for (const TraceRecord& rec : result.trace) {
            if (!rec.accepted) continue;
            ++accepted_steps;
            for (std::size_t j = 0; j < k; ++j) {
                if (!(std::abs(rec.metrics[j] - result.baseline_metrics[j]) <=
                      result.epsilons[j])) {
                    ++violations;
                }
            }
        }
        // The final drawing is re-measured from scratch, independently
        // of the annealer's incremental bookkeeping.
        const std::vector<double> fresh = evaluate(combo, g, result.final, dist);
        for (std::size_t j = 0; j < k; ++j) {
            if (!(std::abs(fresh[j] - result.baseline_metrics[j]) <= result.epsilons[j])) {
                ++violations;
            }
        }
    }

    require(std::all_of(combo_used.begin(), combo_used.end(), [](bool b) { return b; }),
            "not every metric combination was sampled");
    require(accepted_steps > 0, "no proposal was ever accepted");
    require(violations == 0, std::to_string(violations) + " band violations");
    return "20 runs (max n=" + std::to_string(max_nodes) + ", all 15 combos), " +
           std::to_string(accepted_steps) + " accepted steps + 20 finals, 0 band violations";
}

std::string criterion_metric_oracles() {
    // Crossing number vs exact rational geometry.
    {
        Rng rng(31337);
        for (int rep = 0; rep < 200; ++rep) {
            const int n = rng.uniform_int(4, 20);
            const Graph g = random_connected_graph(n, rng.uniform_int(0, 2 * n), rng);
            const Drawing d = random_drawing(n, rng);
            const int ours = crossing_number(g, d);
            const int exact = exact_crossing_number(g, d);
            require(ours == exact, "crossing mismatch at rep " + std::to_string(rep) + ": " +
                                       std::to_string(ours) + " vs exact " +
                                       std::to_string(exact));
        }
    }
    // Stress vs the naive double loop.
    {
        Rng rng(20260);
        for (int rep = 0; rep < 100; ++rep) {
            const int n = rng.uniform_int(2, 25);
            const Graph g = random_connected_graph(n, rng.uniform_int(0, n), rng);
            const Drawing d = random_drawing(n, rng);
            const DistanceMatrix dist = shortest_paths(g);
            const double gap = std::abs(stress(d, dist) - naive_stress(d, dist));
            require(gap <= 1e-9, "stress drift " + fmt(gap) + " at rep " + std::to_string(rep));
        }
    }
    // Incremental state vs full recomputation after 1e4 single moves.
    double worst_drift = 0.0;
    {
        const Graph g = dual_barabasi_albert(50, 1, 2, 0.75, 12);
        const DistanceMatrix dist = shortest_paths(g);
        for (MetricId id : kAllMetrics) {
            Drawing d = force_layout(g, 150, 2);
            auto state = make_metric_state(id, g, d, dist);
            Rng rng(777);
            for (int move = 0; move < 10000; ++move) {
                const int node = rng.uniform_int(0, g.node_count() - 1);
                Drawing after = d;
                after.pts[node] = {rng.uniform(), rng.uniform()};
                const int moved[] = {node};
                state->preview(after, moved);
                state->commit(after, moved);
                d = after;
            }
            const double full = evaluate(std::vector<MetricId>{id}, g, d, dist)[0];
            const double drift = std::abs(state->value() - full);
            worst_drift = std::max(worst_drift, drift);
            require(drift <= 1e-7,
                    to_string(id) + " drifted " + fmt(drift) + " after 10000 moves");
        }
    }
    return "crossing exact on 200 drawings, stress within 1e-9 on 100, incremental drift <= " +
           fmt(worst_drift) + " after 1e4 moves per metric";
}

std::string criterion_fixtures() {
    {
        const Graph k3(3, {{0, 1}, {0, 2}, {1, 2}});
        Drawing d;
        d.pts = {{0, 0}, {1, 0}, {0, 1}};
        const double st = stress(d, shortest_paths(k3));
        require(std::abs(st - 0.028595) <= 1e-5, "triangle stress " + fmt(st));
    }
    {
        const Graph path(3, {{0, 1}, {1, 2}});
        Drawing d;
        d.pts = {{1, 0}, {0, 0}, {0, 1}};
        const double ar = angular_resolution(path, d);
        require(std::abs(ar - 0.5) <= 1e-12, "right-angle score " + fmt(ar));
    }
    {
        const Graph path(3, {{0, 1}, {1, 2}});
        Drawing d;
        d.pts = {{0, 0}, {0.2, 0}, {0.6, 0}};
        const double eld = edge_length_deviation(path, d);
        require(std::abs(eld - 0.1) <= 1e-12, "edge-length deviation " + fmt(eld));
    }
    {
        const std::vector<Vec2> x = {{0, 0}, {2, 0}};
        const std::vector<Vec2> y = {{1, 0}, {3, 0}};
        const double loss = sim_greedy(x, y);
        require(loss == 2.0, "greedy witness " + fmt(loss));
    }
    {
        const AnnealConfig cfg;
        const double t0 = temperature(0, cfg);
        const double tn = temperature(cfg.n_max, cfg);
        require(std::abs(t0 - 0.4) <= 1e-15, "initial temperature " + fmt(t0));
        require(tn == 0.001, "final temperature " + fmt(tn));
    }
    return "triangle stress 0.028595, right angle 0.5, length deviation 0.1, greedy witness 2, "
           "temperature 0.4/0.001";
}

struct FoolingRuns {
    std::vector<double> tree_eld;  // {ELD} -> GRID on the tree, seeds 1..5
    std::vector<double> tree_st;   // {ST}  -> GRID on the tree, seeds 1..5
};

FoolingRuns run_tree_fooling() {
    FoolingRuns runs;
    const Graph tree = dual_barabasi_albert(140, 1, 1, 0.75, 1);
    const DistanceMatrix dist = shortest_paths(tree);
    const Drawing start = force_layout(tree, 300, 1);
    const TargetShape target = generate(ShapeLabel::Grid, tree.node_count());
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        AnnealConfig cfg;
        cfg.seed = seed;
        const MetricId eld[] = {MetricId::ELD};
        runs.tree_eld.push_back(morph(tree, start, dist, target, eld, cfg).final_percent);
        const MetricId st[] = {MetricId::ST};
        runs.tree_st.push_back(morph(tree, start, dist, target, st, cfg).final_percent);
    }
    return runs;
}

std::string criterion_tree_fooling(const FoolingRuns& runs) {
    const double eld_median = median5(runs.tree_eld);
    const double st_median = median5(runs.tree_st);
    // Threshold fixed in advance from a recorded calibration run
    // (observed median 93.7).
    const double threshold = 85.0;
    require(eld_median >= threshold, "length-deviation median " + fmt(eld_median) +
                                         " below threshold " + fmt(threshold));
    require(eld_median >= st_median, "length-deviation median " + fmt(eld_median) +
                                         " not above stress median " + fmt(st_median));
    return "tree median percent: length-deviation " + fmt(eld_median) + " >= " +
           fmt(threshold) + " and >= stress " + fmt(st_median);
}

std::string criterion_graph_difficulty(const FoolingRuns& runs, const Graph& mesh,
                                       const Drawing& mesh_start,
                                       const DistanceMatrix& mesh_dist) {
    const TargetShape target = generate(ShapeLabel::Grid, mesh.node_count());
    std::vector<double> mesh_eld;
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        AnnealConfig cfg;
        cfg.seed = seed;
        const MetricId eld[] = {MetricId::ELD};
        mesh_eld.push_back(
            morph(mesh, mesh_start, mesh_dist, target, eld, cfg).final_percent);
    }
    const double tree_median = median5(runs.tree_eld);
    const double mesh_median = median5(mesh_eld);
    require(tree_median > mesh_median, "tree median " + fmt(tree_median) +
                                           " not strictly above mesh median " +
                                           fmt(mesh_median));
    return "tree median " + fmt(tree_median) + " > mesh median " + fmt(mesh_median) +
           " (margin " + fmt(tree_median - mesh_median) + ")";
}

std::string criterion_easiest_shape(const Graph& mesh, const Drawing& mesh_start,
                                    const DistanceMatrix& mesh_dist) {
    std::vector<double> medians;
    for (ShapeLabel shape : kBuiltinShapes) {
        const TargetShape target = generate(shape, mesh.node_count());
        std::vector<double> percents;
        for (std::uint64_t seed = 1; seed <= 5; ++seed) {
            AnnealConfig cfg;
            cfg.n_max = 15000;
            cfg.seed = seed;
            const MetricId ar[] = {MetricId::AR};
            percents.push_back(
                morph(mesh, mesh_start, mesh_dist, target, ar, cfg).final_percent);
        }
        medians.push_back(median5(percents));
    }
    const double grid_median = medians.back();  // GRID is the last built-in
    std::string detail = "grid-shape median " + fmt(grid_median) + " vs";
    for (std::size_t s = 0; s + 1 < kBuiltinShapes.size(); ++s) {
        detail += " " + to_string(kBuiltinShapes[s]) + "=" + fmt(medians[s]);
        require(grid_median >= medians[s],
                "grid-shape median " + fmt(grid_median) + " below " +
                    to_string(kBuiltinShapes[s]) + " median " + fmt(medians[s]));
    }
    return detail;
}

std::string criterion_stats_oracles() {
    // Friedman fixture: five blocks ranked identically.
    {
        const std::vector<std::vector<double>> t = {
            {0.10, 0.20, 0.15, 0.30, 0.25},
            {0.40, 0.50, 0.45, 0.60, 0.55},
            {0.70, 0.80, 0.75, 0.90, 0.85},
        };
        const FriedmanResult r = friedman(t);
        require(std::abs(r.chi2 - 10.0) <= 1e-9, "friedman chi2 " + fmt(r.chi2));
        require(std::abs(r.p - std::exp(-5.0)) <= 1e-12, "friedman p " + fmt(r.p));
    }
    // Paired and unpaired tests vs full enumeration.
    double worst_gap = 0.0;
    {
        std::mt19937 gen(515151);
        std::uniform_int_distribution<int> value(0, 6);
        std::uniform_int_distribution<int> pair_size(5, 10);
        int cases = 0;
        while (cases < 12) {
            const int n = pair_size(gen);
            std::vector<double> a(n), b(n);
            for (int i = 0; i < n; ++i) {
                a[i] = value(gen);
                b[i] = value(gen);
            }
            int nonzero = 0;
            for (int i = 0; i < n; ++i) {
                if (a[i] != b[i]) ++nonzero;
            }
            if (nonzero < 5) continue;
            ++cases;
            const double gap = std::abs(wilcoxon_signed_rank(a, b) - enum_wilcoxon(a, b));
            worst_gap = std::max(worst_gap, gap);
            require(gap <= 0.02, "signed-rank gap " + fmt(gap));
        }
        std::uniform_int_distribution<int> group_size(2, 8);
        for (int rep = 0; rep < 12; ++rep) {
            std::vector<double> a(group_size(gen)), b(group_size(gen));
            for (double& v : a) v = value(gen);
            for (double& v : b) v = value(gen);
            const double gap = std::abs(mann_whitney_u(a, b) - enum_mann_whitney(a, b));
            worst_gap = std::max(worst_gap, gap);
            require(gap <= 0.02, "rank-sum gap " + fmt(gap));
        }
    }
    // Bonferroni boundary: k * 0.01 lands exactly on alpha (kept), while
    // k * 0.009 clears it (rejected).
    {
        const std::vector<double> edge(5, 0.01);
        const BonferroniResult on_edge = bonferroni(edge, 0.05);
        for (std::size_t i = 0; i < 5; ++i) {
            require(on_edge.adjusted[i] == 0.05, "adjusted edge value " +
                                                     fmt(on_edge.adjusted[i]));
            require(on_edge.reject[i] == 0, "boundary p rejected");
        }
        const std::vector<double> inside(5, 0.009);
        const BonferroniResult clear = bonferroni(inside, 0.05);
        for (std::size_t i = 0; i < 5; ++i) {
            require(clear.reject[i] == 1, "p inside the boundary not rejected");
        }
    }
    // Significance-matrix asymmetry on a synthetic, consistently
    // ordered grid: each one-sided question disagrees with its mirror.
    {
        ExperimentGrid grid;
        for (std::uint64_t s = 1; s <= 7; ++s) {
            const double base = static_cast<double>(s);
            grid.records.push_back({"g", "GRID", "ST", s, 10.0 + base});
            grid.records.push_back({"g", "GRID", "ST+ELD", s, 40.0 + base});
            grid.records.push_back({"g", "GRID", "ELD", s, 70.0 + base});
        }
        const SignificanceMatrix m = significance_matrix(grid, GridAxis::Combo, 0.05);
        const int count = static_cast<int>(m.levels.size());
        require(count == 3, "unexpected level count");
        int significant = 0;
        int asymmetric = 0;
        for (int r = 0; r < count; ++r) {
            for (int c = r + 1; c < count; ++c) {
                if (m.p(r, c) != m.p(c, r)) ++asymmetric;
                if (m.is_significant(r, c) != m.is_significant(c, r)) ++significant;
            }
        }
        require(asymmetric == 3, "p-value matrix unexpectedly symmetric");
        require(significant == 3, "significance pattern unexpectedly symmetric");
    }
    return "friedman chi2=10, signed-rank/rank-sum within " + fmt(worst_gap) +
           " of enumeration, bonferroni boundary exact, matrix asymmetry on synthetic grid";
}

std::string criterion_determinism() {
    const fs::path root = fs::temp_directory_path() / "gdmorph-acceptance";
    fs::remove_all(root);
    fs::create_directories(root);

    // A single morph, rerun and reserialized.
    {
        const Graph g = dual_barabasi_albert(40, 1, 2, 0.75, 8);
        const DistanceMatrix dist = shortest_paths(g);
        const Drawing start = force_layout(g, 200, 1);
        const TargetShape target = generate(ShapeLabel::O, g.node_count());
        AnnealConfig cfg;
        cfg.n_max = 600;
        cfg.seed = 7;
        const MetricId combo[] = {MetricId::ELD, MetricId::CN};
        const MorphResult first = morph(g, start, dist, target, combo, cfg);
        const MorphResult second = morph(g, start, dist, target, combo, cfg);
        save_result(root / "a.json", first);
        save_result(root / "b.json", second);
        require(slurp(root / "a.json") == slurp(root / "b.json"),
                "morph rerun changed the serialized result");
    }
    // A whole experiment grid, run fresh twice and resumed once.
    {
        const auto plan_for = [&](const fs::path& dir) {
            ExperimentPlan plan;
            plan.graphs.push_back({"g", "grid:3x3", ""});
            plan.targets = {"GRID", "O"};
            plan.combos = {{MetricId::ELD}};
            plan.seeds = {1, 2};
            plan.config.n_max = 120;
            plan.out_dir = dir;
            return plan;
        };
        const ExperimentOutcome first = run_experiment(plan_for(root / "exp_a"));
        const ExperimentOutcome second = run_experiment(plan_for(root / "exp_b"));
        require(first.failures.empty() && second.failures.empty(), "experiment cells failed");

        const auto compare_dirs = [&]() {
            require(slurp(root / "exp_a" / "results.csv") ==
                        slurp(root / "exp_b" / "results.csv"),
                    "experiment reruns disagree on results.csv");
            int cells = 0;
            for (const auto& entry :
                 fs::directory_iterator(root / "exp_a" / "results")) {
                ++cells;
                const fs::path twin = root / "exp_b" / "results" / entry.path().filename();
                require(fs::exists(twin), "missing twin for " + entry.path().filename().string());
                require(slurp(entry.path()) == slurp(twin),
                        entry.path().filename().string() + " differs between reruns");
            }
            require(cells == 4, "expected 4 result files, saw " + std::to_string(cells));
        };
        compare_dirs();

        const ExperimentOutcome resumed = run_experiment(plan_for(root / "exp_a"));
        require(resumed.computed == 0 && resumed.skipped == 4,
                "resume recomputed cells it should have reused");
        compare_dirs();
    }
    return "morph rerun byte-identical; experiment rerun and resume byte-identical (4 cells)";
}

}  // namespace

int main() {
    int failures = 0;
    FoolingRuns fooling;
    Graph mesh(2, {{0, 1}});  // replaced below
    Drawing mesh_start;
    DistanceMatrix mesh_dist(0, {});

    const auto run = [&failures](int number, const std::function<std::string()>& body) {
        try {
            const std::string detail = body();
            std::cout << "criterion " << number << ": PASS — " << detail << "\n";
        } catch (const std::exception& e) {
            ++failures;
            std::cout << "criterion " << number << ": FAIL — " << e.what() << "\n";
        }
        std::cout.flush();
    };

    run(1, criterion_band_enforcement);
    run(2, criterion_metric_oracles);
    run(3, criterion_fixtures);

    // Criteria 4-6 share expensive artifacts; build them once.
    bool prepared = false;
    try {
        fooling = run_tree_fooling();
        mesh = grid_graph(12, 12);
        mesh_dist = shortest_paths(mesh);
        mesh_start = force_layout(mesh, 300, 1);
        prepared = true;
    } catch (const std::exception& e) {
        const std::string reason = std::string("setup failed: ") + e.what();
        for (int number : {4, 5, 6}) {
            ++failures;
            std::cout << "criterion " << number << ": FAIL — " << reason << "\n";
        }
    }
    if (prepared) {
        run(4, [&] { return criterion_tree_fooling(fooling); });
        run(5, [&] { return criterion_graph_difficulty(fooling, mesh, mesh_start, mesh_dist); });
        run(6, [&] { return criterion_easiest_shape(mesh, mesh_start, mesh_dist); });
    }

    run(7, criterion_stats_oracles);
    run(8, criterion_determinism);

    if (failures == 0) {
        std::cout << "all criteria passed\n";
    } else {
        std::cout << failures << " criteria failed\n";
    }
    return failures;
}
