// Microbenchmarks for the hot paths: metric evaluation (full vs
// incremental), similarity scoring, all-pairs distances, and whole
// morph iterations. Run ./gdmorph_bench --benchmark_filter=... to
// narrow down.

#include <benchmark/benchmark.h>

#include <memory>
#include <vector>

#include "gdmorph/annealer.hpp"
#include "gdmorph/distance_matrix.hpp"
#include "gdmorph/drawing.hpp"
#include "gdmorph/generators.hpp"
#include "gdmorph/graph.hpp"
#include "gdmorph/layout.hpp"
#include "gdmorph/metric_state.hpp"
#include "gdmorph/metrics.hpp"
#include "gdmorph/rng.hpp"
#include "gdmorph/shapes.hpp"
#include "gdmorph/similarity.hpp"

namespace {

using namespace gdmorph;

struct Instance {
    Graph g;
    DistanceMatrix dist;
    Drawing drawing;

    explicit Instance(int n)
        : g(dual_barabasi_albert(n, 1, 2, 0.75, 1)),
          dist(shortest_paths(g)),
          drawing(force_layout(g, 150, 1)) {}
};

Instance& instance(int n) {
    static std::vector<std::unique_ptr<Instance>> cache;
    for (auto& inst : cache) {
        if (inst->g.node_count() == n) return *inst;
    }
    cache.push_back(std::make_unique<Instance>(n));
    return *cache.back();
}

void bench_full_metric(benchmark::State& state, MetricId id) {
    Instance& inst = instance(static_cast<int>(state.range(0)));
    const std::vector<MetricId> ids = {id};
    for (auto _ : state) {
        benchmark::DoNotOptimize(evaluate(ids, inst.g, inst.drawing, inst.dist));
    }
}

// One single-node preview+commit against the incremental state, the
// operation the annealer performs per touched node per iteration.
void bench_incremental_metric(benchmark::State& state, MetricId id) {
    Instance& inst = instance(static_cast<int>(state.range(0)));
    Drawing d = inst.drawing;
    auto ms = make_metric_state(id, inst.g, d, inst.dist);
    Rng rng(99);
    for (auto _ : state) {
        const int node = rng.uniform_int(0, inst.g.node_count() - 1);
        Drawing after = d;
        after.pts[node] = {rng.uniform(), rng.uniform()};
        const int moved[] = {node};
        benchmark::DoNotOptimize(ms->preview(after, moved));
        ms->commit(after, moved);
        d = after;
    }
}

void bench_sim_greedy(benchmark::State& state) {
    Instance& inst = instance(static_cast<int>(state.range(0)));
    const TargetShape target = generate(ShapeLabel::Grid, inst.g.node_count());
    for (auto _ : state) {
        benchmark::DoNotOptimize(sim_greedy(inst.drawing.pts, target.points));
    }
}

void bench_shortest_paths(benchmark::State& state) {
    Instance& inst = instance(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(shortest_paths(inst.g));
    }
}

// Whole-run throughput; 300 annealing iterations per benchmark
// iteration, reported as items so time/item is time per morph step.
void bench_morph_steps(benchmark::State& state, bool incremental) {
    Instance& inst = instance(static_cast<int>(state.range(0)));
    const TargetShape target = generate(ShapeLabel::Grid, inst.g.node_count());
    const MetricId combo[] = {MetricId::ST, MetricId::ELD, MetricId::CN, MetricId::AR};
    AnnealConfig cfg;
    cfg.n_max = 300;
    cfg.trace_stride = 300;
    cfg.use_incremental = incremental;
    std::uint64_t seed = 1;
    for (auto _ : state) {
        cfg.seed = seed++;
        benchmark::DoNotOptimize(morph(inst.g, inst.drawing, inst.dist, target, combo, cfg));
    }
    state.SetItemsProcessed(state.iterations() * cfg.n_max);
}

BENCHMARK_CAPTURE(bench_full_metric, stress, MetricId::ST)->Arg(50)->Arg(150);
BENCHMARK_CAPTURE(bench_full_metric, edge_length_dev, MetricId::ELD)->Arg(50)->Arg(150);
BENCHMARK_CAPTURE(bench_full_metric, crossings, MetricId::CN)->Arg(50)->Arg(150);
BENCHMARK_CAPTURE(bench_full_metric, angular_res, MetricId::AR)->Arg(50)->Arg(150);

BENCHMARK_CAPTURE(bench_incremental_metric, stress, MetricId::ST)->Arg(50)->Arg(150);
BENCHMARK_CAPTURE(bench_incremental_metric, edge_length_dev, MetricId::ELD)->Arg(50)->Arg(150);
BENCHMARK_CAPTURE(bench_incremental_metric, crossings, MetricId::CN)->Arg(50)->Arg(150);
BENCHMARK_CAPTURE(bench_incremental_metric, angular_res, MetricId::AR)->Arg(50)->Arg(150);

BENCHMARK(bench_sim_greedy)->Arg(50)->Arg(150)->Arg(300);
BENCHMARK(bench_shortest_paths)->Arg(50)->Arg(150)->Arg(300);

BENCHMARK_CAPTURE(bench_morph_steps, incremental, true)->Arg(140)->Unit(benchmark::kMillisecond);
BENCHMARK_CAPTURE(bench_morph_steps, full_reeval, false)->Arg(140)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
