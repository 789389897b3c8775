#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "gdmorph/annealer.hpp"
#include "gdmorph/significance.hpp"

namespace gdmorph {

// Where a graph comes from: an edge-list file, or a generator spec —
// "ba:n=140,m1=1,m2=2,p=0.75,seed=1" for the dual preferential-
// attachment generator, "grid:12x12" for a lattice. An optional coords
// CSV pins the start layout; otherwise the force-directed layout runs
// with `layout_seed`.
struct GraphSource {
    std::string name;
    std::string spec;
    std::string coords;  // optional
};

Graph load_graph_source(const GraphSource& source);

struct ExperimentPlan {
    std::vector<GraphSource> graphs;
    std::vector<std::string> targets;           // shape labels or CSV paths
    std::vector<std::vector<MetricId>> combos;  // empty = all 15
    std::vector<std::uint64_t> seeds;           // empty = 1..5
    AnnealConfig config;                        // seed field is overridden per cell
    std::filesystem::path out_dir;
    bool force = false;   // recompute cells whose result file already exists
    int threads = 0;      // 0 = hardware concurrency
    std::uint64_t layout_seed = 1;
    int layout_iterations = 300;
};

struct CellFailure {
    std::string graph;
    std::string target;
    std::string combo;
    std::uint64_t seed = 0;
    std::string message;
};

struct ExperimentOutcome {
    ExperimentGrid grid;  // one record per completed cell, plan order
    std::vector<CellFailure> failures;
    int computed = 0;
    int skipped = 0;  // already on disk, reused
};

// Run the full grid: every (graph, target, combo, seed) cell morphs
// independently and lands in out_dir as results/<cell>.json plus a
// final-drawing SVG; each graph's start drawing is rendered once. Cells
// already on disk are reused unless `force`. Failures are collected,
// not fatal. Finishes by writing the consolidated results.csv.
ExperimentOutcome run_experiment(const ExperimentPlan& plan);

struct FrameSequence {
    std::vector<std::string> frame_files;  // target CSVs, all of the drawing's size
    bool chaining = true;                  // each frame starts from the previous result
    bool rebaseline_each_frame = false;    // measure metric bands per frame instead of once
};

// Morph through a sequence of targets. Metric bands are, by default,
// anchored at the original drawing for every frame, so the whole
// sequence preserves the original quality values; percents are likewise
// measured against the original start. Frame k runs with seed
// cfg.seed + k. When out_dir is nonempty, each frame is written as
// frame_<k>.svg and frame_<k>.json.
std::vector<MorphResult> run_sequence(const Graph& g, const Drawing& start,
                                      const DistanceMatrix& dist, const FrameSequence& frames,
                                      std::span<const MetricId> constraints,
                                      const AnnealConfig& cfg,
                                      const std::filesystem::path& out_dir = {});

}  // namespace gdmorph
