// Command line front end: layout, metrics, shapes emit, morph,
// experiment, sequence, analyze, render.

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "gdmorph/annealer.hpp"
#include "gdmorph/errors.hpp"
#include "gdmorph/experiment.hpp"
#include "gdmorph/generators.hpp"
#include "gdmorph/io.hpp"
#include "gdmorph/layout.hpp"
#include "gdmorph/metrics.hpp"
#include "gdmorph/render.hpp"
#include "gdmorph/result_io.hpp"
#include "gdmorph/shapes.hpp"
#include "gdmorph/significance.hpp"
#include "gdmorph/similarity.hpp"

namespace fs = std::filesystem;
using namespace gdmorph;

namespace {

struct GlobalOptions {
    std::uint64_t seed = 0;
    std::string config_file;
    std::string out_dir = "out";
    bool quiet = false;

    CLI::Option* seed_opt = nullptr;

    void say(const std::string& line) const {
        if (!quiet) {
            std::cout << line << '\n';
        }
    }
};

nlohmann::json load_config_json(const std::string& path) {
    std::ifstream in(path);
    if (!in) {
        throw input_error("cannot open config file '" + path + "'");
    }
    try {
        nlohmann::json j;
        in >> j;
        return j;
    } catch (const nlohmann::json::exception& e) {
        throw input_error("malformed config file '" + path + "': " + e.what());
    }
}

// The AnnealConfig portion of the config file: either under "anneal" or
// the top-level object itself.
AnnealConfig config_from_file(const GlobalOptions& global) {
    if (global.config_file.empty()) {
        return {};
    }
    const nlohmann::json j = load_config_json(global.config_file);
    return config_from_json(j.contains("anneal") ? j.at("anneal") : j);
}

// CLI flags for AnnealConfig fields; only flags the user actually
// passed override the config-file values.
struct AnnealFlags {
    int n_max = 0;
    double t_init = 0;
    double t_final = 0;
    int subset_divisor = 0;
    double step_scale = 0;
    double step_clip = 0;
    double eps = 0;
    double eps_cn = 0;
    double cn_eps_factor = 0;
    std::string similarity;
    bool no_clamp = false;
    int trace_stride = 0;
    bool full_eval = false;

    CLI::Option* n_max_opt = nullptr;
    CLI::Option* t_init_opt = nullptr;
    CLI::Option* t_final_opt = nullptr;
    CLI::Option* subset_opt = nullptr;
    CLI::Option* step_scale_opt = nullptr;
    CLI::Option* step_clip_opt = nullptr;
    CLI::Option* eps_opt = nullptr;
    CLI::Option* eps_cn_opt = nullptr;
    CLI::Option* cn_factor_opt = nullptr;
    CLI::Option* similarity_opt = nullptr;
    CLI::Option* no_clamp_opt = nullptr;
    CLI::Option* stride_opt = nullptr;
    CLI::Option* full_eval_opt = nullptr;

    void attach(CLI::App* cmd) {
        n_max_opt = cmd->add_option("--n-max", n_max, "Morph iterations");
        t_init_opt = cmd->add_option("--t-init", t_init, "Starting temperature");
        t_final_opt = cmd->add_option("--t-final", t_final, "Final temperature");
        subset_opt = cmd->add_option("--subset-divisor", subset_divisor,
                                     "Jitter moves up to n/this nodes");
        step_scale_opt = cmd->add_option("--step-scale", step_scale, "Jitter step multiplier");
        step_clip_opt = cmd->add_option("--step-clip", step_clip, "Jitter normal clip bound");
        eps_opt = cmd->add_option("--eps", eps, "Band for ST, ELD and AR");
        eps_cn_opt = cmd->add_option("--eps-cn", eps_cn, "Absolute band for CN");
        cn_factor_opt = cmd->add_option("--cn-eps-factor", cn_eps_factor,
                                        "Relative CN band (of the start value)");
        similarity_opt = cmd->add_option("--similarity", similarity,
                                         "greedy, mse, or procrustes");
        no_clamp_opt = cmd->add_flag("--no-clamp", no_clamp,
                                     "Let proposals leave the unit box");
        stride_opt = cmd->add_option("--trace-stride", trace_stride,
                                     "Record every k-th iteration");
        full_eval_opt = cmd->add_flag("--full-eval", full_eval,
                                      "Re-evaluate metrics from scratch each iteration");
    }

    void apply(AnnealConfig& cfg, const GlobalOptions& global) const {
        if (global.seed_opt->count() > 0) cfg.seed = global.seed;
        if (n_max_opt->count() > 0) cfg.n_max = n_max;
        if (t_init_opt->count() > 0) cfg.t_init = t_init;
        if (t_final_opt->count() > 0) cfg.t_final = t_final;
        if (subset_opt->count() > 0) cfg.subset_divisor = subset_divisor;
        if (step_scale_opt->count() > 0) cfg.step_scale = step_scale;
        if (step_clip_opt->count() > 0) cfg.step_clip = step_clip;
        if (eps_opt->count() > 0) {
            cfg.epsilons[MetricId::ST] = eps;
            cfg.epsilons[MetricId::ELD] = eps;
            cfg.epsilons[MetricId::AR] = eps;
        }
        if (eps_cn_opt->count() > 0) cfg.epsilons[MetricId::CN] = eps_cn;
        if (cn_factor_opt->count() > 0) cfg.cn_epsilon_factor = cn_eps_factor;
        if (similarity_opt->count() > 0) {
            cfg.similarity_kind = similarity_from_string(similarity);
        }
        if (no_clamp_opt->count() > 0) cfg.clamp_to_unit_box = false;
        if (stride_opt->count() > 0) cfg.trace_stride = trace_stride;
        if (full_eval_opt->count() > 0) cfg.use_incremental = false;
    }
};

// "name=spec" for generator specs or file paths.
GraphSource parse_graph_argument(const std::string& text) {
    GraphSource source;
    const auto eq = text.find('=');
    const auto colon = text.find(':');
    if (eq != std::string::npos && (colon == std::string::npos || eq < colon)) {
        source.name = text.substr(0, eq);
        source.spec = text.substr(eq + 1);
    } else {
        source.spec = text;
        source.name = fs::path(text).stem().string();
        if (source.name.empty() || colon != std::string::npos) {
            source.name = "graph";
        }
    }
    if (source.spec.empty()) {
        throw input_error("empty graph spec in '" + text + "'");
    }
    return source;
}

Drawing start_drawing(const Graph& g, const std::string& coords, int layout_iterations,
                      std::uint64_t layout_seed) {
    if (coords.empty()) {
        return force_layout(g, layout_iterations, layout_seed);
    }
    Drawing d = normalize(load_coords_csv(coords));
    if (d.size() != g.node_count()) {
        throw input_error("coords file has " + std::to_string(d.size()) +
                          " rows but the graph has " + std::to_string(g.node_count()) + " nodes");
    }
    return d;
}

TargetShape resolve_target(const std::string& text, int n) {
    const bool filish = text.find('/') != std::string::npos || text.find('.') != std::string::npos;
    if (!filish) {
        try {
            return generate(shape_from_string(text), n);
        } catch (const input_error&) {
            // fall through to the file reading
        }
    }
    TargetShape t = load_target(text);
    if (t.size() != n) {
        throw input_error("target '" + text + "' has " + std::to_string(t.size()) +
                          " points but the drawing has " + std::to_string(n) + " nodes");
    }
    return t;
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.9g", v);
    return buf;
}

// ----------------------------------------------------------------- layout

struct LayoutCmd {
    std::string graph;
    std::string coords_out;
    int iterations = 300;

    int run(const GlobalOptions& global) {
        const GraphSource source = parse_graph_argument(graph);
        const Graph g = load_graph_source(source);
        const std::uint64_t seed = global.seed_opt->count() > 0 ? global.seed : 1;
        const Drawing d = force_layout(g, iterations, seed);
        fs::create_directories(global.out_dir);
        const fs::path csv = coords_out.empty()
                                 ? fs::path(global.out_dir) / (source.name + "_layout.csv")
                                 : fs::path(coords_out);
        save_coords_csv(d, csv.string());
        const fs::path svg = fs::path(global.out_dir) / (source.name + "_layout.svg");
        render_svg(d, g, svg);
        global.say("wrote " + csv.string());
        global.say("wrote " + svg.string());
        return 0;
    }
};

// ---------------------------------------------------------------- metrics

struct MetricsCmd {
    std::string graph;
    std::string coords;

    int run(const GlobalOptions&) {
        const Graph g = load_graph_source(parse_graph_argument(graph));
        const Drawing d = start_drawing(g, coords, 300, 1);
        const DistanceMatrix dist = shortest_paths(g);
        for (MetricId id : kAllMetrics) {
            std::cout << to_string(id) << ' '
                      << fmt(evaluate(std::span(&id, 1), g, d, dist)[0]) << '\n';
        }
        return 0;
    }
};

// ------------------------------------------------------------ shapes emit

struct ShapesEmitCmd {
    std::string label;
    int n = 0;

    int run(const GlobalOptions& global) {
        const TargetShape shape = generate(shape_from_string(label), n);
        fs::create_directories(global.out_dir);
        const fs::path csv =
            fs::path(global.out_dir) / (to_string(shape.label) + "_" + std::to_string(n) + ".csv");
        Drawing d;
        d.pts = shape.points;
        save_coords_csv(d, csv.string());
        global.say("wrote " + csv.string());
        return 0;
    }
};

// ------------------------------------------------------------------ morph

struct MorphCmd {
    std::string graph;
    std::string coords;
    std::string target;
    std::string qm = "ELD";
    AnnealFlags flags;

    int run(const GlobalOptions& global) {
        const GraphSource source = parse_graph_argument(graph);
        const Graph g = load_graph_source(source);
        const Drawing start = start_drawing(g, coords, 300, 1);
        const DistanceMatrix dist = shortest_paths(g);
        const TargetShape shape = resolve_target(target, g.node_count());
        const std::vector<MetricId> constraints = combo_from_string(qm);
        AnnealConfig cfg = config_from_file(global);
        flags.apply(cfg, global);

        const MorphResult result = morph(g, start, dist, shape, constraints, cfg);

        fs::create_directories(global.out_dir);
        const std::string stem = source.name + "__" + target_label() + "__" +
                                 combo_to_string(constraints) + "__s" +
                                 std::to_string(cfg.seed);
        const fs::path json_path = fs::path(global.out_dir) / (stem + ".json");
        const CellLabels labels{source.name, target_label(), combo_to_string(constraints)};
        save_result(json_path, result, &labels);
        const fs::path svg_path = fs::path(global.out_dir) / (stem + ".svg");
        render_svg(result.final, g, svg_path);

        global.say("final percent " + fmt(result.final_percent) + " (loss " +
                   fmt(result.baseline_loss) + " -> " + fmt(result.final_loss) + "), accepted " +
                   std::to_string(result.accepted_count) + "/" +
                   std::to_string(cfg.n_max));
        global.say("wrote " + json_path.string());
        global.say("wrote " + svg_path.string());
        return 0;
    }

    std::string target_label() const {
        const bool filish =
            target.find('/') != std::string::npos || target.find('.') != std::string::npos;
        if (!filish) {
            try {
                return to_string(shape_from_string(target));
            } catch (const input_error&) {
            }
        }
        return fs::path(target).stem().string();
    }
};

// ------------------------------------------------------------- experiment

struct ExperimentCmd {
    std::vector<std::string> graphs;
    std::vector<std::string> graph_coords;  // name=path
    std::vector<std::string> targets;
    std::vector<std::string> qms;
    std::string seeds_text;
    int seed_count = 0;
    bool force = false;
    int threads = 0;
    AnnealFlags flags;

    int run(const GlobalOptions& global) {
        ExperimentPlan plan;
        if (!global.config_file.empty()) {
            const nlohmann::json j = load_config_json(global.config_file);
            plan.config = config_from_json(j.contains("anneal") ? j.at("anneal") : j);
            if (j.contains("experiment")) {
                read_plan_json(j.at("experiment"), plan);
            }
        }
        flags.apply(plan.config, global);

        for (const std::string& text : graphs) {
            plan.graphs.push_back(parse_graph_argument(text));
        }
        for (const std::string& pair : graph_coords) {
            const auto eq = pair.find('=');
            if (eq == std::string::npos) {
                throw input_error("--graph-coords expects name=path, got '" + pair + "'");
            }
            const std::string name = pair.substr(0, eq);
            bool matched = false;
            for (GraphSource& source : plan.graphs) {
                if (source.name == name) {
                    source.coords = pair.substr(eq + 1);
                    matched = true;
                }
            }
            if (!matched) {
                throw input_error("--graph-coords names unknown graph '" + name + "'");
            }
        }
        if (!targets.empty()) {
            plan.targets = targets;
        }
        if (plan.targets.empty()) {
            for (ShapeLabel label : kBuiltinShapes) {
                plan.targets.push_back(to_string(label));
            }
        }
        if (!qms.empty()) {
            plan.combos.clear();
            for (const std::string& text : qms) {
                plan.combos.push_back(combo_from_string(text));
            }
        }
        if (!seeds_text.empty()) {
            plan.seeds.clear();
            std::istringstream in(seeds_text);
            std::string item;
            while (std::getline(in, item, ',')) {
                try {
                    plan.seeds.push_back(std::stoull(item));
                } catch (const std::exception&) {
                    throw input_error("bad seed '" + item + "' in --seeds");
                }
            }
        } else if (seed_count > 0) {
            plan.seeds.clear();
            for (int s = 1; s <= seed_count; ++s) {
                plan.seeds.push_back(static_cast<std::uint64_t>(s));
            }
        }
        plan.out_dir = global.out_dir;
        plan.force = force;
        plan.threads = threads;

        const ExperimentOutcome outcome = run_experiment(plan);
        global.say("computed " + std::to_string(outcome.computed) + " cells, reused " +
                   std::to_string(outcome.skipped) + ", failed " +
                   std::to_string(outcome.failures.size()));
        for (const CellFailure& f : outcome.failures) {
            std::cerr << "cell " << f.graph << "/" << f.target << "/" << f.combo << "/s" << f.seed
                      << " failed: " << f.message << '\n';
        }
        global.say("wrote " + (plan.out_dir / "results.csv").string());
        return outcome.failures.empty() ? 0 : 2;
    }

    static void read_plan_json(const nlohmann::json& j, ExperimentPlan& plan) {
        try {
            if (j.contains("graphs")) {
                for (const auto& gj : j.at("graphs")) {
                    GraphSource source;
                    source.name = gj.at("name").get<std::string>();
                    source.spec = gj.at("spec").get<std::string>();
                    if (gj.contains("coords")) {
                        source.coords = gj.at("coords").get<std::string>();
                    }
                    plan.graphs.push_back(std::move(source));
                }
            }
            if (j.contains("targets")) {
                plan.targets = j.at("targets").get<std::vector<std::string>>();
            }
            if (j.contains("combos")) {
                for (const auto& cj : j.at("combos")) {
                    plan.combos.push_back(combo_from_string(cj.get<std::string>()));
                }
            }
            if (j.contains("seeds")) {
                plan.seeds = j.at("seeds").get<std::vector<std::uint64_t>>();
            }
            if (j.contains("threads")) plan.threads = j.at("threads").get<int>();
            if (j.contains("layout_seed")) {
                plan.layout_seed = j.at("layout_seed").get<std::uint64_t>();
            }
            if (j.contains("layout_iterations")) {
                plan.layout_iterations = j.at("layout_iterations").get<int>();
            }
        } catch (const nlohmann::json::exception& e) {
            throw input_error(std::string("bad experiment config: ") + e.what());
        }
    }
};

// --------------------------------------------------------------- sequence

struct SequenceCmd {
    std::string graph;
    std::string coords;
    std::vector<std::string> frames;
    std::string qm = "ELD";
    bool no_chain = false;
    bool rebaseline = false;
    AnnealFlags flags;

    int run(const GlobalOptions& global) {
        const GraphSource source = parse_graph_argument(graph);
        const Graph g = load_graph_source(source);
        const Drawing start = start_drawing(g, coords, 300, 1);
        const DistanceMatrix dist = shortest_paths(g);
        AnnealConfig cfg = config_from_file(global);
        flags.apply(cfg, global);

        FrameSequence sequence;
        for (const std::string& text : frames) {
            std::istringstream in(text);
            std::string item;
            while (std::getline(in, item, ',')) {
                if (!item.empty()) {
                    sequence.frame_files.push_back(item);
                }
            }
        }
        sequence.chaining = !no_chain;
        sequence.rebaseline_each_frame = rebaseline;

        const std::vector<MetricId> constraints = combo_from_string(qm);
        const auto results =
            run_sequence(g, start, dist, sequence, constraints, cfg, global.out_dir);
        for (std::size_t k = 0; k < results.size(); ++k) {
            global.say("frame " + std::to_string(k) + " percent " +
                       fmt(results[k].final_percent));
        }
        global.say("wrote " + std::to_string(results.size()) + " frames under " + global.out_dir);
        return 0;
    }
};

// ---------------------------------------------------------------- analyze

struct AnalyzeCmd {
    std::string results;
    std::vector<std::string> axes;
    double alpha = 0.05;

    int run(const GlobalOptions& global) {
        const ExperimentGrid grid = load_grid(results);
        const bool axes_defaulted = axes.empty();
        if (axes_defaulted) {
            axes = {"combo", "target", "graph"};
        }
        fs::create_directories(global.out_dir);
        for (const std::string& axis_name : axes) {
            const GridAxis axis = axis_from_string(axis_name);
            SignificanceMatrix m;
            try {
                m = significance_matrix(grid, axis, alpha);
            } catch (const input_error& e) {
                // A defaulted axis the grid cannot support (say, a single
                // graph) is skipped; an explicitly requested one still fails.
                if (!axes_defaulted) throw;
                global.say(std::string("skipped ") + to_string(axis) + " axis: " + e.what());
                continue;
            }
            const fs::path csv =
                fs::path(global.out_dir) / ("matrix_" + to_string(axis) + ".csv");
            const fs::path svg =
                fs::path(global.out_dir) / ("matrix_" + to_string(axis) + ".svg");
            save_matrix_csv(csv, m);
            save_matrix_svg(svg, m);
            int significant = 0;
            for (char flag : m.significant) {
                significant += flag;
            }
            global.say(to_string(axis) + " axis: " + std::to_string(m.levels.size()) +
                       " levels, " + std::to_string(significant) + " significant cells");
            global.say("wrote " + csv.string());
            global.say("wrote " + svg.string());
        }
        return 0;
    }

    static ExperimentGrid load_grid(const std::string& path) {
        const fs::path p(path);
        if (!fs::exists(p)) {
            throw input_error("results path '" + path + "' does not exist");
        }
        if (fs::is_regular_file(p)) {
            return load_grid_csv(p);
        }
        // A results directory: prefer the consolidated CSV, else gather
        // labeled result JSONs.
        if (fs::exists(p / "results.csv")) {
            return load_grid_csv(p / "results.csv");
        }
        ExperimentGrid grid;
        std::vector<fs::path> files;
        for (const fs::path dir : {p / "results", p}) {
            if (!fs::is_directory(dir)) continue;
            for (const auto& entry : fs::directory_iterator(dir)) {
                if (entry.is_regular_file() && entry.path().extension() == ".json") {
                    files.push_back(entry.path());
                }
            }
            if (!files.empty()) break;
        }
        std::sort(files.begin(), files.end());
        for (const fs::path& file : files) {
            const LoadedResult loaded = load_result(file);
            if (!loaded.has_labels) {
                throw input_error("result file '" + file.string() +
                                  "' carries no cell label; analyze needs labeled results");
            }
            grid.records.push_back({loaded.labels.graph, loaded.labels.target,
                                    loaded.labels.combo, loaded.result.config.seed,
                                    loaded.result.final_percent});
        }
        if (grid.records.empty()) {
            throw input_error("no results found under '" + path + "'");
        }
        return grid;
    }
};

// ----------------------------------------------------------------- render

struct RenderCmd {
    std::string graph;
    std::string coords;
    bool png = false;
    int size = 600;

    int run(const GlobalOptions& global) {
        const GraphSource source = parse_graph_argument(graph);
        const Graph g = load_graph_source(source);
        const Drawing d = start_drawing(g, coords, 300, 1);
        RenderOptions options;
        options.size_px = size;
        fs::create_directories(global.out_dir);
        const fs::path svg = fs::path(global.out_dir) / (source.name + ".svg");
        render_svg(d, g, svg, options);
        global.say("wrote " + svg.string());
        if (png) {
            const fs::path png_path = fs::path(global.out_dir) / (source.name + ".png");
            render_png(d, g, png_path, options);
            global.say("wrote " + png_path.string());
        }
        return 0;
    }
};

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Morph graph drawings toward target shapes under metric constraints"};
    app.require_subcommand(1);
    app.fallthrough();  // allow the global flags after the subcommand too

    GlobalOptions global;
    global.seed_opt = app.add_option("--seed", global.seed, "Base random seed");
    app.add_option("--config", global.config_file, "JSON config file");
    app.add_option("--out", global.out_dir, "Output directory");
    app.add_flag("--quiet", global.quiet, "Suppress progress output");

    LayoutCmd layout_cmd;
    CLI::App* layout_app = app.add_subcommand("layout", "Compute a start layout for a graph");
    layout_app->add_option("--graph", layout_cmd.graph, "Edge list file or generator spec")
        ->required();
    layout_app->add_option("--coords-out", layout_cmd.coords_out, "Where to write the CSV");
    layout_app->add_option("--iterations", layout_cmd.iterations, "Layout iterations");

    MetricsCmd metrics_cmd;
    CLI::App* metrics_app = app.add_subcommand("metrics", "Report all four quality metrics");
    metrics_app->add_option("--graph", metrics_cmd.graph, "Edge list file or generator spec")
        ->required();
    metrics_app->add_option("--coords", metrics_cmd.coords, "Coordinates CSV")->required();

    ShapesEmitCmd shapes_cmd;
    CLI::App* shapes_app = app.add_subcommand("shapes", "Target shape utilities");
    shapes_app->require_subcommand(1);
    CLI::App* emit_app = shapes_app->add_subcommand("emit", "Write a generated shape as CSV");
    emit_app->add_option("label", shapes_cmd.label, "X, VERT, HOR, O, DINO, or GRID")->required();
    emit_app->add_option("n", shapes_cmd.n, "Point count (>= 4)")->required();

    MorphCmd morph_cmd;
    CLI::App* morph_app = app.add_subcommand("morph", "Run a single morph");
    morph_app->add_option("--graph", morph_cmd.graph, "Edge list file or generator spec")
        ->required();
    morph_app->add_option("--coords", morph_cmd.coords, "Start coordinates CSV");
    morph_app->add_option("--target", morph_cmd.target, "Shape label or target CSV")->required();
    morph_app->add_option("--qm", morph_cmd.qm, "Constrained metrics, e.g. ELD or ST+CN");
    morph_cmd.flags.attach(morph_app);

    ExperimentCmd experiment_cmd;
    CLI::App* experiment_app = app.add_subcommand("experiment", "Run a full morphing grid");
    experiment_app->add_option("--graph", experiment_cmd.graphs, "name=spec (repeatable)");
    experiment_app
        ->add_option("--graph-coords", experiment_cmd.graph_coords, "name=csv (repeatable)");
    experiment_app->add_option("--target", experiment_cmd.targets,
                               "Shape label or CSV (repeatable; default all six)");
    experiment_app->add_option("--qm", experiment_cmd.qms,
                               "Metric combination (repeatable; default all 15)");
    experiment_app->add_option("--seeds", experiment_cmd.seeds_text, "Comma list of seeds");
    experiment_app->add_option("--seed-count", experiment_cmd.seed_count, "Use seeds 1..k");
    experiment_app->add_flag("--force", experiment_cmd.force, "Recompute existing cells");
    experiment_app->add_option("--threads", experiment_cmd.threads, "Concurrent cells");
    experiment_cmd.flags.attach(experiment_app);

    SequenceCmd sequence_cmd;
    CLI::App* sequence_app = app.add_subcommand("sequence", "Morph through target frames");
    sequence_app->add_option("--graph", sequence_cmd.graph, "Edge list file or generator spec")
        ->required();
    sequence_app->add_option("--coords", sequence_cmd.coords, "Start coordinates CSV");
    sequence_app->add_option("--frames", sequence_cmd.frames,
                             "Frame CSVs, comma separated (repeatable)")
        ->required();
    sequence_app->add_option("--qm", sequence_cmd.qm, "Constrained metrics");
    sequence_app->add_flag("--no-chain", sequence_cmd.no_chain,
                           "Start every frame from the original drawing");
    sequence_app->add_flag("--rebaseline", sequence_cmd.rebaseline,
                           "Measure metric bands per frame instead of once");
    sequence_cmd.flags.attach(sequence_app);

    AnalyzeCmd analyze_cmd;
    CLI::App* analyze_app = app.add_subcommand("analyze", "Significance matrices from results");
    analyze_app->add_option("--results", analyze_cmd.results, "Results directory or CSV")
        ->required();
    analyze_app->add_option("--axis", analyze_cmd.axes,
                            "combo, target, or graph (repeatable; default all)");
    analyze_app->add_option("--alpha", analyze_cmd.alpha, "Significance level");

    RenderCmd render_cmd;
    CLI::App* render_app = app.add_subcommand("render", "Render a drawing to SVG/PNG");
    render_app->add_option("--graph", render_cmd.graph, "Edge list file or generator spec")
        ->required();
    render_app->add_option("--coords", render_cmd.coords, "Coordinates CSV");
    render_app->add_flag("--png", render_cmd.png, "Also write a PNG");
    render_app->add_option("--size", render_cmd.size, "Canvas size in pixels");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    }

    try {
        if (layout_app->parsed()) return layout_cmd.run(global);
        if (metrics_app->parsed()) return metrics_cmd.run(global);
        if (shapes_app->parsed()) return shapes_cmd.run(global);
        if (morph_app->parsed()) return morph_cmd.run(global);
        if (experiment_app->parsed()) return experiment_cmd.run(global);
        if (sequence_app->parsed()) return sequence_cmd.run(global);
        if (analyze_app->parsed()) return analyze_cmd.run(global);
        if (render_app->parsed()) return render_cmd.run(global);
        std::cerr << "no subcommand selected\n";
        return 1;
    } catch (const input_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    } catch (const std::exception& e) {
        std::cerr << "failure: " << e.what() << '\n';
        return 2;
    }
}
