#include "gdmorph/experiment.hpp"

#include <algorithm>
#include <atomic>
#include <cctype>
#include <map>
#include <mutex>
#include <optional>
#include <set>
#include <sstream>
#include <thread>

#include "gdmorph/errors.hpp"
#include "gdmorph/generators.hpp"
#include "gdmorph/io.hpp"
#include "gdmorph/layout.hpp"
#include "gdmorph/render.hpp"
#include "gdmorph/result_io.hpp"

namespace gdmorph {

namespace {

namespace fs = std::filesystem;

std::string sanitize(const std::string& name) {
    std::string out;
    for (char c : name) {
        const bool ok = std::isalnum(static_cast<unsigned char>(c)) || c == '-' || c == '_' ||
                        c == '+' || c == '.';
        out += ok ? c : '_';
    }
    return out.empty() ? std::string("unnamed") : out;
}

std::map<std::string, std::string> parse_kv(const std::string& text) {
    std::map<std::string, std::string> out;
    std::istringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        const auto eq = item.find('=');
        if (eq == std::string::npos || eq == 0) {
            throw input_error("expected key=value, got '" + item + "'");
        }
        out[item.substr(0, eq)] = item.substr(eq + 1);
    }
    return out;
}

int to_int(const std::map<std::string, std::string>& kv, const std::string& key, int fallback) {
    const auto it = kv.find(key);
    if (it == kv.end()) return fallback;
    try {
        return std::stoi(it->second);
    } catch (const std::exception&) {
        throw input_error("bad integer for '" + key + "': " + it->second);
    }
}

double to_double(const std::map<std::string, std::string>& kv, const std::string& key,
                 double fallback) {
    const auto it = kv.find(key);
    if (it == kv.end()) return fallback;
    try {
        return std::stod(it->second);
    } catch (const std::exception&) {
        throw input_error("bad number for '" + key + "': " + it->second);
    }
}

bool looks_like_file(const std::string& target) {
    return target.find('/') != std::string::npos || target.find('.') != std::string::npos;
}

struct TargetSource {
    std::string label;        // cell label (shape name or file stem)
    ShapeLabel shape = ShapeLabel::Custom;
    std::string file;         // nonempty for custom targets

    TargetShape materialize(int n) const {
        if (file.empty()) {
            return generate(shape, n);
        }
        TargetShape t = load_target(file);
        if (t.size() != n) {
            throw input_error("target '" + file + "' has " + std::to_string(t.size()) +
                              " points but the graph has " + std::to_string(n) + " nodes");
        }
        return t;
    }
};

TargetSource parse_target(const std::string& text) {
    TargetSource src;
    if (!looks_like_file(text)) {
        try {
            src.shape = shape_from_string(text);
            src.label = to_string(src.shape);
            return src;
        } catch (const input_error&) {
            // fall through: treat as a file
        }
    }
    src.file = text;
    src.label = sanitize(fs::path(text).stem().string());
    return src;
}

struct Cell {
    int graph_index;
    int target_index;
    int combo_index;
    std::uint64_t seed;
    int order;  // position in plan order
};

}  // namespace

Graph load_graph_source(const GraphSource& source) {
    if (source.spec.rfind("ba:", 0) == 0) {
        const auto kv = parse_kv(source.spec.substr(3));
        return dual_barabasi_albert(to_int(kv, "n", 140), to_int(kv, "m1", 1),
                                    to_int(kv, "m2", 2), to_double(kv, "p", 0.75),
                                    static_cast<std::uint64_t>(to_int(kv, "seed", 1)));
    }
    if (source.spec.rfind("grid:", 0) == 0) {
        const std::string dims = source.spec.substr(5);
        const auto x = dims.find('x');
        if (x == std::string::npos) {
            throw input_error("grid spec must look like grid:RxC, got '" + source.spec + "'");
        }
        try {
            return grid_graph(std::stoi(dims.substr(0, x)), std::stoi(dims.substr(x + 1)));
        } catch (const std::invalid_argument&) {
            throw input_error("grid spec must look like grid:RxC, got '" + source.spec + "'");
        }
    }
    return load_edge_list(source.spec);
}

ExperimentOutcome run_experiment(const ExperimentPlan& plan) {
    if (plan.graphs.empty() || plan.targets.empty()) {
        throw input_error("experiment plan needs at least one graph and one target");
    }
    plan.config.validate();
    const std::vector<std::vector<MetricId>> combos =
        plan.combos.empty() ? all_metric_combos() : plan.combos;
    for (const auto& combo : combos) {
        if (combo.empty()) {
            throw input_error("experiment plan contains an empty metric combination");
        }
    }
    std::vector<std::uint64_t> seeds = plan.seeds;
    if (seeds.empty()) {
        seeds = {1, 2, 3, 4, 5};
    }

    // Every plan axis must keep distinct identities: cells are keyed by
    // (graph, target, combo, seed) both on disk and in the results
    // table, so a colliding label would silently alias two cells onto
    // one result file. Checked before anything lands on disk.
    {
        std::set<std::string> graph_names;
        for (const GraphSource& source : plan.graphs) {
            if (!graph_names.insert(sanitize(source.name)).second) {
                throw input_error("duplicate graph name '" + source.name +
                                  "' in experiment plan; give each graph a unique name");
            }
        }
        std::set<std::string> target_labels;
        for (const std::string& t : plan.targets) {
            const std::string label = parse_target(t).label;
            if (!target_labels.insert(label).second) {
                throw input_error("duplicate target label '" + label +
                                  "' in experiment plan");
            }
        }
        std::set<std::string> combo_names;
        for (const auto& combo : combos) {
            const std::string name = combo_to_string(combo);
            if (!combo_names.insert(name).second) {
                throw input_error("duplicate metric combination '" + name +
                                  "' in experiment plan");
            }
        }
        const std::set<std::uint64_t> seed_set(seeds.begin(), seeds.end());
        if (seed_set.size() != seeds.size()) {
            throw input_error("duplicate seed in experiment plan");
        }
    }

    fs::create_directories(plan.out_dir / "results");
    fs::create_directories(plan.out_dir / "svg");

    // Load every graph and fix its start drawing up front; failures
    // here are configuration problems and abort the whole run.
    struct PreparedGraph {
        std::string label;
        Graph graph;
        DistanceMatrix dist;
        Drawing start;
    };
    std::vector<PreparedGraph> prepared;
    prepared.reserve(plan.graphs.size());
    for (const GraphSource& source : plan.graphs) {
        Graph g = load_graph_source(source);
        DistanceMatrix dist = shortest_paths(g);  // also rejects disconnected graphs
        Drawing start = source.coords.empty()
                            ? force_layout(g, plan.layout_iterations, plan.layout_seed)
                            : normalize(load_coords_csv(source.coords));
        if (start.size() != g.node_count()) {
            throw input_error("coords for graph '" + source.name + "' have " +
                              std::to_string(start.size()) + " rows, expected " +
                              std::to_string(g.node_count()));
        }
        PreparedGraph p{sanitize(source.name), std::move(g), std::move(dist), std::move(start)};
        render_svg(p.start, p.graph, plan.out_dir / "svg" / (p.label + "__start.svg"));
        prepared.push_back(std::move(p));
    }

    std::vector<TargetSource> targets;
    targets.reserve(plan.targets.size());
    for (const std::string& t : plan.targets) {
        targets.push_back(parse_target(t));
    }

    std::vector<Cell> cells;
    int order = 0;
    for (int gi = 0; gi < static_cast<int>(prepared.size()); ++gi) {
        for (int ti = 0; ti < static_cast<int>(targets.size()); ++ti) {
            for (int ci = 0; ci < static_cast<int>(combos.size()); ++ci) {
                for (std::uint64_t seed : seeds) {
                    cells.push_back({gi, ti, ci, seed, order++});
                }
            }
        }
    }

    ExperimentOutcome outcome;
    std::vector<std::optional<GridRecord>> slots(cells.size());
    std::mutex sink;
    std::atomic<std::size_t> next{0};
    std::atomic<int> computed{0};
    std::atomic<int> skipped{0};

    const auto worker = [&]() {
        for (std::size_t at = next.fetch_add(1); at < cells.size(); at = next.fetch_add(1)) {
            const Cell& cell = cells[at];
            const PreparedGraph& pg = prepared[cell.graph_index];
            const TargetSource& ts = targets[cell.target_index];
            const std::string combo_name = combo_to_string(combos[cell.combo_index]);
            const std::string stem = pg.label + "__" + ts.label + "__" + combo_name + "__s" +
                                     std::to_string(cell.seed);
            const fs::path result_path = plan.out_dir / "results" / (stem + ".json");
            try {
                double cell_percent = 0.0;
                if (!plan.force && fs::exists(result_path)) {
                    // Reuse only a file that really is this cell's
                    // result; anything else on the name is stale or
                    // foreign and must not masquerade as a record.
                    const LoadedResult loaded = load_result(result_path);
                    if (loaded.has_labels &&
                        (loaded.labels.graph != pg.label || loaded.labels.target != ts.label ||
                         loaded.labels.combo != combo_name)) {
                        throw input_error(
                            "existing result '" + stem + ".json' describes cell " +
                            loaded.labels.graph + "/" + loaded.labels.target + "/" +
                            loaded.labels.combo + "; rerun with force to replace it");
                    }
                    if (loaded.result.config.seed != cell.seed) {
                        throw input_error("existing result '" + stem + ".json' used seed " +
                                          std::to_string(loaded.result.config.seed) +
                                          ", expected " + std::to_string(cell.seed) +
                                          "; rerun with force to replace it");
                    }
                    cell_percent = loaded.result.final_percent;
                    skipped.fetch_add(1);
                } else {
                    const TargetShape target = ts.materialize(pg.graph.node_count());
                    AnnealConfig cfg = plan.config;
                    cfg.seed = cell.seed;
                    const MorphResult result = morph(pg.graph, pg.start, pg.dist, target,
                                                     combos[cell.combo_index], cfg);
                    const CellLabels labels{pg.label, ts.label, combo_name};
                    save_result(result_path, result, &labels);
                    render_svg(result.final, pg.graph,
                               plan.out_dir / "svg" / (stem + ".svg"));
                    cell_percent = result.final_percent;
                    computed.fetch_add(1);
                }
                std::lock_guard<std::mutex> hold(sink);
                slots[cell.order] =
                    GridRecord{pg.label, ts.label, combo_name, cell.seed, cell_percent};
            } catch (const std::exception& e) {
                std::lock_guard<std::mutex> hold(sink);
                outcome.failures.push_back(
                    {pg.label, ts.label, combo_name, cell.seed, e.what()});
            }
        }
    };

    unsigned thread_count = plan.threads > 0
                                ? static_cast<unsigned>(plan.threads)
                                : std::max(1u, std::thread::hardware_concurrency());
    thread_count = std::min<unsigned>(thread_count, cells.empty() ? 1 : cells.size());
    if (thread_count <= 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        pool.reserve(thread_count);
        for (unsigned i = 0; i < thread_count; ++i) {
            pool.emplace_back(worker);
        }
        for (std::thread& t : pool) {
            t.join();
        }
    }

    for (auto& slot : slots) {
        if (slot) {
            outcome.grid.records.push_back(std::move(*slot));
        }
    }
    outcome.computed = computed.load();
    outcome.skipped = skipped.load();
    save_grid_csv(plan.out_dir / "results.csv", outcome.grid);
    return outcome;
}

std::vector<MorphResult> run_sequence(const Graph& g, const Drawing& start,
                                      const DistanceMatrix& dist, const FrameSequence& frames,
                                      std::span<const MetricId> constraints,
                                      const AnnealConfig& cfg, const std::filesystem::path& out_dir) {
    if (frames.frame_files.empty()) {
        throw input_error("frame sequence is empty");
    }
    cfg.validate();
    std::vector<TargetShape> targets;
    targets.reserve(frames.frame_files.size());
    for (const std::string& file : frames.frame_files) {
        TargetShape t = load_target(file);
        if (t.size() != start.size()) {
            throw input_error("frame '" + file + "' has " + std::to_string(t.size()) +
                              " points but the drawing has " + std::to_string(start.size()));
        }
        targets.push_back(std::move(t));
    }

    const std::vector<double> baseline_metrics = evaluate(constraints, g, start, dist);
    std::vector<double> epsilons;
    epsilons.reserve(constraints.size());
    for (std::size_t j = 0; j < constraints.size(); ++j) {
        epsilons.push_back(resolved_epsilon(cfg, constraints[j], baseline_metrics[j]));
    }

    if (!out_dir.empty()) {
        fs::create_directories(out_dir);
    }

    std::vector<MorphResult> results;
    results.reserve(targets.size());
    Drawing current = start;
    for (std::size_t k = 0; k < targets.size(); ++k) {
        AnnealConfig frame_cfg = cfg;
        frame_cfg.seed = cfg.seed + k;
        detail::MorphOverrides overrides;
        if (!frames.rebaseline_each_frame) {
            overrides.baseline_metrics = &baseline_metrics;
            overrides.epsilons = &epsilons;
            overrides.baseline_loss =
                sim(frame_cfg.similarity_kind, start.pts, targets[k].points);
        }
        overrides.skip_normalized_check = frames.chaining && k > 0;
        MorphResult result = detail::morph_with(g, current, dist, targets[k], constraints,
                                                frame_cfg, overrides);
        if (!out_dir.empty()) {
            const std::string stem = "frame_" + std::to_string(k);
            render_svg(result.final, g, out_dir / (stem + ".svg"));
            save_result(out_dir / (stem + ".json"), result);
        }
        if (frames.chaining) {
            current = result.final;
        }
        results.push_back(std::move(result));
    }
    return results;
}

}  // namespace gdmorph
