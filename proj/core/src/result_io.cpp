#include "gdmorph/result_io.hpp"

#include <cmath>
#include <fstream>
#include <limits>

#include "gdmorph/errors.hpp"

namespace gdmorph {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

constexpr const char* kSchemaTag = "morph-result-v1";

// NaN serializes as null; read it back as NaN.
double num_or_nan(const json& j) {
    return j.is_null() ? std::numeric_limits<double>::quiet_NaN() : j.get<double>();
}

ordered_json metric_vector(const std::vector<double>& values) {
    ordered_json arr = ordered_json::array();
    for (double v : values) arr.push_back(v);
    return arr;
}

std::vector<double> metric_vector(const json& arr) {
    std::vector<double> out;
    out.reserve(arr.size());
    for (const auto& v : arr) out.push_back(num_or_nan(v));
    return out;
}

}  // namespace

ordered_json config_to_json(const AnnealConfig& cfg) {
    ordered_json j;
    j["n_max"] = cfg.n_max;
    j["t_init"] = cfg.t_init;
    j["t_final"] = cfg.t_final;
    j["subset_divisor"] = cfg.subset_divisor;
    j["step_scale"] = cfg.step_scale;
    j["step_clip"] = cfg.step_clip;
    ordered_json eps;
    for (const auto& [id, value] : cfg.epsilons) {
        eps[to_string(id)] = value;
    }
    j["epsilons"] = eps;
    j["cn_epsilon_factor"] = cfg.cn_epsilon_factor;
    j["seed"] = cfg.seed;
    j["similarity"] = to_string(cfg.similarity_kind);
    j["clamp_to_unit_box"] = cfg.clamp_to_unit_box;
    j["trace_stride"] = cfg.trace_stride;
    j["use_incremental"] = cfg.use_incremental;
    return j;
}

AnnealConfig config_from_json(const json& j) {
    AnnealConfig cfg;
    try {
        if (j.contains("n_max")) cfg.n_max = j.at("n_max").get<int>();
        if (j.contains("t_init")) cfg.t_init = j.at("t_init").get<double>();
        if (j.contains("t_final")) cfg.t_final = j.at("t_final").get<double>();
        if (j.contains("subset_divisor")) cfg.subset_divisor = j.at("subset_divisor").get<int>();
        if (j.contains("step_scale")) cfg.step_scale = j.at("step_scale").get<double>();
        if (j.contains("step_clip")) cfg.step_clip = j.at("step_clip").get<double>();
        if (j.contains("epsilons")) {
            for (const auto& [key, value] : j.at("epsilons").items()) {
                cfg.epsilons[metric_from_string(key)] = value.get<double>();
            }
        }
        if (j.contains("cn_epsilon_factor")) {
            cfg.cn_epsilon_factor = j.at("cn_epsilon_factor").get<double>();
        }
        if (j.contains("seed")) cfg.seed = j.at("seed").get<std::uint64_t>();
        if (j.contains("similarity")) {
            cfg.similarity_kind = similarity_from_string(j.at("similarity").get<std::string>());
        }
        if (j.contains("clamp_to_unit_box")) {
            cfg.clamp_to_unit_box = j.at("clamp_to_unit_box").get<bool>();
        }
        if (j.contains("trace_stride")) cfg.trace_stride = j.at("trace_stride").get<int>();
        if (j.contains("use_incremental")) {
            cfg.use_incremental = j.at("use_incremental").get<bool>();
        }
    } catch (const json::exception& e) {
        throw input_error(std::string("bad config value: ") + e.what());
    }
    return cfg;
}

ordered_json result_to_json(const MorphResult& result, const CellLabels* labels) {
    ordered_json j;
    j["schema"] = kSchemaTag;
    if (labels != nullptr) {
        ordered_json lab;
        lab["graph"] = labels->graph;
        lab["target"] = labels->target;
        lab["combo"] = labels->combo;
        j["label"] = lab;
    }
    j["seed"] = result.config.seed;
    j["config"] = config_to_json(result.config);
    ordered_json constraints = ordered_json::array();
    for (MetricId id : result.constraints) {
        constraints.push_back(to_string(id));
    }
    j["constraints"] = constraints;
    ordered_json baseline;
    baseline["loss"] = result.baseline_loss;
    baseline["metrics"] = metric_vector(result.baseline_metrics);
    j["baseline"] = baseline;
    j["epsilons"] = metric_vector(result.epsilons);
    ordered_json summary;
    summary["final_loss"] = result.final_loss;
    summary["final_percent"] = result.final_percent;
    summary["final_metrics"] = metric_vector(result.final_metrics);
    summary["accepted"] = result.accepted_count;
    summary["escapes"] = result.escape_count;
    j["summary"] = summary;
    // One row per recorded iteration:
    // [iteration, temperature, loss, percent, accepted, escape, [metrics...]]
    ordered_json trace = ordered_json::array();
    for (const TraceRecord& rec : result.trace) {
        ordered_json row = ordered_json::array();
        row.push_back(rec.iteration);
        row.push_back(rec.temperature);
        row.push_back(rec.loss);
        row.push_back(rec.percent);
        row.push_back(rec.accepted);
        row.push_back(rec.escape);
        row.push_back(metric_vector(rec.metrics));
        trace.push_back(std::move(row));
    }
    j["trace"] = std::move(trace);
    ordered_json coords = ordered_json::array();
    for (const Vec2& p : result.final.pts) {
        coords.push_back(ordered_json::array({p.x, p.y}));
    }
    j["final_coords"] = std::move(coords);
    return j;
}

void save_result(const std::filesystem::path& path, const MorphResult& result,
                 const CellLabels* labels) {
    std::ofstream out(path);
    if (!out) {
        throw input_error("cannot write result file '" + path.string() + "'");
    }
    out << result_to_json(result, labels).dump() << '\n';
    if (!out) {
        throw std::runtime_error("failed writing result file '" + path.string() + "'");
    }
}

LoadedResult load_result(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw input_error("cannot open result file '" + path.string() + "'");
    }
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw input_error("malformed result file '" + path.string() + "': " + e.what());
    }
    try {
        if (!j.contains("schema") || j.at("schema").get<std::string>() != kSchemaTag) {
            throw input_error("result file '" + path.string() + "' has an unexpected schema");
        }
        LoadedResult loaded;
        if (j.contains("label")) {
            const auto& lab = j.at("label");
            loaded.labels.graph = lab.at("graph").get<std::string>();
            loaded.labels.target = lab.at("target").get<std::string>();
            loaded.labels.combo = lab.at("combo").get<std::string>();
            loaded.has_labels = true;
        }
        MorphResult& r = loaded.result;
        r.config = config_from_json(j.at("config"));
        for (const auto& name : j.at("constraints")) {
            r.constraints.push_back(metric_from_string(name.get<std::string>()));
        }
        r.baseline_loss = j.at("baseline").at("loss").get<double>();
        r.baseline_metrics = metric_vector(j.at("baseline").at("metrics"));
        r.epsilons = metric_vector(j.at("epsilons"));
        const auto& summary = j.at("summary");
        r.final_loss = summary.at("final_loss").get<double>();
        r.final_percent = summary.at("final_percent").get<double>();
        r.final_metrics = metric_vector(summary.at("final_metrics"));
        r.accepted_count = summary.at("accepted").get<int>();
        r.escape_count = summary.at("escapes").get<int>();
        for (const auto& row : j.at("trace")) {
            TraceRecord rec;
            rec.iteration = row.at(0).get<int>();
            rec.temperature = row.at(1).get<double>();
            rec.loss = row.at(2).get<double>();
            rec.percent = row.at(3).get<double>();
            rec.accepted = row.at(4).get<bool>();
            rec.escape = row.at(5).get<bool>();
            rec.metrics = metric_vector(row.at(6));
            r.trace.push_back(std::move(rec));
        }
        for (const auto& p : j.at("final_coords")) {
            r.final.pts.push_back({p.at(0).get<double>(), p.at(1).get<double>()});
        }
        return loaded;
    } catch (const json::exception& e) {
        throw input_error("result file '" + path.string() + "' is missing fields: " + e.what());
    }
}

}  // namespace gdmorph
