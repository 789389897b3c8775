#pragma once

#include <filesystem>
#include <string>

#include <nlohmann/json.hpp>

#include "gdmorph/annealer.hpp"

namespace gdmorph {

// Which experiment cell a result belongs to; stored inside the JSON so
// analysis can read result files without trusting their names.
struct CellLabels {
    std::string graph;
    std::string target;
    std::string combo;
};

nlohmann::ordered_json config_to_json(const AnnealConfig& cfg);

// Lenient: absent fields keep their defaults, unknown fields are
// ignored; malformed values throw input_error.
AnnealConfig config_from_json(const nlohmann::json& j);

nlohmann::ordered_json result_to_json(const MorphResult& result, const CellLabels* labels);

// Serialize a run. Rewriting the same result produces byte-identical
// files: wall time is not stored, doubles print at full round-trip
// precision, and key order is fixed.
void save_result(const std::filesystem::path& path, const MorphResult& result,
                 const CellLabels* labels = nullptr);

struct LoadedResult {
    MorphResult result;
    CellLabels labels;
    bool has_labels = false;
};

LoadedResult load_result(const std::filesystem::path& path);

}  // namespace gdmorph
