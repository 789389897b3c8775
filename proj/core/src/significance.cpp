#include "gdmorph/significance.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <map>
#include <set>
#include <sstream>
#include <tuple>

#include "gdmorph/errors.hpp"
#include "gdmorph/shapes.hpp"
#include "gdmorph/stats.hpp"

namespace gdmorph {

namespace {

std::string fmt_double(double v) {
    std::ostringstream out;
    out << std::setprecision(17) << v;
    return out.str();
}

int metric_rank(MetricId id) {
    for (std::size_t i = 0; i < std::size(kAllMetrics); ++i) {
        if (kAllMetrics[i] == id) return static_cast<int>(i);
    }
    return static_cast<int>(std::size(kAllMetrics));
}

// (size, lexicographic by metric order); unparsable names sort last.
struct ComboKey {
    bool parsed = false;
    std::vector<int> members;
    std::string raw;

    bool operator<(const ComboKey& other) const {
        if (parsed != other.parsed) return parsed;
        if (!parsed) return raw < other.raw;
        if (members.size() != other.members.size()) return members.size() < other.members.size();
        if (members != other.members) return members < other.members;
        return raw < other.raw;
    }
};

ComboKey combo_key(const std::string& name) {
    ComboKey key;
    key.raw = name;
    try {
        for (MetricId id : combo_from_string(name)) {
            key.members.push_back(metric_rank(id));
        }
        key.parsed = true;
    } catch (const input_error&) {
        key.members.clear();
    }
    return key;
}

int target_rank(const std::string& name) {
    for (std::size_t i = 0; i < kBuiltinShapes.size(); ++i) {
        if (name == to_string(kBuiltinShapes[i])) return static_cast<int>(i);
    }
    return static_cast<int>(kBuiltinShapes.size());
}

std::vector<std::string> ordered_levels(const ExperimentGrid& grid, GridAxis axis) {
    std::set<std::string> seen;
    for (const GridRecord& rec : grid.records) {
        switch (axis) {
        case GridAxis::Combo: seen.insert(rec.combo); break;
        case GridAxis::Target: seen.insert(rec.target); break;
        case GridAxis::Graph: seen.insert(rec.graph); break;
        }
    }
    std::vector<std::string> levels(seen.begin(), seen.end());
    if (axis == GridAxis::Combo) {
        std::sort(levels.begin(), levels.end(), [](const std::string& a, const std::string& b) {
            return combo_key(a) < combo_key(b);
        });
    } else if (axis == GridAxis::Target) {
        std::sort(levels.begin(), levels.end(), [](const std::string& a, const std::string& b) {
            return std::make_pair(target_rank(a), a) < std::make_pair(target_rank(b), b);
        });
    }
    return levels;
}

const std::string& axis_field(const GridRecord& rec, GridAxis axis) {
    switch (axis) {
    case GridAxis::Combo: return rec.combo;
    case GridAxis::Target: return rec.target;
    case GridAxis::Graph: return rec.graph;
    }
    return rec.combo;
}

// Everything identifying a record except the tested axis; seeds pair
// runs across conditions.
std::string block_key(const GridRecord& rec, GridAxis axis) {
    std::string key;
    if (axis != GridAxis::Graph) key += rec.graph;
    key += '\x1f';
    if (axis != GridAxis::Target) key += rec.target;
    key += '\x1f';
    if (axis != GridAxis::Combo) key += rec.combo;
    key += '\x1f';
    key += std::to_string(rec.seed);
    return key;
}

}  // namespace

void ExperimentGrid::validate() const {
    std::set<std::tuple<std::string, std::string, std::string, std::uint64_t>> keys;
    for (const GridRecord& rec : records) {
        if (!std::isfinite(rec.percent)) {
            throw input_error("grid record " + rec.graph + "/" + rec.target + "/" + rec.combo +
                              " has a non-finite percent");
        }
        if (!keys.emplace(rec.graph, rec.target, rec.combo, rec.seed).second) {
            throw input_error("duplicate grid record for " + rec.graph + "/" + rec.target + "/" +
                              rec.combo + " seed " + std::to_string(rec.seed));
        }
    }
}

std::string to_string(GridAxis axis) {
    switch (axis) {
    case GridAxis::Combo: return "combo";
    case GridAxis::Target: return "target";
    case GridAxis::Graph: return "graph";
    }
    return "?";
}

GridAxis axis_from_string(const std::string& name) {
    if (name == "combo" || name == "metric") return GridAxis::Combo;
    if (name == "target" || name == "shape") return GridAxis::Target;
    if (name == "graph") return GridAxis::Graph;
    throw input_error("unknown axis '" + name + "' (expected combo, target, or graph)");
}

std::vector<std::vector<MetricId>> all_metric_combos() {
    std::vector<std::vector<MetricId>> combos;
    for (unsigned mask = 1; mask < 16; ++mask) {
        std::vector<MetricId> combo;
        for (std::size_t i = 0; i < std::size(kAllMetrics); ++i) {
            if (mask & (1u << i)) {
                combo.push_back(kAllMetrics[i]);
            }
        }
        combos.push_back(std::move(combo));
    }
    std::sort(combos.begin(), combos.end(),
              [](const std::vector<MetricId>& a, const std::vector<MetricId>& b) {
                  if (a.size() != b.size()) return a.size() < b.size();
                  return std::lexicographical_compare(
                      a.begin(), a.end(), b.begin(), b.end(),
                      [](MetricId x, MetricId y) { return metric_rank(x) < metric_rank(y); });
              });
    return combos;
}

std::string combo_to_string(std::span<const MetricId> combo) {
    std::string out;
    for (MetricId id : combo) {
        if (!out.empty()) out += '+';
        out += to_string(id);
    }
    return out;
}

std::vector<MetricId> combo_from_string(const std::string& name) {
    std::vector<MetricId> combo;
    std::string token;
    std::istringstream in(name);
    while (std::getline(in, token, '+')) {
        combo.push_back(metric_from_string(token));
    }
    if (combo.empty()) {
        throw input_error("empty metric combination");
    }
    std::sort(combo.begin(), combo.end(),
              [](MetricId a, MetricId b) { return metric_rank(a) < metric_rank(b); });
    if (std::adjacent_find(combo.begin(), combo.end()) != combo.end()) {
        throw input_error("metric combination '" + name + "' repeats a metric");
    }
    return combo;
}

SignificanceMatrix significance_matrix(const ExperimentGrid& grid, GridAxis axis, double alpha) {
    grid.validate();
    SignificanceMatrix m;
    m.axis = to_string(axis);
    m.alpha = alpha;
    m.levels = ordered_levels(grid, axis);
    const int count = static_cast<int>(m.levels.size());
    if (count < 2) {
        throw input_error("significance matrix needs at least 2 levels on the " + m.axis +
                          " axis");
    }

    // level -> (block -> percent) for paired tests; level -> all
    // percents for the independent graph axis.
    std::map<std::string, std::map<std::string, double>> paired;
    std::map<std::string, std::vector<double>> pooled;
    for (const GridRecord& rec : grid.records) {
        const std::string& level = axis_field(rec, axis);
        paired[level][block_key(rec, axis)] = rec.percent;
        pooled[level].push_back(rec.percent);
    }

    m.pvalues.assign(static_cast<std::size_t>(count) * count, 1.0);
    std::vector<double> off_diagonal;
    off_diagonal.reserve(static_cast<std::size_t>(count) * (count - 1));
    for (int r = 0; r < count; ++r) {
        for (int c = 0; c < count; ++c) {
            if (r == c) continue;
            double p = 1.0;
            if (axis == GridAxis::Graph) {
                p = mann_whitney_u(pooled[m.levels[r]], pooled[m.levels[c]]);
            } else {
                std::vector<double> row_vals;
                std::vector<double> col_vals;
                const auto& row_map = paired[m.levels[r]];
                const auto& col_map = paired[m.levels[c]];
                for (const auto& [key, value] : row_map) {
                    if (const auto it = col_map.find(key); it != col_map.end()) {
                        row_vals.push_back(value);
                        col_vals.push_back(it->second);
                    }
                }
                if (row_vals.empty()) {
                    throw input_error("levels '" + m.levels[r] + "' and '" + m.levels[c] +
                                      "' share no blocks; cannot pair samples");
                }
                try {
                    p = wilcoxon_signed_rank(row_vals, col_vals);
                } catch (const input_error&) {
                    p = 1.0;  // too few informative pairs: no evidence
                }
            }
            m.pvalues[r * count + c] = p;
            off_diagonal.push_back(p);
        }
    }

    const BonferroniResult corrected = bonferroni(off_diagonal, alpha);
    m.adjusted.assign(m.pvalues.size(), 1.0);
    m.significant.assign(m.pvalues.size(), 0);
    std::size_t flat = 0;
    for (int r = 0; r < count; ++r) {
        for (int c = 0; c < count; ++c) {
            if (r == c) continue;
            m.adjusted[r * count + c] = corrected.adjusted[flat];
            m.significant[r * count + c] = corrected.reject[flat];
            ++flat;
        }
    }
    return m;
}

void save_grid_csv(const std::filesystem::path& path, const ExperimentGrid& grid) {
    std::ofstream out(path);
    if (!out) {
        throw input_error("cannot write '" + path.string() + "'");
    }
    out << "graph,target,combo,seed,percent\n";
    for (const GridRecord& rec : grid.records) {
        out << rec.graph << ',' << rec.target << ',' << rec.combo << ',' << rec.seed << ','
            << fmt_double(rec.percent) << '\n';
    }
    if (!out) {
        throw std::runtime_error("failed writing '" + path.string() + "'");
    }
}

ExperimentGrid load_grid_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) {
        throw input_error("cannot open '" + path.string() + "'");
    }
    ExperimentGrid grid;
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (line.empty()) continue;
        if (line_no == 1 && line.rfind("graph,", 0) == 0) continue;
        std::istringstream row(line);
        GridRecord rec;
        std::string seed_text;
        std::string percent_text;
        if (!std::getline(row, rec.graph, ',') || !std::getline(row, rec.target, ',') ||
            !std::getline(row, rec.combo, ',') || !std::getline(row, seed_text, ',') ||
            !std::getline(row, percent_text)) {
            throw input_error(path.string() + ":" + std::to_string(line_no) +
                              ": expected graph,target,combo,seed,percent");
        }
        try {
            std::size_t used = 0;
            rec.seed = std::stoull(seed_text, &used);
            if (used != seed_text.size()) throw std::invalid_argument(seed_text);
            rec.percent = std::stod(percent_text, &used);
            if (used != percent_text.size()) throw std::invalid_argument(percent_text);
        } catch (const std::exception&) {
            throw input_error(path.string() + ":" + std::to_string(line_no) +
                              ": malformed seed or percent");
        }
        grid.records.push_back(std::move(rec));
    }
    grid.validate();
    return grid;
}

void save_matrix_csv(const std::filesystem::path& path, const SignificanceMatrix& m) {
    std::ofstream out(path);
    if (!out) {
        throw input_error("cannot write '" + path.string() + "'");
    }
    out << "row,col,p,adjusted,significant\n";
    const int count = static_cast<int>(m.levels.size());
    for (int r = 0; r < count; ++r) {
        for (int c = 0; c < count; ++c) {
            out << m.levels[r] << ',' << m.levels[c] << ',' << fmt_double(m.p(r, c)) << ','
                << fmt_double(m.adjusted[r * count + c]) << ','
                << (m.is_significant(r, c) ? 1 : 0) << '\n';
        }
    }
    if (!out) {
        throw std::runtime_error("failed writing '" + path.string() + "'");
    }
}

void save_matrix_svg(const std::filesystem::path& path, const SignificanceMatrix& m) {
    const int count = static_cast<int>(m.levels.size());
    const int cell = 34;
    const int label_w = 150;
    const int label_h = 150;
    const int width = label_w + count * cell + 20;
    const int height = label_h + count * cell + 20;

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << width << "\" height=\""
        << height << "\" viewBox=\"0 0 " << width << ' ' << height << "\">\n";
    svg << "<rect width=\"" << width << "\" height=\"" << height << "\" fill=\"#ffffff\"/>\n";
    svg << "<text x=\"10\" y=\"18\" font-family=\"sans-serif\" font-size=\"13\">" << m.axis
        << " axis, " << m.correction << ", alpha=" << m.alpha << "</text>\n";
    for (int c = 0; c < count; ++c) {
        const int x = label_w + c * cell + cell / 2;
        svg << "<text x=\"" << x << "\" y=\"" << (label_h - 8) << "\" font-family=\"sans-serif\""
            << " font-size=\"11\" text-anchor=\"start\" transform=\"rotate(-60 " << x << ' '
            << (label_h - 8) << ")\">" << m.levels[c] << "</text>\n";
    }
    for (int r = 0; r < count; ++r) {
        const int y = label_h + r * cell;
        svg << "<text x=\"" << (label_w - 6) << "\" y=\"" << (y + cell / 2 + 4)
            << "\" font-family=\"sans-serif\" font-size=\"11\" text-anchor=\"end\">"
            << m.levels[r] << "</text>\n";
        for (int c = 0; c < count; ++c) {
            const char* fill = m.is_significant(r, c) ? "#f2c94c" : "#d4d4d4";
            svg << "<rect x=\"" << (label_w + c * cell) << "\" y=\"" << y << "\" width=\"" << cell
                << "\" height=\"" << cell << "\" fill=\"" << fill
                << "\" stroke=\"#ffffff\" stroke-width=\"2\"/>\n";
        }
    }
    svg << "</svg>\n";

    std::ofstream out(path);
    if (!out) {
        throw input_error("cannot write '" + path.string() + "'");
    }
    out << svg.str();
    if (!out) {
        throw std::runtime_error("failed writing '" + path.string() + "'");
    }
}

}  // namespace gdmorph
