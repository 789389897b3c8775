#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

#include "gdmorph/metrics.hpp"

namespace gdmorph {

// One completed experiment cell.
struct GridRecord {
    std::string graph;
    std::string target;
    std::string combo;  // e.g. "ELD" or "ST+CN"
    std::uint64_t seed = 0;
    double percent = 0.0;
};

struct ExperimentGrid {
    std::vector<GridRecord> records;

    // Throws input_error on duplicate (graph, target, combo, seed) keys
    // or non-finite percents.
    void validate() const;
};

enum class GridAxis { Combo, Target, Graph };

std::string to_string(GridAxis axis);
GridAxis axis_from_string(const std::string& name);

// All 15 nonempty subsets of the four metrics: singletons first, then
// pairs, triples, and the full set, each in ST < ELD < CN < AR order.
std::vector<std::vector<MetricId>> all_metric_combos();

std::string combo_to_string(std::span<const MetricId> combo);       // "ST+ELD"
std::vector<MetricId> combo_from_string(const std::string& name);

struct SignificanceMatrix {
    std::string axis;                   // which grid axis the levels come from
    std::vector<std::string> levels;    // row == column labels
    std::vector<double> pvalues;        // row-major raw one-sided p; diagonal 1
    std::vector<double> adjusted;       // Bonferroni-adjusted; diagonal 1
    std::vector<char> significant;      // adjusted < alpha; diagonal 0
    double alpha = 0.05;
    std::string correction = "bonferroni";

    double p(int r, int c) const { return pvalues[r * levels.size() + c]; }
    bool is_significant(int r, int c) const {
        return significant[r * levels.size() + c] != 0;
    }
};

// Cell (r, c) asks one-sidedly whether level r's percents exceed level
// c's. The combo and target axes pair samples across shared blocks and
// use the signed-rank test; the graph axis compares independent samples
// with Mann-Whitney. Bonferroni runs over all off-diagonal cells. Cells
// whose test lacks its preconditions (say, all paired differences zero)
// count as not significant.
SignificanceMatrix significance_matrix(const ExperimentGrid& grid, GridAxis axis,
                                       double alpha = 0.05);

// Consolidated results table: graph,target,combo,seed,percent.
void save_grid_csv(const std::filesystem::path& path, const ExperimentGrid& grid);
ExperimentGrid load_grid_csv(const std::filesystem::path& path);

// Long-format matrix dump: row,col,p,adjusted,significant.
void save_matrix_csv(const std::filesystem::path& path, const SignificanceMatrix& m);

// The heatmap rendering: yellow cell = significant, gray = not.
void save_matrix_svg(const std::filesystem::path& path, const SignificanceMatrix& m);

}  // namespace gdmorph
