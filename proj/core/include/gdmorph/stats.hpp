#pragma once

#include <span>
#include <vector>

namespace gdmorph {

struct FriedmanResult {
    double chi2 = 0.0;
    double p = 1.0;
};

// Friedman rank test over k >= 3 treatments measured on the same n >= 2
// blocks; treatments[j] holds treatment j's value for every block. Ties
// rank-average within a block and the statistic carries the usual tie
// correction; fully tied data gives chi2 = 0, p = 1.
FriedmanResult friedman(const std::vector<std::vector<double>>& treatments);

// One-sided paired test of "a > b". Zero differences are dropped; at
// least 5 must remain. Exact enumeration of all sign patterns up to 10
// effective pairs, normal approximation (tie + continuity corrected)
// beyond.
double wilcoxon_signed_rank(std::span<const double> a, std::span<const double> b);

// One-sided unpaired test of "a > b" (larger values in a). Exact
// enumeration of all group assignments when both sides have at most 10
// samples, normal approximation (tie + continuity corrected) beyond.
double mann_whitney_u(std::span<const double> a, std::span<const double> b);

struct BonferroniResult {
    std::vector<double> adjusted;  // min(1, p * k)
    std::vector<char> reject;      // adjusted < alpha, strictly
};

BonferroniResult bonferroni(std::span<const double> pvals, double alpha);

}  // namespace gdmorph
