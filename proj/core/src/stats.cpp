#include "gdmorph/stats.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <numeric>
#include <string>

#include <boost/math/special_functions/gamma.hpp>

#include "gdmorph/errors.hpp"

namespace gdmorph {

namespace {

// 1-based ranks with ties sharing their average rank.
std::vector<double> average_ranks(std::span<const double> values) {
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
        const double shared = 0.5 * static_cast<double>(i + j) + 1.0;
        for (std::size_t t = i; t <= j; ++t) {
            ranks[order[t]] = shared;
        }
        i = j + 1;
    }
    return ranks;
}

// Sum of (t^3 - t) over tie groups.
double tie_term(std::span<const double> values) {
    std::vector<double> sorted(values.begin(), values.end());
    std::sort(sorted.begin(), sorted.end());
    double total = 0.0;
    std::size_t i = 0;
    while (i < sorted.size()) {
        std::size_t j = i;
        while (j + 1 < sorted.size() && sorted[j + 1] == sorted[i]) ++j;
        const double t = static_cast<double>(j - i + 1);
        total += t * t * t - t;
        i = j + 1;
    }
    return total;
}

double upper_tail_normal(double z) { return 0.5 * std::erfc(z / std::sqrt(2.0)); }

double chi2_survival(double x, int df) {
    return boost::math::gamma_q(0.5 * df, 0.5 * x);
}

}  // namespace

FriedmanResult friedman(const std::vector<std::vector<double>>& treatments) {
    const std::size_t k = treatments.size();
    if (k < 3) {
        throw input_error("friedman needs at least 3 treatments; use wilcoxon for two");
    }
    const std::size_t n = treatments[0].size();
    for (const auto& t : treatments) {
        if (t.size() != n) {
            throw input_error("friedman treatments must have equal lengths");
        }
    }
    if (n < 2) {
        throw input_error("friedman needs at least 2 blocks");
    }

    std::vector<double> rank_sums(k, 0.0);
    std::vector<double> block(k);
    double ties = 0.0;
    for (std::size_t b = 0; b < n; ++b) {
        for (std::size_t j = 0; j < k; ++j) {
            block[j] = treatments[j][b];
        }
        const std::vector<double> ranks = average_ranks(block);
        for (std::size_t j = 0; j < k; ++j) {
            rank_sums[j] += ranks[j];
        }
        ties += tie_term(block);
    }

    const double nd = static_cast<double>(n);
    const double kd = static_cast<double>(k);
    double ssbn = 0.0;
    for (double r : rank_sums) {
        ssbn += r * r;
    }
    const double raw = 12.0 / (nd * kd * (kd + 1.0)) * ssbn - 3.0 * nd * (kd + 1.0);
    const double correction = 1.0 - ties / (nd * (kd * kd * kd - kd));
    if (correction <= 0.0) {
        return {0.0, 1.0};  // every block fully tied
    }
    const double chi2 = raw / correction;
    const int df = static_cast<int>(k) - 1;
    return {chi2, chi2_survival(chi2, df)};
}

double wilcoxon_signed_rank(std::span<const double> a, std::span<const double> b) {
    if (a.size() != b.size()) {
        throw input_error("wilcoxon requires paired samples of equal length");
    }
    std::vector<double> diffs;
    diffs.reserve(a.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        const double d = a[i] - b[i];
        if (d != 0.0) {
            diffs.push_back(d);
        }
    }
    const std::size_t n = diffs.size();
    if (n < 5) {
        throw input_error("wilcoxon needs at least 5 nonzero differences, got " +
                          std::to_string(n));
    }

    std::vector<double> abs_diffs(n);
    for (std::size_t i = 0; i < n; ++i) {
        abs_diffs[i] = std::abs(diffs[i]);
    }
    const std::vector<double> ranks = average_ranks(abs_diffs);
    double w_plus = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (diffs[i] > 0.0) {
            w_plus += ranks[i];
        }
    }

    if (n <= 10) {
        // Exact conditional distribution: every sign pattern over the
        // observed ranks. Average ranks are multiples of 1/2, so doubled
        // ranks compare as exact integers.
        std::vector<std::int64_t> doubled(n);
        for (std::size_t i = 0; i < n; ++i) {
            doubled[i] = static_cast<std::int64_t>(std::llround(2.0 * ranks[i]));
        }
        const std::int64_t observed = static_cast<std::int64_t>(std::llround(2.0 * w_plus));
        const std::uint32_t patterns = 1u << n;
        std::uint32_t at_least = 0;
        for (std::uint32_t mask = 0; mask < patterns; ++mask) {
            std::int64_t w = 0;
            for (std::size_t i = 0; i < n; ++i) {
                if (mask & (1u << i)) {
                    w += doubled[i];
                }
            }
            if (w >= observed) {
                ++at_least;
            }
        }
        return static_cast<double>(at_least) / static_cast<double>(patterns);
    }

    const double nd = static_cast<double>(n);
    const double mean = nd * (nd + 1.0) / 4.0;
    const double var = nd * (nd + 1.0) * (2.0 * nd + 1.0) / 24.0 - tie_term(abs_diffs) / 48.0;
    const double z = (w_plus - mean - 0.5) / std::sqrt(var);
    return upper_tail_normal(z);
}

namespace {

// U statistic for "a greater", ties counting half.
double u_statistic(std::span<const double> a, std::span<const double> b) {
    double u = 0.0;
    for (double x : a) {
        for (double y : b) {
            if (x > y) {
                u += 1.0;
            } else if (x == y) {
                u += 0.5;
            }
        }
    }
    return u;
}

double mann_whitney_exact(std::span<const double> a, std::span<const double> b) {
    std::vector<double> pooled(a.begin(), a.end());
    pooled.insert(pooled.end(), b.begin(), b.end());
    const std::size_t total = pooled.size();
    const std::size_t na = a.size();
    // Doubling keeps half-counts exact.
    const std::int64_t observed = static_cast<std::int64_t>(std::llround(2.0 * u_statistic(a, b)));

    std::vector<std::size_t> pick(na);
    std::iota(pick.begin(), pick.end(), 0);
    std::vector<char> in_a(total);
    std::uint64_t arrangements = 0;
    std::uint64_t at_least = 0;
    while (true) {
        std::fill(in_a.begin(), in_a.end(), 0);
        for (std::size_t i : pick) {
            in_a[i] = 1;
        }
        std::int64_t u2 = 0;
        for (std::size_t i = 0; i < total; ++i) {
            if (!in_a[i]) continue;
            for (std::size_t j = 0; j < total; ++j) {
                if (in_a[j]) continue;
                if (pooled[i] > pooled[j]) {
                    u2 += 2;
                } else if (pooled[i] == pooled[j]) {
                    u2 += 1;
                }
            }
        }
        ++arrangements;
        if (u2 >= observed) {
            ++at_least;
        }
        // next combination
        std::size_t slot = na;
        while (slot > 0 && pick[slot - 1] == total - na + slot - 1) {
            --slot;
        }
        if (slot == 0) break;
        ++pick[slot - 1];
        for (std::size_t t = slot; t < na; ++t) {
            pick[t] = pick[t - 1] + 1;
        }
    }
    return static_cast<double>(at_least) / static_cast<double>(arrangements);
}

}  // namespace

double mann_whitney_u(std::span<const double> a, std::span<const double> b) {
    if (a.empty() || b.empty()) {
        throw input_error("mann-whitney requires two nonempty samples");
    }
    if (a.size() <= 10 && b.size() <= 10) {
        return mann_whitney_exact(a, b);
    }

    const double na = static_cast<double>(a.size());
    const double nb = static_cast<double>(b.size());
    const double total = na + nb;
    std::vector<double> pooled(a.begin(), a.end());
    pooled.insert(pooled.end(), b.begin(), b.end());
    const double u = u_statistic(a, b);
    const double mean = na * nb / 2.0;
    const double var =
        na * nb / 12.0 * ((total + 1.0) - tie_term(pooled) / (total * (total - 1.0)));
    if (var <= 0.0) {
        return 0.5;  // every pooled value identical; no evidence either way
    }
    const double z = (u - mean - 0.5) / std::sqrt(var);
    return upper_tail_normal(z);
}

BonferroniResult bonferroni(std::span<const double> pvals, double alpha) {
    BonferroniResult out;
    out.adjusted.reserve(pvals.size());
    out.reject.reserve(pvals.size());
    const double k = static_cast<double>(pvals.size());
    for (double p : pvals) {
        if (!(p >= 0.0 && p <= 1.0)) {
            throw input_error("p-values must lie in [0, 1]");
        }
        const double adj = std::min(1.0, p * k);
        out.adjusted.push_back(adj);
        out.reject.push_back(adj < alpha ? 1 : 0);
    }
    return out;
}

}  // namespace gdmorph
