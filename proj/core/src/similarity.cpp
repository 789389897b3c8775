#include "gdmorph/similarity.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <vector>

#include "gdmorph/errors.hpp"

namespace gdmorph {

namespace {

void require_matched_sizes(std::span<const Vec2> x, std::span<const Vec2> y) {
    if (x.size() != y.size()) {
        throw input_error("point sets differ in size: " + std::to_string(x.size()) + " vs " +
                          std::to_string(y.size()));
    }
    if (x.empty()) {
        throw input_error("similarity of empty point sets is undefined");
    }
}

}  // namespace

std::string to_string(SimilarityKind kind) {
    switch (kind) {
    case SimilarityKind::Greedy: return "greedy";
    case SimilarityKind::Mse: return "mse";
    case SimilarityKind::Procrustes: return "procrustes";
    }
    return "?";
}

SimilarityKind similarity_from_string(const std::string& name) {
    std::string lower = name;
    std::transform(lower.begin(), lower.end(), lower.begin(),
                   [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
    if (lower == "greedy") return SimilarityKind::Greedy;
    if (lower == "mse") return SimilarityKind::Mse;
    if (lower == "procrustes") return SimilarityKind::Procrustes;
    throw input_error("unknown similarity kind '" + name + "'");
}

double sim_greedy(std::span<const Vec2> x, std::span<const Vec2> y) {
    require_matched_sizes(x, y);
    const std::size_t n = x.size();
    std::vector<char> used(n, 0);
    double loss = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        std::size_t best = n;
        double best_sq = 0.0;
        for (std::size_t j = 0; j < n; ++j) {
            if (used[j]) continue;
            const double d_sq = squared_distance(x[i], y[j]);
            if (best == n || d_sq < best_sq) {
                best = j;
                best_sq = d_sq;
            }
        }
        used[best] = 1;
        loss += std::sqrt(best_sq);
    }
    return loss;
}

double sim_mse(std::span<const Vec2> x, std::span<const Vec2> y) {
    require_matched_sizes(x, y);
    double total = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        total += squared_distance(x[i], y[i]);
    }
    return total / static_cast<double>(x.size());
}

double sim_procrustes(std::span<const Vec2> x, std::span<const Vec2> y) {
    require_matched_sizes(x, y);
    const double n = static_cast<double>(x.size());
    Vec2 cx{0.0, 0.0};
    Vec2 cy{0.0, 0.0};
    for (std::size_t i = 0; i < x.size(); ++i) {
        cx.x += x[i].x;
        cx.y += x[i].y;
        cy.x += y[i].x;
        cy.y += y[i].y;
    }
    cx.x /= n;
    cx.y /= n;
    cy.x /= n;
    cy.y /= n;

    // Treat centered points as complex numbers z (from X) and w (from
    // Y). The best similarity transform of z onto w leaves residual
    // sum|w|^2 - |sum(w * conj(z))|^2 / sum|z|^2; dividing by sum|w|^2
    // yields the statistic.
    double zz = 0.0;
    double ww = 0.0;
    double wz_re = 0.0;
    double wz_im = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double zx = x[i].x - cx.x;
        const double zy = x[i].y - cx.y;
        const double wx = y[i].x - cy.x;
        const double wy = y[i].y - cy.y;
        zz += zx * zx + zy * zy;
        ww += wx * wx + wy * wy;
        wz_re += wx * zx + wy * zy;
        wz_im += wy * zx - wx * zy;
    }
    if (zz <= 0.0 || ww <= 0.0) {
        throw input_error("procrustes statistic undefined: a point set is fully coincident");
    }
    const double aligned = (wz_re * wz_re + wz_im * wz_im) / (zz * ww);
    return std::clamp(1.0 - aligned, 0.0, 1.0);
}

double sim(SimilarityKind kind, std::span<const Vec2> x, std::span<const Vec2> y) {
    switch (kind) {
    case SimilarityKind::Greedy: return sim_greedy(x, y);
    case SimilarityKind::Mse: return sim_mse(x, y);
    case SimilarityKind::Procrustes: return sim_procrustes(x, y);
    }
    throw input_error("unknown similarity kind");
}

double percent(double current_loss, double baseline_loss) {
    if (baseline_loss <= 0.0) {
        throw input_error("baseline similarity is zero: drawing already matches the target");
    }
    return 100.0 - current_loss / baseline_loss * 100.0;
}

}  // namespace gdmorph
