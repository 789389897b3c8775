#pragma once

#include <span>
#include <string>

#include "gdmorph/geometry.hpp"

namespace gdmorph {

// How a drawing's similarity to the target point set is scored. Greedy
// is the default everywhere; the alternatives exist for comparison.
enum class SimilarityKind { Greedy, Mse, Procrustes };

std::string to_string(SimilarityKind kind);
SimilarityKind similarity_from_string(const std::string& name);

// Greedy matching loss: walk X in row order, pair each point with its
// nearest still-unmatched point of Y (ties to the lowest remaining Y
// index), and sum the matched distances. Order-dependent in X by
// design; permutation-invariant in Y.
double sim_greedy(std::span<const Vec2> x, std::span<const Vec2> y);

// Mean squared distance under index correspondence.
double sim_mse(std::span<const Vec2> x, std::span<const Vec2> y);

// Residual of the best translation + uniform scale + rotation of X
// onto Y, normalized by Y's centered norm; always in [0, 1]. Throws if
// either set is a single repeated point.
double sim_procrustes(std::span<const Vec2> x, std::span<const Vec2> y);

double sim(SimilarityKind kind, std::span<const Vec2> x, std::span<const Vec2> y);

// 100 at the target (loss 0), 0 at the starting loss, negative when the
// drawing drifted further away than it started. baseline_loss must be
// positive.
double percent(double current_loss, double baseline_loss);

struct SimilarityReport {
    double loss = 0.0;           // current greedy (or configured) loss
    double baseline_loss = 0.0;  // the run's starting loss
    double percent = 0.0;        // 100 - loss / baseline_loss * 100
};

}  // namespace gdmorph
