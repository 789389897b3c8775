#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "gdmorph/distance_matrix.hpp"
#include "gdmorph/drawing.hpp"
#include "gdmorph/graph.hpp"
#include "gdmorph/metrics.hpp"
#include "gdmorph/rng.hpp"
#include "gdmorph/shapes.hpp"
#include "gdmorph/similarity.hpp"

namespace gdmorph {

struct AnnealConfig {
    int n_max = 30000;            // morph iterations
    double t_init = 0.4;          // starting temperature
    double t_final = 0.001;       // temperature at iteration n_max
    int subset_divisor = 15;      // jitter moves up to n/subset_divisor nodes
    double step_scale = 1.0 / 25.0;  // multiplier on the clipped normal step
    double step_clip = 0.5;          // normal samples are clipped to +-this

    // Absolute tolerance band per constrained metric. CN is deliberately
    // absent by default: its band resolves at run start to
    // floor(cn_epsilon_factor * CN(start)), and to exact preservation
    // when the start has no crossings. An explicit CN entry overrides.
    std::map<MetricId, double> epsilons = {
        {MetricId::ST, 0.0025},
        {MetricId::ELD, 0.0025},
        {MetricId::AR, 0.0025},
    };
    double cn_epsilon_factor = 0.05;

    std::uint64_t seed = 0;
    SimilarityKind similarity_kind = SimilarityKind::Greedy;
    bool clamp_to_unit_box = true;  // keep proposals inside [0,1]^2
    int trace_stride = 1;           // record every k-th iteration
    bool use_incremental = true;    // incremental metric updates vs full re-evaluation

    // Throws input_error when a field is out of range.
    void validate() const;
};

// The band actually enforced for one constrained metric, given its
// value on the starting drawing.
double resolved_epsilon(const AnnealConfig& cfg, MetricId id, double baseline);

// T(i) = (t_init - t_final) * (1 - i/n_max)^2 + t_final; defined for
// 0 <= i <= n_max, hitting t_init at 0 and t_final at n_max.
double temperature(int i, const AnnealConfig& cfg);

struct TraceRecord {
    int iteration = 0;            // 1-based
    double temperature = 0.0;     // T_i used this iteration
    double loss = 0.0;            // similarity loss of the proposal
    double percent = 0.0;         // percent of the proposal's loss
    bool accepted = false;        // proposal passed the metric bands
    bool escape = false;          // jitter returned via temperature, not improvement
    std::vector<double> metrics;  // proposal's metric values, constraint order
};

struct MorphResult {
    Drawing final;
    std::vector<TraceRecord> trace;

    std::vector<MetricId> constraints;     // order used by all metric vectors here
    std::vector<double> baseline_metrics;  // values on the start drawing
    std::vector<double> epsilons;          // resolved band per constraint
    std::vector<double> final_metrics;     // values on the final drawing

    double baseline_loss = 0.0;
    double final_loss = 0.0;
    double final_percent = 0.0;
    int accepted_count = 0;
    int escape_count = 0;

    AnnealConfig config;  // echo of the run's configuration

    // Wall time of the run; informational only and deliberately kept out
    // of the serialized form so reruns with one seed are byte-identical.
    double elapsed_seconds = 0.0;
};

// One jitter proposal: repeatedly perturb a random node subset until the
// result is closer to the target than `diff` or the temperature lets a
// worse one through. Returns the new coordinates and their similarity
// loss. Throws after 1e6 fruitless attempts.
std::pair<Drawing, double> jitter(const Drawing& x, double t, double diff,
                                  const TargetShape& target, const AnnealConfig& cfg, Rng& rng);

// The morphing loop: n_max iterations of jitter; a proposal becomes the
// current drawing only when every constrained metric stays within its
// band of the starting value. The returned drawing therefore satisfies
// all bands by construction. `start` must be normalized and match the
// target's point count; `constraints` must be nonempty.
MorphResult morph(const Graph& g, const Drawing& start, const DistanceMatrix& dist,
                  const TargetShape& target, std::span<const MetricId> constraints,
                  const AnnealConfig& cfg);

namespace detail {

// Knobs for sequence morphing: hold the metric bands of an earlier
// drawing and/or anchor percent at an earlier baseline loss, and accept
// a start that is no longer normalized (a previous frame's output).
struct MorphOverrides {
    const std::vector<double>* baseline_metrics = nullptr;
    const std::vector<double>* epsilons = nullptr;
    std::optional<double> baseline_loss;
    bool skip_normalized_check = false;
};

MorphResult morph_with(const Graph& g, const Drawing& start, const DistanceMatrix& dist,
                       const TargetShape& target, std::span<const MetricId> constraints,
                       const AnnealConfig& cfg, const MorphOverrides& overrides);

}  // namespace detail

}  // namespace gdmorph
