#include "gdmorph/annealer.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <limits>
#include <memory>
#include <numeric>
#include <set>
#include <stdexcept>

#include "gdmorph/errors.hpp"
#include "gdmorph/metric_state.hpp"

namespace gdmorph {

namespace {

constexpr int kMaxJitterAttempts = 1'000'000;

struct JitterScratch {
    std::vector<int> pool;  // permutation of node ids, partially shuffled per attempt
    Drawing work;           // proposal buffer; equals the current drawing off the moved rows

    JitterScratch(const Drawing& x) : work(x) {
        pool.resize(x.size());
        std::iota(pool.begin(), pool.end(), 0);
    }
};

struct AttemptOutcome {
    double loss = 0.0;
    bool escape = false;  // accepted through temperature, not improvement
};

// One call of the jitter loop. On return scratch.work holds the
// proposal, differing from `x` exactly on the rows in `moved`.
AttemptOutcome propose(const Drawing& x, double t, double diff, std::span<const Vec2> target,
                       const AnnealConfig& cfg, Rng& rng, JitterScratch& scratch,
                       std::vector<int>& moved) {
    const int n = x.size();
    const int max_subset = std::max(1, n / cfg.subset_divisor);
    for (int attempt = 0; attempt < kMaxJitterAttempts; ++attempt) {
        const int size = rng.uniform_int(1, max_subset);
        for (int slot = 0; slot < size; ++slot) {
            const int j = rng.uniform_int(slot, n - 1);
            std::swap(scratch.pool[slot], scratch.pool[j]);
        }
        moved.assign(scratch.pool.begin(), scratch.pool.begin() + size);
        for (int v : moved) {
            const double dx = std::clamp(rng.normal(), -cfg.step_clip, cfg.step_clip);
            const double dy = std::clamp(rng.normal(), -cfg.step_clip, cfg.step_clip);
            Vec2 p{x.pts[v].x + dx * cfg.step_scale, x.pts[v].y + dy * cfg.step_scale};
            if (cfg.clamp_to_unit_box) {
                p.x = std::clamp(p.x, 0.0, 1.0);
                p.y = std::clamp(p.y, 0.0, 1.0);
            }
            scratch.work.pts[v] = p;
        }
        const double loss = sim(cfg.similarity_kind, scratch.work.pts, target);
        if (loss < diff) {
            return {loss, false};
        }
        if (t > rng.uniform()) {
            return {loss, true};
        }
        for (int v : moved) {
            scratch.work.pts[v] = x.pts[v];
        }
    }
    throw std::runtime_error("jitter found no acceptable proposal after " +
                             std::to_string(kMaxJitterAttempts) + " attempts");
}

}  // namespace

void AnnealConfig::validate() const {
    if (n_max < 0) {
        throw input_error("n_max must be nonnegative");
    }
    if (!(t_final > 0.0 && t_final <= t_init && t_init < 1.0)) {
        throw input_error("temperatures must satisfy 0 < t_final <= t_init < 1");
    }
    if (subset_divisor < 1) {
        throw input_error("subset_divisor must be at least 1");
    }
    if (!(step_scale > 0.0)) {
        throw input_error("step_scale must be positive");
    }
    if (!(step_clip > 0.0)) {
        throw input_error("step_clip must be positive");
    }
    for (const auto& [id, eps] : epsilons) {
        if (!(eps >= 0.0)) {
            throw input_error("epsilon for " + to_string(id) + " must be nonnegative");
        }
    }
    if (!(cn_epsilon_factor >= 0.0)) {
        throw input_error("cn_epsilon_factor must be nonnegative");
    }
    if (trace_stride < 1) {
        throw input_error("trace_stride must be at least 1");
    }
}

double resolved_epsilon(const AnnealConfig& cfg, MetricId id, double baseline) {
    if (const auto it = cfg.epsilons.find(id); it != cfg.epsilons.end()) {
        return it->second;
    }
    if (id == MetricId::CN) {
        // Integer-valued band; a crossing-free start must stay crossing-free.
        return baseline > 0.0 ? std::floor(cfg.cn_epsilon_factor * baseline) : 0.0;
    }
    return 0.0025;
}

double temperature(int i, const AnnealConfig& cfg) {
    if (cfg.n_max <= 0) {
        return cfg.t_final;
    }
    const double f = 1.0 - static_cast<double>(i) / cfg.n_max;
    return (cfg.t_init - cfg.t_final) * f * f + cfg.t_final;
}

std::pair<Drawing, double> jitter(const Drawing& x, double t, double diff,
                                  const TargetShape& target, const AnnealConfig& cfg, Rng& rng) {
    if (x.size() != target.size()) {
        throw input_error("drawing and target sizes differ: " + std::to_string(x.size()) +
                          " vs " + std::to_string(target.size()));
    }
    JitterScratch scratch(x);
    std::vector<int> moved;
    const AttemptOutcome out = propose(x, t, diff, target.points, cfg, rng, scratch, moved);
    return {std::move(scratch.work), out.loss};
}

MorphResult morph(const Graph& g, const Drawing& start, const DistanceMatrix& dist,
                  const TargetShape& target, std::span<const MetricId> constraints,
                  const AnnealConfig& cfg) {
    return detail::morph_with(g, start, dist, target, constraints, cfg, {});
}

namespace detail {

MorphResult morph_with(const Graph& g, const Drawing& start, const DistanceMatrix& dist,
                       const TargetShape& target, std::span<const MetricId> constraints,
                       const AnnealConfig& cfg, const MorphOverrides& overrides) {
    const auto t_start = std::chrono::steady_clock::now();
    cfg.validate();
    const int n = start.size();
    if (g.node_count() != n) {
        throw input_error("drawing and graph disagree on node count");
    }
    if (n != target.size()) {
        throw input_error("drawing has " + std::to_string(n) + " nodes but the target has " +
                          std::to_string(target.size()) + " points");
    }
    if (constraints.empty()) {
        throw input_error("at least one metric must be constrained");
    }
    if (std::set<MetricId>(constraints.begin(), constraints.end()).size() != constraints.size()) {
        throw input_error("constrained metrics must be distinct");
    }
    if (!overrides.skip_normalized_check && !is_normalized(start, 1e-6)) {
        throw input_error("start drawing must be normalized to the unit box");
    }

    MorphResult res;
    res.constraints.assign(constraints.begin(), constraints.end());
    res.config = cfg;
    res.baseline_metrics =
        overrides.baseline_metrics ? *overrides.baseline_metrics
                                   : evaluate(constraints, g, start, dist);
    if (overrides.epsilons) {
        res.epsilons = *overrides.epsilons;
    } else {
        res.epsilons.reserve(constraints.size());
        for (std::size_t j = 0; j < constraints.size(); ++j) {
            res.epsilons.push_back(resolved_epsilon(cfg, constraints[j], res.baseline_metrics[j]));
        }
    }

    const double start_loss = sim(cfg.similarity_kind, start.pts, target.points);
    res.baseline_loss = overrides.baseline_loss.value_or(start_loss);

    const auto finish = [&](MorphResult& r) {
        r.elapsed_seconds =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
    };

    if (start_loss <= 0.0 || res.baseline_loss <= 0.0) {
        // Already on the target (or anchored there): nothing to do.
        res.final = start;
        res.final_metrics = res.baseline_metrics;
        res.final_loss = start_loss;
        res.final_percent = 100.0;
        finish(res);
        return res;
    }

    std::vector<std::unique_ptr<MetricState>> states;
    if (cfg.use_incremental) {
        states.reserve(constraints.size());
        for (MetricId id : constraints) {
            states.push_back(make_metric_state(id, g, start, dist));
        }
    }

    Rng rng(cfg.seed);
    Drawing x = start;
    JitterScratch scratch(x);
    std::vector<int> moved;
    std::vector<double> qm_prop(constraints.size());
    double diff_curr = start_loss;
    res.trace.reserve(static_cast<std::size_t>(cfg.n_max / cfg.trace_stride) + 2);

    for (int i = 1; i <= cfg.n_max; ++i) {
        const double t_i = temperature(i, cfg);
        const AttemptOutcome out =
            propose(x, t_i, diff_curr, target.points, cfg, rng, scratch, moved);

        bool ok = true;
        try {
            if (states.empty()) {
                qm_prop = evaluate(constraints, g, scratch.work, dist);
            } else {
                for (std::size_t j = 0; j < states.size(); ++j) {
                    qm_prop[j] = states[j]->preview(scratch.work, moved);
                }
            }
        } catch (const input_error&) {
            // A degenerate proposal (say, an edge collapsed to a point by
            // clamping) cannot be priced, so it certainly is not accepted.
            ok = false;
            std::fill(qm_prop.begin(), qm_prop.end(), std::numeric_limits<double>::quiet_NaN());
        }
        if (ok) {
            for (std::size_t j = 0; j < qm_prop.size(); ++j) {
                if (!(std::abs(qm_prop[j] - res.baseline_metrics[j]) <= res.epsilons[j])) {
                    ok = false;
                    break;
                }
            }
        }

        if (i % cfg.trace_stride == 0 || i == cfg.n_max) {
            res.trace.push_back({i, t_i, out.loss, percent(out.loss, res.baseline_loss), ok,
                                 out.escape, qm_prop});
        }

        if (ok) {
            if (!states.empty()) {
                for (auto& state : states) {
                    state->commit(scratch.work, moved);
                }
            }
            for (int v : moved) {
                x.pts[v] = scratch.work.pts[v];
            }
            diff_curr = out.loss;
            ++res.accepted_count;
            if (out.escape) {
                ++res.escape_count;
            }
        } else {
            for (int v : moved) {
                scratch.work.pts[v] = x.pts[v];
            }
        }
    }

    res.final = std::move(x);
    res.final_metrics = evaluate(constraints, g, res.final, dist);
    res.final_loss = diff_curr;
    res.final_percent = percent(diff_curr, res.baseline_loss);
    finish(res);
    return res;
}

}  // namespace detail

}  // namespace gdmorph
