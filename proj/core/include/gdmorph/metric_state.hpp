#pragma once

#include <memory>
#include <span>
#include <vector>

#include "gdmorph/metrics.hpp"

namespace gdmorph {

/// Incremental evaluator for one metric over a drawing that changes a
/// few nodes at a time. The annealer moves at most n/15 nodes per
/// iteration, so updating only the affected terms beats full
/// recomputation by a wide margin for ST (whole rows) and CN (edge
/// pairs touching moved edges).
///
/// Usage: value() is the metric on the state's current coordinates.
/// preview(after, moved) prices a proposal without mutating; commit
/// applies it. `after` must differ from the current coordinates only
/// on rows listed in `moved` -- anything else means the caller's
/// bookkeeping diverged and is an error.
class MetricState {
public:
    virtual ~MetricState() = default;

    virtual MetricId id() const = 0;
    virtual double value() const = 0;
    virtual double preview(const Drawing& after, std::span<const int> moved) const = 0;
    virtual void commit(const Drawing& after, std::span<const int> moved) = 0;
};

std::unique_ptr<MetricState> make_metric_state(MetricId id, const Graph& g, const Drawing& d,
                                               const DistanceMatrix& dist);

}  // namespace gdmorph
