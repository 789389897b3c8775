#pragma once

#include <span>
#include <string>
#include <vector>

#include "gdmorph/distance_matrix.hpp"
#include "gdmorph/drawing.hpp"
#include "gdmorph/graph.hpp"

namespace gdmorph {

/// The four drawing quality metrics. Lower is better for all of them.
enum class MetricId { ST, ELD, CN, AR };

inline constexpr MetricId kAllMetrics[] = {MetricId::ST, MetricId::ELD, MetricId::CN,
                                           MetricId::AR};

std::string to_string(MetricId id);
MetricId metric_from_string(const std::string& name);

/// Normalized stress: mean over node pairs of the squared relative gap
/// between scale-optimal Euclidean distances and hop distances,
///   (1 / (n(n-1)/2)) * sum_{i<j} (a*|Xi-Xj| - d_ij)^2 / d_ij^2,
/// where the global scale a = (sum r_ij/d_ij) / (sum r_ij^2/d_ij^2)
/// over ordered pairs. Coincident node pairs contribute 1; an
/// all-coincident drawing has no defined scale and is an error.
double stress(const Drawing& d, const DistanceMatrix& dist);

/// Population standard deviation of the drawn edge lengths.
double edge_length_deviation(const Graph& g, const Drawing& d);

/// Number of edge-segment pairs that intersect. Pairs sharing a graph
/// endpoint are exempt; any other contact (including an endpoint on
/// another segment, and collinear overlap) counts once.
int crossing_number(const Graph& g, const Drawing& d);

/// Mean over nodes of degree >= 2 of the relative shortfall of the
/// smallest incident-edge angle vs the ideal even spacing 2*pi/deg.
/// In [0, 1]; zero-length incident edges and graphs with no degree->=2
/// node are errors.
double angular_resolution(const Graph& g, const Drawing& d);

/// Evaluate the requested metrics; values are aligned positionally
/// with `ids` (the caller's declared order is preserved).
std::vector<double> evaluate(std::span<const MetricId> ids, const Graph& g, const Drawing& d,
                             const DistanceMatrix& dist);

/// Single node's term of the angular resolution sum; `scratch` is
/// reused angle storage. Shared with the incremental evaluator.
double node_angle_deviation(const Graph& g, const Drawing& d, int v,
                            std::vector<double>& scratch);

}  // namespace gdmorph
