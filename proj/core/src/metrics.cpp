#include "gdmorph/metrics.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "gdmorph/errors.hpp"

namespace gdmorph {

std::string to_string(MetricId id) {
    switch (id) {
    case MetricId::ST: return "ST";
    case MetricId::ELD: return "ELD";
    case MetricId::CN: return "CN";
    case MetricId::AR: return "AR";
    }
    return "?";
}

MetricId metric_from_string(const std::string& name) {
    for (MetricId id : kAllMetrics) {
        if (to_string(id) == name) return id;
    }
    throw input_error("unknown metric '" + name + "' (expected ST, ELD, CN or AR)");
}

double stress(const Drawing& d, const DistanceMatrix& dist) {
    const int n = d.size();
    if (n != dist.size()) {
        throw input_error("drawing and distance matrix disagree on node count");
    }
    if (n < 2) {
        throw input_error("stress requires at least two nodes");
    }
    double sum_ratio = 0.0;    // sum of r_ij / d_ij
    double sum_ratio_sq = 0.0; // sum of r_ij^2 / d_ij^2
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const double r = distance(d.pts[i], d.pts[j]);
            const double dd = dist(i, j);
            sum_ratio += r / dd;
            sum_ratio_sq += (r * r) / (dd * dd);
        }
    }
    if (sum_ratio_sq <= 0.0) {
        throw input_error("stress undefined: all nodes coincide");
    }
    const double scale = sum_ratio / sum_ratio_sq;
    double total = 0.0;
    for (int i = 0; i < n; ++i) {
        for (int j = i + 1; j < n; ++j) {
            const double r = scale * distance(d.pts[i], d.pts[j]);
            const double dd = dist(i, j);
            const double rel = (r - dd) / dd;
            total += rel * rel;
        }
    }
    const double pairs = 0.5 * n * (n - 1);
    return total / pairs;
}

double edge_length_deviation(const Graph& g, const Drawing& d) {
    if (g.node_count() != d.size()) {
        throw input_error("drawing and graph disagree on node count");
    }
    const int m = g.edge_count();
    if (m < 1) {
        throw input_error("edge length deviation requires at least one edge");
    }
    double sum = 0.0;
    for (const auto& [a, b] : g.edges()) {
        sum += distance(d.pts[a], d.pts[b]);
    }
    const double mean = sum / m;
    double var = 0.0;
    for (const auto& [a, b] : g.edges()) {
        const double dev = distance(d.pts[a], d.pts[b]) - mean;
        var += dev * dev;
    }
    return std::sqrt(var / m);
}

int crossing_number(const Graph& g, const Drawing& d) {
    if (g.node_count() != d.size()) {
        throw input_error("drawing and graph disagree on node count");
    }
    const auto& edges = g.edges();
    const int m = g.edge_count();
    int count = 0;
    for (int i = 0; i < m; ++i) {
        const auto [a1, a2] = edges[i];
        for (int j = i + 1; j < m; ++j) {
            const auto [b1, b2] = edges[j];
            if (a1 == b1 || a1 == b2 || a2 == b1 || a2 == b2) {
                continue;  // shared graph endpoint, never a crossing
            }
            if (segments_intersect(d.pts[a1], d.pts[a2], d.pts[b1], d.pts[b2])) {
                ++count;
            }
        }
    }
    return count;
}

namespace {

// Smallest circular gap between the sorted direction angles of the
// edges at one node. Throws on a zero-length incident edge.
double smallest_incident_angle(const Graph& g, const Drawing& d, int v,
                               std::vector<double>& angles) {
    angles.clear();
    for (int w : g.neighbors(v)) {
        const Vec2 delta = d.pts[w] - d.pts[v];
        if (delta.x == 0.0 && delta.y == 0.0) {
            throw input_error("degenerate angle: zero-length edge at node " + std::to_string(v));
        }
        angles.push_back(std::atan2(delta.y, delta.x));
    }
    std::sort(angles.begin(), angles.end());
    const std::size_t k = angles.size();
    double smallest = 2.0 * std::numbers::pi - (angles[k - 1] - angles[0]);
    for (std::size_t i = 1; i < k; ++i) {
        smallest = std::min(smallest, angles[i] - angles[i - 1]);
    }
    return smallest;
}

}  // namespace

double node_angle_deviation(const Graph& g, const Drawing& d, int v,
                            std::vector<double>& scratch) {
    const double ideal = 2.0 * std::numbers::pi / g.degree(v);
    const double smallest = smallest_incident_angle(g, d, v, scratch);
    return std::abs((ideal - smallest) / ideal);
}

double angular_resolution(const Graph& g, const Drawing& d) {
    if (g.node_count() != d.size()) {
        throw input_error("drawing and graph disagree on node count");
    }
    int eligible = 0;
    double total = 0.0;
    std::vector<double> scratch;
    for (int v = 0; v < g.node_count(); ++v) {
        if (g.degree(v) < 2) continue;
        ++eligible;
        total += node_angle_deviation(g, d, v, scratch);
    }
    if (eligible == 0) {
        throw input_error("angular resolution undefined: no node has degree >= 2");
    }
    return total / eligible;
}

std::vector<double> evaluate(std::span<const MetricId> ids, const Graph& g, const Drawing& d,
                             const DistanceMatrix& dist) {
    std::vector<double> values;
    values.reserve(ids.size());
    for (MetricId id : ids) {
        switch (id) {
        case MetricId::ST: values.push_back(stress(d, dist)); break;
        case MetricId::ELD: values.push_back(edge_length_deviation(g, d)); break;
        case MetricId::CN: values.push_back(crossing_number(g, d)); break;
        case MetricId::AR: values.push_back(angular_resolution(g, d)); break;
        }
    }
    return values;
}

}  // namespace gdmorph
