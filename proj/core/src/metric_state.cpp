#include "gdmorph/metric_state.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <string>

#include "gdmorph/errors.hpp"

namespace gdmorph {

namespace {

// Shared plumbing: every state keeps its own copy of the coordinates
// it believes current, so a caller whose bookkeeping drifted (a row
// changed without being listed in `moved`) is caught instead of
// silently corrupting the running sums.
class StateBase : public MetricState {
public:
    StateBase(const Graph& g, const Drawing& d) : graph_(&g), current_(d) {
        if (g.node_count() != d.size()) {
            throw input_error("drawing and graph disagree on node count");
        }
    }

protected:
    void check_consistent(const Drawing& after, std::span<const int> moved) const {
        if (after.size() != current_.size()) {
            throw std::logic_error("metric state: proposal has a different node count");
        }
        mark_moved(moved);
        for (int v = 0; v < current_.size(); ++v) {
            if (moved_mask_[v]) continue;
            if (after.pts[v].x != current_.pts[v].x || after.pts[v].y != current_.pts[v].y) {
                throw std::logic_error("metric state: node " + std::to_string(v) +
                                       " changed but was not listed as moved");
            }
        }
    }

    void mark_moved(std::span<const int> moved) const {
        moved_mask_.assign(current_.pts.size(), 0);
        for (int v : moved) {
            moved_mask_[v] = 1;
        }
    }

    void store(const Drawing& after, std::span<const int> moved) {
        for (int v : moved) {
            current_.pts[v] = after.pts[v];
        }
    }

    const Graph* graph_;
    Drawing current_;
    mutable std::vector<char> moved_mask_;
};

// ---------------------------------------------------------------- ST

// Stress reduces to two running sums over node pairs:
//   S1 = sum r_ij / d_ij,   S2 = sum r_ij^2 / d_ij^2   (i < j),
// and with the scale-optimal factor a = S1/S2 the metric is
// algebraically 1 - S1^2 / (S2 * P), P = n(n-1)/2. A move touches only
// the rows of the moved nodes.
class StressState final : public StateBase {
public:
    StressState(const Graph& g, const Drawing& d, const DistanceMatrix& dist)
        : StateBase(g, d), dist_(&dist) {
        const int n = current_.size();
        if (n != dist.size()) {
            throw input_error("drawing and distance matrix disagree on node count");
        }
        if (n < 2) {
            throw input_error("stress requires at least two nodes");
        }
        for (int i = 0; i < n; ++i) {
            for (int j = i + 1; j < n; ++j) {
                add_pair(current_, i, j, 1.0);
            }
        }
        if (sum_ratio_sq_ <= 0.0) {
            throw input_error("stress undefined: all nodes coincide");
        }
    }

    MetricId id() const override { return MetricId::ST; }

    double value() const override { return value_from(sum_ratio_, sum_ratio_sq_); }

    double preview(const Drawing& after, std::span<const int> moved) const override {
        check_consistent(after, moved);
        double s1 = sum_ratio_;
        double s2 = sum_ratio_sq_;
        accumulate_delta(after, moved, s1, s2);
        return value_from(s1, s2);
    }

    void commit(const Drawing& after, std::span<const int> moved) override {
        check_consistent(after, moved);
        accumulate_delta(after, moved, sum_ratio_, sum_ratio_sq_);
        store(after, moved);
    }

private:
    double value_from(double s1, double s2) const {
        if (s2 <= 0.0) {
            throw input_error("stress undefined: all nodes coincide");
        }
        const int n = current_.size();
        const double pairs = 0.5 * n * (n - 1);
        return 1.0 - (s1 * s1) / (s2 * pairs);
    }

    void add_pair(const Drawing& d, int i, int j, double sign) {
        const double r = distance(d.pts[i], d.pts[j]);
        const double dd = (*dist_)(i, j);
        sum_ratio_ += sign * (r / dd);
        sum_ratio_sq_ += sign * ((r * r) / (dd * dd));
    }

    // Pairs with exactly one moved endpoint, plus each moved-moved pair once.
    void accumulate_delta(const Drawing& after, std::span<const int> moved, double& s1,
                          double& s2) const {
        const int n = current_.size();
        for (std::size_t a = 0; a < moved.size(); ++a) {
            const int i = moved[a];
            for (int j = 0; j < n; ++j) {
                if (j == i) continue;
                if (moved_mask_[j] && j < i) continue;
                const double r_old = distance(current_.pts[i], current_.pts[j]);
                const double r_new = distance(after.pts[i], after.pts[j]);
                const double dd = (*dist_)(i, j);
                s1 += (r_new - r_old) / dd;
                s2 += (r_new * r_new - r_old * r_old) / (dd * dd);
            }
        }
    }

    const DistanceMatrix* dist_;
    double sum_ratio_ = 0.0;
    double sum_ratio_sq_ = 0.0;
};

// --------------------------------------------------------------- ELD

class EdgeLengthState final : public StateBase {
public:
    EdgeLengthState(const Graph& g, const Drawing& d) : StateBase(g, d) {
        if (g.edge_count() < 1) {
            throw input_error("edge length deviation requires at least one edge");
        }
        lengths_.reserve(g.edge_count());
        for (const auto& [a, b] : g.edges()) {
            const double len = distance(d.pts[a], d.pts[b]);
            lengths_.push_back(len);
            sum_len_ += len;
            sum_len_sq_ += len * len;
        }
        edge_seen_.assign(g.edge_count(), 0);
    }

    MetricId id() const override { return MetricId::ELD; }

    double value() const override { return value_from(sum_len_, sum_len_sq_); }

    double preview(const Drawing& after, std::span<const int> moved) const override {
        check_consistent(after, moved);
        double sum = sum_len_;
        double sum_sq = sum_len_sq_;
        for_each_affected_edge(moved, [&](int e) {
            const auto [a, b] = graph_->edges()[e];
            const double len = distance(after.pts[a], after.pts[b]);
            sum += len - lengths_[e];
            sum_sq += len * len - lengths_[e] * lengths_[e];
        });
        return value_from(sum, sum_sq);
    }

    void commit(const Drawing& after, std::span<const int> moved) override {
        check_consistent(after, moved);
        for_each_affected_edge(moved, [&](int e) {
            const auto [a, b] = graph_->edges()[e];
            const double len = distance(after.pts[a], after.pts[b]);
            sum_len_ += len - lengths_[e];
            sum_len_sq_ += len * len - lengths_[e] * lengths_[e];
            lengths_[e] = len;
        });
        store(after, moved);
    }

private:
    double value_from(double sum, double sum_sq) const {
        const double m = static_cast<double>(lengths_.size());
        const double mean = sum / m;
        return std::sqrt(std::max(0.0, sum_sq / m - mean * mean));
    }

    template <typename Fn>
    void for_each_affected_edge(std::span<const int> moved, Fn&& fn) const {
        touched_.clear();
        for (int v : moved) {
            for (int e : graph_->incident_edges(v)) {
                if (!edge_seen_[e]) {
                    edge_seen_[e] = 1;
                    touched_.push_back(e);
                }
            }
        }
        for (int e : touched_) {
            fn(e);
            edge_seen_[e] = 0;
        }
    }

    std::vector<double> lengths_;
    double sum_len_ = 0.0;
    double sum_len_sq_ = 0.0;
    mutable std::vector<char> edge_seen_;
    mutable std::vector<int> touched_;
};

// ---------------------------------------------------------------- CN

class CrossingState final : public StateBase {
public:
    CrossingState(const Graph& g, const Drawing& d) : StateBase(g, d), m_(g.edge_count()) {
        const int m = m_;
        flags_.assign(static_cast<std::size_t>(m) * (m - 1) / 2, 0);
        const auto& edges = g.edges();
        for (int i = 0; i < m; ++i) {
            for (int j = i + 1; j < m; ++j) {
                if (shares_endpoint(edges[i], edges[j])) continue;
                if (pair_crosses(d, i, j)) {
                    flags_[pair_index(i, j)] = 1;
                    ++count_;
                }
            }
        }
        edge_seen_.assign(m, 0);
    }

    MetricId id() const override { return MetricId::CN; }

    double value() const override { return count_; }

    double preview(const Drawing& after, std::span<const int> moved) const override {
        check_consistent(after, moved);
        int count = count_;
        scan_affected(after, moved, [&](std::size_t idx, bool crosses) {
            count += static_cast<int>(crosses) - flags_[idx];
        });
        return count;
    }

    void commit(const Drawing& after, std::span<const int> moved) override {
        check_consistent(after, moved);
        scan_affected(after, moved, [&](std::size_t idx, bool crosses) {
            count_ += static_cast<int>(crosses) - flags_[idx];
            flags_[idx] = crosses ? 1 : 0;
        });
        store(after, moved);
    }

private:
    static bool shares_endpoint(std::pair<int, int> e, std::pair<int, int> f) {
        return e.first == f.first || e.first == f.second || e.second == f.first ||
               e.second == f.second;
    }

    std::size_t pair_index(int i, int j) const {
        // i < j over m edges, row-major upper triangle
        const std::size_t m = m_;
        return static_cast<std::size_t>(i) * (2 * m - i - 1) / 2 + (j - i - 1);
    }

    bool pair_crosses(const Drawing& d, int i, int j) const {
        const auto [a1, a2] = graph_->edges()[i];
        const auto [b1, b2] = graph_->edges()[j];
        return segments_intersect(d.pts[a1], d.pts[a2], d.pts[b1], d.pts[b2]);
    }

    // Visit every pair with at least one edge incident to a moved node,
    // once, with its freshly computed crossing flag.
    template <typename Fn>
    void scan_affected(const Drawing& after, std::span<const int> moved, Fn&& fn) const {
        touched_.clear();
        for (int v : moved) {
            for (int e : graph_->incident_edges(v)) {
                if (!edge_seen_[e]) {
                    edge_seen_[e] = 1;
                    touched_.push_back(e);
                }
            }
        }
        const int m = graph_->edge_count();
        const auto& edges = graph_->edges();
        for (int e : touched_) {
            for (int f = 0; f < m; ++f) {
                if (f == e || (edge_seen_[f] && f < e)) continue;
                if (shares_endpoint(edges[e], edges[f])) continue;
                const int lo = std::min(e, f);
                const int hi = std::max(e, f);
                const auto [a1, a2] = edges[lo];
                const auto [b1, b2] = edges[hi];
                fn(pair_index(lo, hi),
                   segments_intersect(after.pts[a1], after.pts[a2], after.pts[b1], after.pts[b2]));
            }
        }
        for (int e : touched_) {
            edge_seen_[e] = 0;
        }
    }

    int m_;
    std::vector<std::uint8_t> flags_;
    int count_ = 0;
    mutable std::vector<char> edge_seen_;
    mutable std::vector<int> touched_;
};

// ---------------------------------------------------------------- AR

class AngularState final : public StateBase {
public:
    AngularState(const Graph& g, const Drawing& d) : StateBase(g, d) {
        contributions_.assign(g.node_count(), 0.0);
        for (int v = 0; v < g.node_count(); ++v) {
            if (g.degree(v) < 2) continue;
            ++eligible_;
            contributions_[v] = node_angle_deviation(g, d, v, scratch_);
            total_ += contributions_[v];
        }
        if (eligible_ == 0) {
            throw input_error("angular resolution undefined: no node has degree >= 2");
        }
        node_seen_.assign(g.node_count(), 0);
    }

    MetricId id() const override { return MetricId::AR; }

    double value() const override { return total_ / eligible_; }

    double preview(const Drawing& after, std::span<const int> moved) const override {
        check_consistent(after, moved);
        double total = total_;
        for_each_affected_node(moved, [&](int v) {
            total += node_angle_deviation(*graph_, after, v, scratch_) - contributions_[v];
        });
        return total / eligible_;
    }

    void commit(const Drawing& after, std::span<const int> moved) override {
        check_consistent(after, moved);
        for_each_affected_node(moved, [&](int v) {
            const double c = node_angle_deviation(*graph_, after, v, scratch_);
            total_ += c - contributions_[v];
            contributions_[v] = c;
        });
        store(after, moved);
    }

private:
    // Moved nodes and their neighbors, each at most once, degree >= 2 only.
    template <typename Fn>
    void for_each_affected_node(std::span<const int> moved, Fn&& fn) const {
        touched_.clear();
        for (int v : moved) {
            if (!node_seen_[v]) {
                node_seen_[v] = 1;
                touched_.push_back(v);
            }
            for (int w : graph_->neighbors(v)) {
                if (!node_seen_[w]) {
                    node_seen_[w] = 1;
                    touched_.push_back(w);
                }
            }
        }
        for (int v : touched_) {
            if (graph_->degree(v) >= 2) {
                fn(v);
            }
            node_seen_[v] = 0;
        }
    }

    std::vector<double> contributions_;
    double total_ = 0.0;
    int eligible_ = 0;
    mutable std::vector<double> scratch_;
    mutable std::vector<char> node_seen_;
    mutable std::vector<int> touched_;
};

}  // namespace

std::unique_ptr<MetricState> make_metric_state(MetricId id, const Graph& g, const Drawing& d,
                                               const DistanceMatrix& dist) {
    switch (id) {
    case MetricId::ST: return std::make_unique<StressState>(g, d, dist);
    case MetricId::ELD: return std::make_unique<EdgeLengthState>(g, d);
    case MetricId::CN: return std::make_unique<CrossingState>(g, d);
    case MetricId::AR: return std::make_unique<AngularState>(g, d);
    }
    throw input_error("unknown metric id");
}

}  // namespace gdmorph
