#pragma once

#include <cstddef>
#include <utility>
#include <vector>

namespace gdmorph {

/// Simple undirected unweighted graph. Immutable after construction.
///
/// Construction validates the edge list: indices in range, no self
/// loops, no duplicate edges (in either direction). Connectivity is
/// not required here -- operations that need it (shortest paths, the
/// morph pipeline) check and report it themselves.
class Graph {
public:
    Graph(int node_count, std::vector<std::pair<int, int>> edges);

    int node_count() const { return n_; }
    int edge_count() const { return static_cast<int>(edges_.size()); }

    const std::vector<std::pair<int, int>>& edges() const { return edges_; }
    const std::vector<int>& neighbors(int v) const { return adjacency_[v]; }
    /// Edge ids incident to v, indexing into edges().
    const std::vector<int>& incident_edges(int v) const { return incident_[v]; }
    int degree(int v) const { return static_cast<int>(adjacency_[v].size()); }

    double average_degree() const {
        return n_ == 0 ? 0.0 : 2.0 * static_cast<double>(edges_.size()) / n_;
    }

    bool connected() const;

private:
    int n_ = 0;
    std::vector<std::pair<int, int>> edges_;
    std::vector<std::vector<int>> adjacency_;
    std::vector<std::vector<int>> incident_;
};

}  // namespace gdmorph
