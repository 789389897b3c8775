#pragma once

#include <vector>

#include "gdmorph/graph.hpp"

namespace gdmorph {

/// Symmetric matrix of graph-theoretic (hop count) distances.
class DistanceMatrix {
public:
    DistanceMatrix(int n, std::vector<int> hops) : n_(n), d_(std::move(hops)) {}

    int size() const { return n_; }
    int operator()(int i, int j) const { return d_[static_cast<std::size_t>(i) * n_ + j]; }

private:
    int n_;
    std::vector<int> d_;
};

/// All-pairs hop distances via one breadth-first search per source.
/// Throws input_error naming an unreachable pair if the graph is
/// disconnected.
DistanceMatrix shortest_paths(const Graph& g);

}  // namespace gdmorph
