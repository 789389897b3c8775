#include "gdmorph/graph.hpp"

#include <set>
#include <string>

#include "gdmorph/errors.hpp"

namespace gdmorph {

Graph::Graph(int node_count, std::vector<std::pair<int, int>> edges)
    : n_(node_count), edges_(std::move(edges)) {
    if (n_ <= 0) {
        throw input_error("graph must have at least one node");
    }
    std::set<std::pair<int, int>> seen;
    for (auto& [a, b] : edges_) {
        if (a < 0 || a >= n_ || b < 0 || b >= n_) {
            throw input_error("edge (" + std::to_string(a) + ", " + std::to_string(b) +
                              ") references a node outside [0, " + std::to_string(n_) + ")");
        }
        if (a == b) {
            throw input_error("self-loop at node " + std::to_string(a));
        }
        if (a > b) {
            std::swap(a, b);
        }
        if (!seen.insert({a, b}).second) {
            throw input_error("duplicate edge (" + std::to_string(a) + ", " +
                              std::to_string(b) + ")");
        }
    }
    adjacency_.resize(n_);
    incident_.resize(n_);
    for (int e = 0; e < static_cast<int>(edges_.size()); ++e) {
        const auto [a, b] = edges_[e];
        adjacency_[a].push_back(b);
        adjacency_[b].push_back(a);
        incident_[a].push_back(e);
        incident_[b].push_back(e);
    }
}

bool Graph::connected() const {
    std::vector<char> visited(n_, 0);
    std::vector<int> stack{0};
    visited[0] = 1;
    int reached = 1;
    while (!stack.empty()) {
        const int v = stack.back();
        stack.pop_back();
        for (int w : adjacency_[v]) {
            if (!visited[w]) {
                visited[w] = 1;
                ++reached;
                stack.push_back(w);
            }
        }
    }
    return reached == n_;
}

}  // namespace gdmorph
