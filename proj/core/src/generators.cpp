#include "gdmorph/generators.hpp"

#include <algorithm>
#include <string>
#include <unordered_set>

#include "gdmorph/errors.hpp"
#include "gdmorph/rng.hpp"

namespace gdmorph {

namespace {

// Sample `count` distinct nodes from the multiset of edge endpoints;
// picking an endpoint uniformly is preferential attachment.
std::vector<int> sample_by_degree(const std::vector<int>& endpoints, int count, Rng& rng) {
    std::vector<int> targets;
    std::unordered_set<int> chosen;
    targets.reserve(count);
    while (static_cast<int>(targets.size()) < count) {
        const int v = endpoints[rng.uniform_int(0, static_cast<int>(endpoints.size()) - 1)];
        if (chosen.insert(v).second) {
            targets.push_back(v);
        }
    }
    return targets;
}

}  // namespace

Graph dual_barabasi_albert(int n, int m1, int m2, double p, std::uint64_t seed) {
    const int m_max = std::max(m1, m2);
    if (std::min(m1, m2) < 1 || n <= m_max) {
        throw input_error("dual_barabasi_albert requires n > max(m1, m2) >= 1, got n=" +
                          std::to_string(n) + " m1=" + std::to_string(m1) +
                          " m2=" + std::to_string(m2));
    }
    if (p < 0.0 || p > 1.0) {
        throw input_error("dual_barabasi_albert requires p in [0, 1]");
    }

    Rng rng(seed);
    std::vector<std::pair<int, int>> edges;
    std::vector<int> endpoints;

    // Seed star: node m_max is the hub so every early node has degree >= 1.
    for (int v = 0; v < m_max; ++v) {
        edges.emplace_back(v, m_max);
        endpoints.push_back(v);
        endpoints.push_back(m_max);
    }

    for (int v = m_max + 1; v < n; ++v) {
        const int m = rng.uniform() < p ? m1 : m2;
        for (int t : sample_by_degree(endpoints, std::min(m, v), rng)) {
            edges.emplace_back(t, v);
            endpoints.push_back(t);
            endpoints.push_back(v);
        }
    }
    return Graph(n, std::move(edges));
}

Graph grid_graph(int rows, int cols) {
    if (rows < 1 || cols < 1 || static_cast<long long>(rows) * cols < 2) {
        throw input_error("grid_graph requires at least 2 nodes");
    }
    std::vector<std::pair<int, int>> edges;
    for (int r = 0; r < rows; ++r) {
        for (int c = 0; c < cols; ++c) {
            const int v = r * cols + c;
            if (c + 1 < cols) edges.emplace_back(v, v + 1);
            if (r + 1 < rows) edges.emplace_back(v, v + cols);
        }
    }
    return Graph(rows * cols, std::move(edges));
}

}  // namespace gdmorph
