#pragma once

#include <cstdint>

#include "gdmorph/graph.hpp"

namespace gdmorph {

/// Dual Barabasi-Albert preferential attachment: the graph grows from
/// a star on max(m1, m2) + 1 nodes; each arriving node attaches m1
/// distinct edges with probability p and m2 with probability 1 - p,
/// choosing targets proportionally to degree. Always connected since
/// every arrival attaches at least one edge. Deterministic per seed.
///
/// Requires n > max(m1, m2) >= 1 and p in [0, 1].
Graph dual_barabasi_albert(int n, int m1, int m2, double p, std::uint64_t seed);

/// rows x cols lattice with 4-neighbor connectivity, node (r, c) at
/// index r * cols + c. The mesh-structured counterpart to the
/// tree-like generator above.
Graph grid_graph(int rows, int cols);

}  // namespace gdmorph
