#include "gdmorph/distance_matrix.hpp"

#include <queue>
#include <string>

#include "gdmorph/errors.hpp"

namespace gdmorph {

DistanceMatrix shortest_paths(const Graph& g) {
    const int n = g.node_count();
    std::vector<int> d(static_cast<std::size_t>(n) * n, -1);
    std::vector<int> queue;
    queue.reserve(n);
    for (int src = 0; src < n; ++src) {
        int* row = d.data() + static_cast<std::size_t>(src) * n;
        queue.clear();
        queue.push_back(src);
        row[src] = 0;
        for (std::size_t head = 0; head < queue.size(); ++head) {
            const int v = queue[head];
            for (int w : g.neighbors(v)) {
                if (row[w] < 0) {
                    row[w] = row[v] + 1;
                    queue.push_back(w);
                }
            }
        }
        for (int j = 0; j < n; ++j) {
            if (row[j] < 0) {
                throw input_error("graph is disconnected: no path between nodes " +
                                  std::to_string(src) + " and " + std::to_string(j));
            }
        }
    }
    return DistanceMatrix(n, std::move(d));
}

}  // namespace gdmorph
