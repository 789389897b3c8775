#include "gdmorph/layout.hpp"

#include <algorithm>
#include <cmath>

#include "gdmorph/errors.hpp"
#include "gdmorph/rng.hpp"

namespace gdmorph {

Drawing force_layout(const Graph& g, int iterations, std::uint64_t seed) {
    if (iterations < 1) {
        throw input_error("force_layout requires at least one iteration");
    }
    const int n = g.node_count();
    Rng rng(seed);

    Drawing d;
    d.pts.resize(n);
    for (auto& p : d.pts) {
        p.x = rng.uniform();
        p.y = rng.uniform();
    }
    if (n == 1) {
        d.pts[0] = {0.5, 0.5};
        return d;
    }

    const double k = std::sqrt(1.0 / n);  // ideal pairwise distance in the unit square
    std::vector<Vec2> disp(n);

    for (int it = 0; it < iterations; ++it) {
        const double temp = 0.1 * (1.0 - static_cast<double>(it) / iterations) + 1e-4;
        std::fill(disp.begin(), disp.end(), Vec2{});

        for (int i = 0; i < n; ++i) {
            for (int j = i + 1; j < n; ++j) {
                Vec2 delta = d.pts[i] - d.pts[j];
                double dist = norm(delta);
                if (dist < 1e-9) {
                    // Nudge coincident nodes apart along a random direction.
                    delta = {rng.uniform() - 0.5, rng.uniform() - 0.5};
                    dist = std::max(norm(delta), 1e-9);
                }
                const double rep = k * k / dist;
                const Vec2 push = (rep / dist) * delta;
                disp[i] = disp[i] + push;
                disp[j] = disp[j] - push;
            }
        }
        for (const auto& [a, b] : g.edges()) {
            const Vec2 delta = d.pts[a] - d.pts[b];
            const double dist = std::max(norm(delta), 1e-9);
            const double att = dist * dist / k;
            const Vec2 pull = (att / dist) * delta;
            disp[a] = disp[a] - pull;
            disp[b] = disp[b] + pull;
        }
        for (int i = 0; i < n; ++i) {
            const double len = std::max(norm(disp[i]), 1e-12);
            const double step = std::min(len, temp);
            d.pts[i] = d.pts[i] + (step / len) * disp[i];
        }
    }
    return normalize(d);
}

}  // namespace gdmorph
