#pragma once

#include <cstdint>

#include "gdmorph/drawing.hpp"
#include "gdmorph/graph.hpp"

namespace gdmorph {

/// Fruchterman-Reingold spring embedder: all-pairs repulsion, edge
/// attraction, linear cooling. A convenience start layout for when no
/// precomputed coordinates are available; importing coordinates from
/// CSV is the primary path. Returns a normalized drawing,
/// deterministic per seed.
Drawing force_layout(const Graph& g, int iterations, std::uint64_t seed);

}  // namespace gdmorph
