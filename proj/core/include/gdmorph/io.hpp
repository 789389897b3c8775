#pragma once

#include <string>

#include "gdmorph/drawing.hpp"
#include "gdmorph/graph.hpp"

namespace gdmorph {

/// Edge-list file: one "i j" pair per line, 0-based indices, blank
/// lines and `#` comments ignored. Node count is 1 + the largest index
/// mentioned.
Graph load_edge_list(const std::string& path);
void save_edge_list(const Graph& g, const std::string& path);

/// Coordinate CSV with header "x,y"; row k holds node k's position.
Drawing load_coords_csv(const std::string& path);
void save_coords_csv(const Drawing& d, const std::string& path);

}  // namespace gdmorph
