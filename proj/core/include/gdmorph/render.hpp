#pragma once

#include <filesystem>
#include <string>

#include "gdmorph/drawing.hpp"
#include "gdmorph/graph.hpp"

namespace gdmorph {

struct RenderOptions {
    int size_px = 600;            // square canvas, unit box mapped inside
    double margin_px = 20.0;
    double node_radius_px = 3.0;
    double edge_width_px = 1.0;
    std::string node_color = "#1f6fb2";
    std::string edge_color = "#a8bfd4";
    std::string background = "#ffffff";
};

// Write the drawing in the figure style: straight edge segments below
// node dots, y axis pointing up (a node at (0,0) lands in the lower
// left). Output is byte-deterministic for fixed input. All coordinates
// must lie inside the unit box.
void render_svg(const Drawing& d, const Graph& g, const std::filesystem::path& path,
                const RenderOptions& options = {});

// Same picture rasterized to an RGB PNG.
void render_png(const Drawing& d, const Graph& g, const std::filesystem::path& path,
                const RenderOptions& options = {});

}  // namespace gdmorph
