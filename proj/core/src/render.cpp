#include "gdmorph/render.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

#include "gdmorph/errors.hpp"
#include "gdmorph/png_writer.hpp"

namespace gdmorph {

namespace {

struct Rgb {
    unsigned char r = 0, g = 0, b = 0;
};

Rgb parse_color(const std::string& hex) {
    unsigned value = 0;
    if (hex.size() != 7 || hex[0] != '#' ||
        std::sscanf(hex.c_str() + 1, "%6x", &value) != 1) {
        throw input_error("colors must look like #rrggbb, got '" + hex + "'");
    }
    return {static_cast<unsigned char>(value >> 16), static_cast<unsigned char>(value >> 8),
            static_cast<unsigned char>(value)};
}

// Fixed two-decimal formatting keeps the output byte-stable.
std::string px(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.2f", v);
    return buf;
}

struct Mapper {
    double margin;
    double scale;
    double size;

    Vec2 operator()(Vec2 p) const {
        return {margin + p.x * scale, size - (margin + p.y * scale)};
    }
};

Mapper make_mapper(const RenderOptions& options) {
    const double size = options.size_px;
    const double margin = options.margin_px;
    if (size <= 0 || margin < 0 || 2 * margin >= size) {
        throw input_error("render canvas leaves no room for the drawing");
    }
    return {margin, size - 2 * margin, size};
}

void check_in_unit_box(const Drawing& d) {
    for (const Vec2& p : d.pts) {
        if (!(p.x >= -1e-9 && p.x <= 1.0 + 1e-9 && p.y >= -1e-9 && p.y <= 1.0 + 1e-9)) {
            throw input_error("drawing leaves the unit box; normalize before rendering");
        }
    }
}

}  // namespace

void render_svg(const Drawing& d, const Graph& g, const std::filesystem::path& path,
                const RenderOptions& options) {
    if (g.node_count() != d.size()) {
        throw input_error("drawing and graph disagree on node count");
    }
    check_in_unit_box(d);
    const Mapper map = make_mapper(options);

    std::ostringstream svg;
    svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << options.size_px
        << "\" height=\"" << options.size_px << "\" viewBox=\"0 0 " << options.size_px << ' '
        << options.size_px << "\">\n";
    svg << "<rect width=\"" << options.size_px << "\" height=\"" << options.size_px
        << "\" fill=\"" << options.background << "\"/>\n";
    for (const auto& [a, b] : g.edges()) {
        const Vec2 pa = map(d.pts[a]);
        const Vec2 pb = map(d.pts[b]);
        svg << "<line x1=\"" << px(pa.x) << "\" y1=\"" << px(pa.y) << "\" x2=\"" << px(pb.x)
            << "\" y2=\"" << px(pb.y) << "\" stroke=\"" << options.edge_color
            << "\" stroke-width=\"" << px(options.edge_width_px) << "\"/>\n";
    }
    for (const Vec2& p : d.pts) {
        const Vec2 q = map(p);
        svg << "<circle cx=\"" << px(q.x) << "\" cy=\"" << px(q.y) << "\" r=\""
            << px(options.node_radius_px) << "\" fill=\"" << options.node_color << "\"/>\n";
    }
    svg << "</svg>\n";

    std::ofstream out(path);
    if (!out) {
        throw input_error("cannot write '" + path.string() + "'");
    }
    out << svg.str();
    if (!out) {
        throw std::runtime_error("failed writing '" + path.string() + "'");
    }
}

namespace {

class Canvas {
public:
    Canvas(int size, Rgb fill) : size_(size), pixels_(static_cast<std::size_t>(size) * size * 3) {
        for (int i = 0; i < size * size; ++i) {
            set(i % size, i / size, fill);
        }
    }

    void set(int x, int y, Rgb c) {
        if (x < 0 || y < 0 || x >= size_ || y >= size_) return;
        const std::size_t at = (static_cast<std::size_t>(y) * size_ + x) * 3;
        pixels_[at] = c.r;
        pixels_[at + 1] = c.g;
        pixels_[at + 2] = c.b;
    }

    // Fill every pixel within `radius` of the segment [a, b].
    void stamp_segment(Vec2 a, Vec2 b, double radius, Rgb c) {
        const int x0 = static_cast<int>(std::floor(std::min(a.x, b.x) - radius));
        const int x1 = static_cast<int>(std::ceil(std::max(a.x, b.x) + radius));
        const int y0 = static_cast<int>(std::floor(std::min(a.y, b.y) - radius));
        const int y1 = static_cast<int>(std::ceil(std::max(a.y, b.y) + radius));
        const Vec2 ab = b - a;
        const double len_sq = dot(ab, ab);
        for (int y = y0; y <= y1; ++y) {
            for (int x = x0; x <= x1; ++x) {
                const Vec2 p{x + 0.5, y + 0.5};
                double t = len_sq > 0.0 ? dot(p - a, ab) / len_sq : 0.0;
                t = std::clamp(t, 0.0, 1.0);
                const Vec2 closest{a.x + ab.x * t, a.y + ab.y * t};
                if (distance(p, closest) <= radius) {
                    set(x, y, c);
                }
            }
        }
    }

    void stamp_disc(Vec2 center, double radius, Rgb c) {
        stamp_segment(center, center, radius, c);
    }

    std::span<const unsigned char> pixels() const { return pixels_; }

private:
    int size_;
    std::vector<unsigned char> pixels_;
};

}  // namespace

void render_png(const Drawing& d, const Graph& g, const std::filesystem::path& path,
                const RenderOptions& options) {
    if (g.node_count() != d.size()) {
        throw input_error("drawing and graph disagree on node count");
    }
    check_in_unit_box(d);
    const Mapper map = make_mapper(options);

    Canvas canvas(options.size_px, parse_color(options.background));
    const Rgb edge = parse_color(options.edge_color);
    const Rgb node = parse_color(options.node_color);
    for (const auto& [a, b] : g.edges()) {
        canvas.stamp_segment(map(d.pts[a]), map(d.pts[b]), options.edge_width_px / 2.0, edge);
    }
    for (const Vec2& p : d.pts) {
        canvas.stamp_disc(map(p), options.node_radius_px, node);
    }
    write_png_rgb(path, options.size_px, options.size_px, canvas.pixels());
}

}  // namespace gdmorph
