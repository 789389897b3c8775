#pragma once

#include <filesystem>
#include <span>

namespace gdmorph {

// Write an 8-bit RGB image (row-major, 3 bytes per pixel) as a PNG.
// Deterministic for fixed input.
void write_png_rgb(const std::filesystem::path& path, int width, int height,
                   std::span<const unsigned char> rgb);

}  // namespace gdmorph
