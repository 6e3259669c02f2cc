#pragma once

#include <cstdint>
#include <vector>

#include "chimera/scene.hpp"

namespace chimera {

/// 8-bit grayscale image, row-major, 255 = white background.
struct Bitmap {
    int width = 0;
    int height = 0;
    std::vector<std::uint8_t> pixels;

    std::uint8_t at(int x, int y) const { return pixels[static_cast<std::size_t>(y) * width + x]; }
    bool operator==(const Bitmap&) const = default;
};

/// Renders the scene onto a white canvas mapped to the pixel grid. Internally
/// supersampled 2x and box-filtered down, deterministic for identical scenes.
Bitmap rasterize(const Scene& scene, int width, int height);

/// Box-filtered half-resolution copy (each output pixel averages 2x2 input).
Bitmap downsample2x(const Bitmap& src);

/// Root mean square pixel difference normalized to [0, 1].
/// Throws DimensionMismatchError for differently sized inputs.
double rmse(const Bitmap& a, const Bitmap& b);

}  // namespace chimera
