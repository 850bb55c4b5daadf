#pragma once

#include <vector>

#include "vgqa/color.hpp"

namespace vgqa {

// Row-major 8-bit RGB frame, no alpha.
struct RasterImage {
  int width = 0;
  int height = 0;
  std::vector<Rgb> pixels;

  static RasterImage filled(int w, int h, Rgb color) {
    return {w, h, std::vector<Rgb>(size_t(w) * size_t(h), color)};
  }

  bool in_bounds(int x, int y) const {
    return x >= 0 && x < width && y >= 0 && y < height;
  }
  Rgb& at(int x, int y) { return pixels[size_t(y) * size_t(width) + size_t(x)]; }
  const Rgb& at(int x, int y) const {
    return pixels[size_t(y) * size_t(width) + size_t(x)];
  }

  friend bool operator==(const RasterImage&, const RasterImage&) = default;
};

}  // namespace vgqa
