#pragma once

#include <string>

#include "vgqa/raster.hpp"

namespace vgqa {

// PNG file I/O, 8-bit RGB. Reading expands palette/gray images and strips
// alpha so every decoded frame matches RasterImage's layout. Failures
// throw DataError naming the path.
void write_png(const RasterImage& img, const std::string& path);
RasterImage read_png(const std::string& path);

}  // namespace vgqa
