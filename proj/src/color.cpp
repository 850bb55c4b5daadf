#include "vgqa/color.hpp"

#include <cstdio>

namespace vgqa {

std::string color_hex(Rgb c) {
  char buf[8];
  std::snprintf(buf, sizeof(buf), "#%02x%02x%02x", c.r, c.g, c.b);
  return buf;
}

}  // namespace vgqa
