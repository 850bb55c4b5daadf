#pragma once

#include <array>
#include <compare>
#include <cstdint>
#include <cstdlib>
#include <string>

namespace vgqa {

struct Rgb {
  std::uint8_t r = 0;
  std::uint8_t g = 0;
  std::uint8_t b = 0;

  friend auto operator<=>(const Rgb&, const Rgb&) = default;
};

// Sum of absolute per-channel differences.
inline int color_distance(Rgb a, Rgb b) {
  return std::abs(int(a.r) - int(b.r)) + std::abs(int(a.g) - int(b.g)) +
         std::abs(int(a.b) - int(b.b));
}

// "#rrggbb"
std::string color_hex(Rgb c);

// Reserved drawing colors. Line colors keep at least kMinColorSeparation
// from these and from each other, so a pixel is never ambiguous even with
// per-channel noise well below half the segmentation tolerance.
inline constexpr Rgb kBackgroundColor{255, 255, 255};
inline constexpr Rgb kNodeColor{0, 0, 0};
inline constexpr Rgb kLabelColor{96, 96, 96};
inline constexpr int kMinColorSeparation = 180;

struct PaletteEntry {
  Rgb color;
  const char* name;  // short color word; line names are derived from it
};

// Fixed palette for line strokes and legend swatches.
inline constexpr std::array<PaletteEntry, 12> kLinePalette{{
    {{230, 30, 30}, "red"},
    {{0, 255, 255}, "cyan"},
    {{30, 0, 165}, "navy"},
    {{60, 195, 0}, "green"},
    {{195, 105, 255}, "violet"},
    {{210, 255, 105}, "lime"},
    {{105, 180, 195}, "steel"},
    {{255, 0, 195}, "magenta"},
    {{255, 180, 0}, "amber"},
    {{0, 60, 255}, "blue"},
    {{0, 150, 150}, "teal"},
    {{0, 255, 60}, "mint"},
}};

}  // namespace vgqa
