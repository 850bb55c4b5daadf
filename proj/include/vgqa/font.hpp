#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "vgqa/style.hpp"

namespace vgqa {

inline constexpr const char* kGlyphCharset = "abcdefghijklmnopqrstuvwxyz0123456789 ";

bool glyph_supported(char c);

// Base 5x7 pattern, rows top to bottom, '#' = ink. Every inked glyph
// touches row 0, row 6, column 0 and column 4, so a glyph's ink bounding
// box equals its cell exactly; OCR column segmentation relies on this.
const std::array<const char*, 7>& glyph_rows(char c);

struct GlyphAtlas {
  int width = 0;   // scaled cell width
  int height = 0;  // scaled cell height
  std::map<char, std::vector<std::uint8_t>> bitmaps;  // row-major, 0/1

  const std::vector<std::uint8_t>& bitmap(char c) const;
};

// Scales the base patterns by style.glyph_scale. The same bitmaps drive
// both label drawing and OCR template matching.
GlyphAtlas build_glyph_atlas(const StyleSpec& style);

// Pixel width of a rendered string (cells plus inter-cell gaps).
int text_width(const std::string& text, const StyleSpec& style);

}  // namespace vgqa
