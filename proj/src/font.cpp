#include "vgqa/font.hpp"

#include <cstring>

#include "vgqa/errors.hpp"

namespace vgqa {

namespace {

struct GlyphDef {
  char c;
  std::array<const char*, 7> rows;
};

constexpr GlyphDef kGlyphs[] = {
    {'a', {".###.", "#...#", "#...#", "#####", "#...#", "#...#", "#...#"}},
    {'b', {"####.", "#...#", "#...#", "####.", "#...#", "#...#", "####."}},
    {'c', {".####", "#....", "#....", "#....", "#....", "#....", ".####"}},
    {'d', {"####.", "#...#", "#...#", "#...#", "#...#", "#...#", "####."}},
    {'e', {"#####", "#....", "#....", "####.", "#....", "#....", "#####"}},
    {'f', {"#####", "#....", "#....", "####.", "#....", "#....", "#...."}},
    {'g', {".####", "#....", "#....", "#..##", "#...#", "#...#", ".####"}},
    {'h', {"#...#", "#...#", "#...#", "#####", "#...#", "#...#", "#...#"}},
    {'i', {"#####", "..#..", "..#..", "..#..", "..#..", "..#..", "#####"}},
    {'j', {"#####", "....#", "....#", "....#", "#...#", "#...#", ".###."}},
    {'k', {"#...#", "#..#.", "#.#..", "##...", "#.#..", "#..#.", "#...#"}},
    {'l', {"#....", "#....", "#....", "#....", "#....", "#....", "#####"}},
    {'m', {"#...#", "##.##", "#.#.#", "#.#.#", "#...#", "#...#", "#...#"}},
    {'n', {"#...#", "##..#", "##..#", "#.#.#", "#..##", "#..##", "#...#"}},
    {'o', {".###.", "#...#", "#...#", "#...#", "#...#", "#...#", ".###."}},
    {'p', {"####.", "#...#", "#...#", "####.", "#....", "#....", "#...."}},
    {'q', {".###.", "#...#", "#...#", "#...#", "#.#.#", "#..#.", ".##.#"}},
    {'r', {"####.", "#...#", "#...#", "####.", "#.#..", "#..#.", "#...#"}},
    {'s', {".####", "#....", "#....", ".###.", "....#", "....#", "####."}},
    {'t', {"#####", "..#..", "..#..", "..#..", "..#..", "..#..", "..#.."}},
    {'u', {"#...#", "#...#", "#...#", "#...#", "#...#", "#...#", ".###."}},
    {'v', {"#...#", "#...#", "#...#", "#...#", ".#.#.", ".#.#.", "..#.."}},
    {'w', {"#...#", "#...#", "#...#", "#.#.#", "#.#.#", "##.##", "#...#"}},
    {'x', {"#...#", ".#.#.", ".#.#.", "..#..", ".#.#.", ".#.#.", "#...#"}},
    {'y', {"#...#", "#...#", ".#.#.", "..#..", "..#..", "..#..", "..#.."}},
    {'z', {"#####", "....#", "...#.", "..#..", ".#...", "#....", "#####"}},
    {'0', {".###.", "#...#", "#..##", "#.#.#", "##..#", "#...#", ".###."}},
    {'1', {"..#..", ".##..", "..#..", "..#..", "..#..", "..#..", "#####"}},
    {'2', {".###.", "#...#", "....#", "...#.", "..#..", ".#...", "#####"}},
    {'3', {"####.", "....#", "....#", ".###.", "....#", "....#", "####."}},
    {'4', {"...#.", "..##.", ".#.#.", "#..#.", "#####", "...#.", "...#."}},
    {'5', {"#####", "#....", "#....", "####.", "....#", "....#", "####."}},
    {'6', {".###.", "#....", "#....", "####.", "#...#", "#...#", ".###."}},
    {'7', {"#####", "....#", "...#.", "...#.", "..#..", "..#..", "..#.."}},
    {'8', {".###.", "#...#", "#...#", ".###.", "#...#", "#...#", ".###."}},
    {'9', {".###.", "#...#", "#...#", ".####", "....#", "....#", ".###."}},
    {' ', {".....", ".....", ".....", ".....", ".....", ".....", "....."}},
};

const GlyphDef* find_glyph(char c) {
  for (const auto& g : kGlyphs) {
    if (g.c == c) return &g;
  }
  return nullptr;
}

}  // namespace

bool glyph_supported(char c) { return find_glyph(c) != nullptr; }

const std::array<const char*, 7>& glyph_rows(char c) {
  const GlyphDef* g = find_glyph(c);
  if (!g) throw DataError(std::string("no glyph for character: '") + c + "'");
  return g->rows;
}

const std::vector<std::uint8_t>& GlyphAtlas::bitmap(char c) const {
  auto it = bitmaps.find(c);
  if (it == bitmaps.end()) {
    throw DataError(std::string("no glyph for character: '") + c + "'");
  }
  return it->second;
}

GlyphAtlas build_glyph_atlas(const StyleSpec& style) {
  GlyphAtlas atlas;
  int s = style.glyph_scale;
  atlas.width = 5 * s;
  atlas.height = 7 * s;
  for (const char* p = kGlyphCharset; *p; ++p) {
    const auto& rows = glyph_rows(*p);
    std::vector<std::uint8_t> bits(size_t(atlas.width) * size_t(atlas.height), 0);
    for (int y = 0; y < atlas.height; ++y) {
      for (int x = 0; x < atlas.width; ++x) {
        if (rows[size_t(y / s)][size_t(x / s)] == '#') {
          bits[size_t(y) * size_t(atlas.width) + size_t(x)] = 1;
        }
      }
    }
    atlas.bitmaps.emplace(*p, std::move(bits));
  }
  return atlas;
}

int text_width(const std::string& text, const StyleSpec& style) {
  if (text.empty()) return 0;
  return int(text.size()) * style.glyph_advance() - style.glyph_scale;
}

}  // namespace vgqa
