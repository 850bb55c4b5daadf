#pragma once

#include "vgqa/color.hpp"

namespace vgqa {

struct Point {
  int x = 0;
  int y = 0;

  friend bool operator==(const Point&, const Point&) = default;
};

struct Rect {
  int x = 0;
  int y = 0;
  int w = 0;
  int h = 0;

  int right() const { return x + w; }
  int bottom() const { return y + h; }
  bool contains(int px, int py) const {
    return px >= x && px < right() && py >= y && py < bottom();
  }
  bool intersects(const Rect& o) const {
    return x < o.right() && o.x < right() && y < o.bottom() && o.y < bottom();
  }
  Rect inflated(int dx, int dy) const {
    return {x - dx, y - dy, w + 2 * dx, h + 2 * dy};
  }

  friend bool operator==(const Rect&, const Rect&) = default;
};

// Drawing constants shared by the renderer, the layout engine, and the
// vision module (which assumes them when sizing its searches).
struct StyleSpec {
  int node_radius = 14;
  int stroke_width = 5;
  int label_offset = 4;  // gap between node disk and label box
  int glyph_scale = 2;   // base glyphs are 5x7
  Rgb background = kBackgroundColor;
  Rgb node_color = kNodeColor;
  Rgb label_color = kLabelColor;
  Point legend_origin{8, 8};
  int legend_row_height = 20;
  int legend_swatch_width = 24;
  int legend_swatch_height = 12;
  int legend_gap = 8;  // swatch to text
  int canvas_margin = 40;

  int glyph_width() const { return 5 * glyph_scale; }
  int glyph_height() const { return 7 * glyph_scale; }
  int glyph_advance() const { return glyph_width() + glyph_scale; }

  // Layout hard minima: center-to-center node distance and node-to-
  // non-incident-edge clearance.
  int min_node_distance() const { return 3 * node_radius; }
  int min_edge_clearance() const { return 2 * node_radius; }

  // Vertical band reserved for the legend block.
  int reserved_top(int n_lines) const {
    return legend_origin.y + n_lines * legend_row_height + legend_gap;
  }

  int canvas_for_lines(int n_lines) const { return n_lines >= 5 ? 1536 : 1024; }
};

}  // namespace vgqa
