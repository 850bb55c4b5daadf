#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "vgqa/graph.hpp"
#include "vgqa/layout.hpp"
#include "vgqa/raster.hpp"
#include "vgqa/style.hpp"

namespace vgqa {

struct LegendRow {
  int line_id = 0;
  std::string name;  // text as drawn
  Rect swatch;
  Rect text;

  friend bool operator==(const LegendRow&, const LegendRow&) = default;
};

struct LegendBlock {
  std::vector<LegendRow> rows;  // top to bottom, line id order
  Rect box;                     // union of all swatches and texts

  friend bool operator==(const LegendBlock&, const LegendBlock&) = default;
};

// Ground truth captured at render time; ablation modes read graph
// structure and names from here instead of from the pixels.
struct Sidecar {
  TransitGraph graph;
  int width = 0;
  int height = 0;
  std::map<std::string, Point> centers;     // station name -> disk center
  std::map<std::string, Rect> label_boxes;  // station name -> drawn text box
  LegendBlock legend;
  int node_radius = 0;
  int stroke_width = 0;
  int glyph_scale = 0;

  friend bool operator==(const Sidecar&, const Sidecar&) = default;
};

struct RenderResult {
  RasterImage image;
  Sidecar sidecar;
};

// Draws background, legend, line strokes, node disks and station labels,
// in that order, using exact colors only. Throws DataError when a label
// cannot be placed (naming the station) or a character has no glyph.
RenderResult render(const TransitGraph& g, const Layout& layout,
                    const StyleSpec& style);

// Lays the graph out with seeds derived from `seed`, retrying label
// placement failures with a fresh arrangement.
RenderResult render_with_layout(const TransitGraph& g, std::uint64_t seed,
                                const StyleSpec& style);

LegendBlock draw_legend(RasterImage& img, const std::vector<Line>& lines,
                        const StyleSpec& style);

std::string save_sidecar(const Sidecar& s);
Sidecar load_sidecar(const std::string& text);
void save_sidecar_file(const Sidecar& s, const std::string& path);
Sidecar load_sidecar_file(const std::string& path);

}  // namespace vgqa
