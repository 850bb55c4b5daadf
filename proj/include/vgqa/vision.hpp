#pragma once

#include <string>
#include <vector>

#include "vgqa/color.hpp"
#include "vgqa/font.hpp"
#include "vgqa/graph.hpp"
#include "vgqa/raster.hpp"
#include "vgqa/style.hpp"

namespace vgqa {

// Pixel-level tolerances for graph recovery. The defaults assume the
// renderer's exact-color discipline but leave headroom for bounded
// per-pixel noise up to color_tolerance/2.
struct VisionConfig {
  int color_tolerance = 60;    // max L1 distance for a pixel to claim a class
  int edge_samples = 64;       // probes along each candidate segment
  double edge_fraction = 0.8;  // minimum covered fraction to accept an edge
  int band_halfwidth = 12;     // perpendicular search range per probe
  double max_median_offset = 5.0;  // winning strokes must track the segment
  int label_merge_gap = 6;         // widest background run inside one label
  double glyph_drop_cutoff = 0.25; // Hamming fraction that disqualifies a glyph
};

struct DetectedNode {
  Point center;
  double radius = 0;
  int area = 0;

  friend bool operator==(const DetectedNode&, const DetectedNode&) = default;
};

struct DetectedLabel {
  std::string text;
  Rect box;
  double confidence = 1.0;

  friend bool operator==(const DetectedLabel&, const DetectedLabel&) = default;
};

struct RecoveredEdge {
  int a = 0;  // indices into the detected node list, a < b
  int b = 0;
  Rgb color;
  double fraction = 0;

  friend bool operator==(const RecoveredEdge&, const RecoveredEdge&) = default;
};

struct LegendEntry {
  Rgb color;
  std::string name;
  Rect swatch;

  friend bool operator==(const LegendEntry&, const LegendEntry&) = default;
};

struct LegendReadout {
  std::vector<LegendEntry> entries;  // top to bottom
  Rect box;  // region to blank before station label OCR

  friend bool operator==(const LegendReadout&, const LegendReadout&) = default;
};

struct RecoveredGraph {
  std::vector<DetectedNode> nodes;
  std::vector<std::string> names;  // parallel to nodes
  std::vector<RecoveredEdge> adjacency;
  std::vector<LegendEntry> legend;
  std::vector<std::string> warnings;

  // Stations, lines and edges as a symbolic graph; lines take legend row
  // order. Not validated: names and colors are whatever the pixels said.
  TransitGraph to_graph() const;
};

// Connected components of node-colored pixels whose area is within
// [0.5, 1.5] of a drawn disk, sorted by (y, x). Dropped blobs warn.
std::vector<DetectedNode> detect_nodes(const RasterImage& img,
                                       const StyleSpec& style,
                                       const VisionConfig& cfg,
                                       std::vector<std::string>* warnings);

// For every node pair, samples the open segment between the disks and
// accepts the line color that covers >= edge_fraction of the probes while
// hugging the segment (median offset small, stroke touching both disks).
std::vector<RecoveredEdge> detect_edges(const RasterImage& img,
                                        const std::vector<DetectedNode>& nodes,
                                        const StyleSpec& style,
                                        const VisionConfig& cfg,
                                        std::vector<std::string>* warnings);

// Clusters label-colored pixels, cuts each cluster at the fixed glyph
// pitch, and classifies every cell by minimum Hamming distance to the
// atlas. Sorted by (y, x) of the box.
std::vector<DetectedLabel> ocr_labels(const RasterImage& img,
                                      const GlyphAtlas& atlas,
                                      const StyleSpec& style,
                                      const VisionConfig& cfg,
                                      std::vector<std::string>* warnings);

// Greedy closest-first matching of labels to nodes; a contested node goes
// to the closer label and the loser moves on to its next-nearest free
// node. Unnamed nodes get "unk_<k>"; duplicate texts get a numeric suffix.
std::vector<std::string> associate_labels(
    const std::vector<DetectedNode>& nodes,
    const std::vector<DetectedLabel>& labels,
    std::vector<std::string>* warnings);

// Locates solid swatch rectangles and reads the text to their right.
// A swatch without readable text falls back to the color's hex name.
LegendReadout read_legend(const RasterImage& img, const GlyphAtlas& atlas,
                          const StyleSpec& style, const VisionConfig& cfg,
                          std::vector<std::string>* warnings);

// Full optical recovery: nodes, legend, labels (legend region blanked
// first), name association, then edges. Never throws on image content;
// everything questionable lands in warnings.
RecoveredGraph parse_image(const RasterImage& img, const StyleSpec& style,
                           const VisionConfig& cfg);

}  // namespace vgqa
