#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <initializer_list>
#include <string>
#include <vector>

#include "vgqa/font.hpp"
#include "vgqa/geometry.hpp"
#include "vgqa/graph.hpp"
#include "vgqa/render.hpp"
#include "vgqa/rng.hpp"
#include "vgqa/vision.hpp"

using namespace vgqa;

namespace {

TransitGraph line_path(std::initializer_list<const char*> names) {
  TransitGraph g;
  for (const char* n : names) g.stations.push_back({n, n, {}});
  g.lines.push_back({0, "redline", Rgb{230, 30, 30}, {}, {}});
  for (size_t i = 1; i < g.stations.size(); ++i) {
    g.edges.push_back({g.stations[i - 1].name, g.stations[i].name, 0});
  }
  return g;
}

void add_line(TransitGraph& g, int id, const Rgb& color,
              std::initializer_list<const char*> names) {
  g.lines.push_back({id, "line" + std::to_string(id), color, {}, {}});
  const char* prev = nullptr;
  for (const char* n : names) {
    if (g.station_index(n) < 0) g.stations.push_back({n, n, {}});
    if (prev) g.edges.push_back({prev, n, id});
    prev = n;
  }
}

int index_at(const std::vector<DetectedNode>& nodes, Point center) {
  for (size_t i = 0; i < nodes.size(); ++i) {
    if (nodes[i].center == center) return int(i);
  }
  return -1;
}

void paint_disk(RasterImage& img, Point c, int r, Rgb color) {
  for (int dy = -r; dy <= r; ++dy) {
    for (int dx = -r; dx <= r; ++dx) {
      if (dx * dx + dy * dy > r * r) continue;
      if (img.in_bounds(c.x + dx, c.y + dy)) img.at(c.x + dx, c.y + dy) = color;
    }
  }
}

void paint_stroke(RasterImage& img, Vec2 a, Vec2 b, int width, Rgb color) {
  int x0 = int(std::floor(std::min(a.x, b.x))) - width;
  int x1 = int(std::ceil(std::max(a.x, b.x))) + width;
  int y0 = int(std::floor(std::min(a.y, b.y))) - width;
  int y1 = int(std::ceil(std::max(a.y, b.y))) + width;
  for (int y = y0; y <= y1; ++y) {
    for (int x = x0; x <= x1; ++x) {
      if (!img.in_bounds(x, y)) continue;
      if (point_segment_distance({double(x), double(y)}, a, b) <= width / 2.0) {
        img.at(x, y) = color;
      }
    }
  }
}

bool has_warning(const std::vector<std::string>& warnings,
                 const std::string& needle) {
  for (const auto& w : warnings) {
    if (w.find(needle) != std::string::npos) return true;
  }
  return false;
}

TransitGraph stripped(TransitGraph g) {
  canonicalize(g);
  return g;
}

}  // namespace

TEST_CASE("node detection finds every disk at its exact center") {
  TransitGraph g = line_path({"ada", "bo", "cim"});
  StyleSpec style;
  RenderResult r = render_with_layout(g, 11, style);
  VisionConfig cfg;

  std::vector<std::string> warnings;
  auto nodes = detect_nodes(r.image, style, cfg, &warnings);
  REQUIRE(nodes.size() == 3);
  CHECK(warnings.empty());
  for (const auto& [name, center] : r.sidecar.centers) {
    int i = index_at(nodes, center);
    REQUIRE(i >= 0);
    CHECK(nodes[i].radius == doctest::Approx(style.node_radius).epsilon(0.05));
  }
  // Sorted by (y, x).
  for (size_t i = 1; i < nodes.size(); ++i) {
    bool ordered = nodes[i - 1].center.y < nodes[i].center.y ||
                   (nodes[i - 1].center.y == nodes[i].center.y &&
                    nodes[i - 1].center.x <= nodes[i].center.x);
    CHECK(ordered);
  }
}

TEST_CASE("undersized and oversized blobs are dropped with a warning") {
  StyleSpec style;
  RasterImage img = RasterImage::filled(256, 256, style.background);
  paint_disk(img, {64, 64}, 5, style.node_color);    // far too small
  paint_disk(img, {160, 160}, 30, style.node_color); // far too big
  paint_disk(img, {64, 200}, 14, style.node_color);  // just right

  VisionConfig cfg;
  std::vector<std::string> warnings;
  auto nodes = detect_nodes(img, style, cfg, &warnings);
  REQUIRE(nodes.size() == 1);
  CHECK(nodes[0].center == Point{64, 200});
  CHECK(warnings.size() == 2);
  CHECK(has_warning(warnings, "ignored"));
}

TEST_CASE("a blank image parses to an empty graph") {
  StyleSpec style;
  RasterImage img = RasterImage::filled(512, 512, style.background);
  VisionConfig cfg;

  RecoveredGraph rec = parse_image(img, style, cfg);
  CHECK(rec.nodes.empty());
  CHECK(rec.names.empty());
  CHECK(rec.adjacency.empty());
  CHECK(rec.legend.empty());
  CHECK(has_warning(rec.warnings, "no legend found"));
  CHECK(has_warning(rec.warnings, "no stations detected in image"));
  CHECK(rec.to_graph() == TransitGraph{});
}

TEST_CASE("edge detection recovers the drawn segments and nothing else") {
  TransitGraph g = line_path({"ada", "bo", "cim"});
  StyleSpec style;
  RenderResult r = render_with_layout(g, 11, style);
  VisionConfig cfg;

  auto nodes = detect_nodes(r.image, style, cfg, nullptr);
  std::vector<std::string> warnings;
  auto edges = detect_edges(r.image, nodes, style, cfg, &warnings);
  REQUIRE(edges.size() == 2);

  int a = index_at(nodes, r.sidecar.centers.at("ada"));
  int b = index_at(nodes, r.sidecar.centers.at("bo"));
  int c = index_at(nodes, r.sidecar.centers.at("cim"));
  for (const auto& e : edges) {
    CHECK(e.color == Rgb{230, 30, 30});
    CHECK(e.fraction >= 0.95);
    bool ab = (e.a == std::min(a, b) && e.b == std::max(a, b));
    bool bc = (e.a == std::min(b, c) && e.b == std::max(b, c));
    CHECK((ab || bc));
  }
}

TEST_CASE("a parallel stroke outside the median window is not an edge") {
  StyleSpec style;
  RasterImage img = RasterImage::filled(400, 200, style.background);
  Point left{60, 100}, right{340, 100};
  paint_disk(img, left, style.node_radius, style.node_color);
  paint_disk(img, right, style.node_radius, style.node_color);
  // The magenta stroke joins the disks; the amber one runs alongside,
  // inside the search band but too far off axis to count.
  paint_stroke(img, {60, 100}, {340, 100}, style.stroke_width,
               Rgb{255, 0, 195});
  paint_stroke(img, {60, 108}, {340, 108}, style.stroke_width,
               Rgb{255, 180, 0});

  VisionConfig cfg;
  auto nodes = detect_nodes(img, style, cfg, nullptr);
  REQUIRE(nodes.size() == 2);
  auto edges = detect_edges(img, nodes, style, cfg, nullptr);
  REQUIRE(edges.size() == 1);
  CHECK(edges[0].color == Rgb{255, 0, 195});
}

TEST_CASE("a stroke that stops short of the disks is vetoed") {
  StyleSpec style;
  RasterImage img = RasterImage::filled(400, 200, style.background);
  paint_disk(img, {60, 100}, style.node_radius, style.node_color);
  paint_disk(img, {340, 100}, style.node_radius, style.node_color);
  paint_stroke(img, {100, 100}, {300, 100}, style.stroke_width,
               Rgb{0, 60, 255});

  VisionConfig cfg;
  auto nodes = detect_nodes(img, style, cfg, nullptr);
  std::vector<std::string> warnings;
  auto edges = detect_edges(img, nodes, style, cfg, &warnings);
  CHECK(edges.empty());
  CHECK(has_warning(warnings, "does not reach both disks"));
}

TEST_CASE("labels read back verbatim with full confidence") {
  TransitGraph g = line_path({"nily", "mokavu", "zedator"});
  StyleSpec style;
  RenderResult r = render_with_layout(g, 23, style);
  VisionConfig cfg;
  GlyphAtlas atlas = build_glyph_atlas(style);

  std::vector<std::string> warnings;
  auto labels = ocr_labels(r.image, atlas, style, cfg, &warnings);
  CHECK(warnings.empty());
  // Three station labels plus the legend row text.
  REQUIRE(labels.size() == 4);
  for (const char* name : {"nily", "mokavu", "zedator", "redline"}) {
    auto it = std::find_if(labels.begin(), labels.end(),
                           [&](const DetectedLabel& l) {
                             return l.text == name;
                           });
    REQUIRE(it != labels.end());
    CHECK(it->confidence == 1.0);
    if (std::string(name) != "redline") {
      CHECK(it->box == r.sidecar.label_boxes.at(name));
    }
  }
}

TEST_CASE("a damaged glyph is dropped and flagged") {
  TransitGraph g = line_path({"nily", "mokavu", "zedator"});
  StyleSpec style;
  RenderResult r = render_with_layout(g, 23, style);

  // Hollow out the first glyph of one label, keeping its outermost
  // columns so the cluster box (and with it the glyph grid) is unmoved.
  Rect box = r.sidecar.label_boxes.at("zedator");
  RasterImage img = r.image;
  for (int y = box.y; y < box.bottom(); ++y) {
    for (int x = box.x + 1; x < box.x + 9; ++x) {
      img.at(x, y) = style.background;
    }
  }

  VisionConfig cfg;
  GlyphAtlas atlas = build_glyph_atlas(style);
  std::vector<std::string> warnings;
  auto labels = ocr_labels(img, atlas, style, cfg, &warnings);
  bool damaged_seen = false;
  for (const auto& l : labels) {
    if (l.box.y == box.y && std::abs(l.box.x - box.x) < 16) {
      damaged_seen = true;
      CHECK(l.confidence < 1.0);
      CHECK(l.text != "zedator");
    }
  }
  CHECK(damaged_seen);
  CHECK(has_warning(warnings, "unreadable glyph"));
}

TEST_CASE("label association keeps the closer label on a contested node") {
  std::vector<DetectedNode> nodes;
  nodes.push_back({{0, 0}, 14, 600});
  nodes.push_back({{100, 0}, 14, 600});
  std::vector<DetectedLabel> labels;
  labels.push_back({"near", {5, -7, 10, 14}, 1.0});   // center (10, 0)
  labels.push_back({"far", {25, -7, 10, 14}, 1.0});   // center (30, 0)

  std::vector<std::string> warnings;
  auto names = associate_labels(nodes, labels, &warnings);
  REQUIRE(names.size() == 2);
  CHECK(names[0] == "near");
  CHECK(names[1] == "far");
  CHECK(warnings.empty());
}

TEST_CASE("unlabeled stations get placeholder names") {
  std::vector<DetectedNode> nodes;
  nodes.push_back({{0, 0}, 14, 600});
  nodes.push_back({{100, 0}, 14, 600});
  nodes.push_back({{200, 0}, 14, 600});
  std::vector<DetectedLabel> labels;
  labels.push_back({"solo", {95, 20, 10, 14}, 1.0});

  std::vector<std::string> warnings;
  auto names = associate_labels(nodes, labels, &warnings);
  CHECK(names == std::vector<std::string>{"unk_0", "solo", "unk_1"});
  CHECK(has_warning(warnings, "has no label"));
}

TEST_CASE("duplicate label texts are disambiguated") {
  std::vector<DetectedNode> nodes;
  nodes.push_back({{0, 0}, 14, 600});
  nodes.push_back({{100, 0}, 14, 600});
  std::vector<DetectedLabel> labels;
  labels.push_back({"twin", {-5, 20, 10, 14}, 1.0});
  labels.push_back({"twin", {95, 20, 10, 14}, 1.0});

  std::vector<std::string> warnings;
  auto names = associate_labels(nodes, labels, &warnings);
  CHECK(names == std::vector<std::string>{"twin", "twin_2"});
  CHECK(has_warning(warnings, "duplicate label text 'twin'"));
}

TEST_CASE("the legend reads out in row order with exact colors") {
  TransitGraph g;
  add_line(g, 0, Rgb{230, 30, 30}, {"ada", "bo", "cim"});
  add_line(g, 1, Rgb{0, 255, 255}, {"bo", "dol", "eta"});
  add_line(g, 2, Rgb{60, 195, 0}, {"cim", "dol"});
  StyleSpec style;
  RenderResult r = render_with_layout(g, 31, style);
  VisionConfig cfg;
  GlyphAtlas atlas = build_glyph_atlas(style);

  std::vector<std::string> warnings;
  LegendReadout legend = read_legend(r.image, atlas, style, cfg, &warnings);
  CHECK(warnings.empty());
  REQUIRE(legend.entries.size() == 3);
  CHECK(legend.entries[0].name == "line0");
  CHECK(legend.entries[0].color == Rgb{230, 30, 30});
  CHECK(legend.entries[1].name == "line1");
  CHECK(legend.entries[1].color == Rgb{0, 255, 255});
  CHECK(legend.entries[2].name == "line2");
  CHECK(legend.entries[2].color == Rgb{60, 195, 0});
  // The box covers every row, for masking before station OCR.
  CHECK(legend.box.contains(legend.entries[2].swatch.x,
                            legend.entries[2].swatch.y));
  CHECK(legend.box.y <= legend.entries[0].swatch.y);
}

TEST_CASE("full optical recovery reproduces the drawn graph") {
  TransitGraph g;
  add_line(g, 0, Rgb{230, 30, 30}, {"ada", "bo", "cim", "dol"});
  add_line(g, 1, Rgb{0, 255, 255}, {"eta", "bo", "fum", "gor"});
  add_line(g, 2, Rgb{60, 195, 0}, {"hix", "cim", "fum"});
  g.lines[0].name = "redline";
  g.lines[1].name = "cyanline";
  g.lines[2].name = "greenline";
  StyleSpec style;
  VisionConfig cfg;

  for (std::uint64_t seed : {1, 2, 3}) {
    CAPTURE(seed);
    RenderResult r = render_with_layout(g, seed, style);
    RecoveredGraph rec = parse_image(r.image, style, cfg);
    TransitGraph got = rec.to_graph();
    canonicalize(got);
    CHECK(got == stripped(g));
    CHECK(rec.warnings.empty());
  }
}

TEST_CASE("recovery is unchanged under bounded pixel noise") {
  TransitGraph g;
  add_line(g, 0, Rgb{195, 105, 255}, {"ada", "bo", "cim"});
  add_line(g, 1, Rgb{255, 180, 0}, {"bo", "dol"});
  StyleSpec style;
  RenderResult r = render_with_layout(g, 5, style);

  // Perturb every channel by up to +-10: L1 distance at most 30, half
  // the segmentation tolerance.
  RasterImage noisy = r.image;
  Rng rng(424242);
  for (auto& px : noisy.pixels) {
    auto jitter = [&](std::uint8_t v) {
      int d = rng.next_int(-10, 10);
      return std::uint8_t(std::clamp(int(v) + d, 0, 255));
    };
    px = {jitter(px.r), jitter(px.g), jitter(px.b)};
  }

  VisionConfig cfg;
  RecoveredGraph clean = parse_image(r.image, style, cfg);
  RecoveredGraph fuzzy = parse_image(noisy, style, cfg);
  CHECK(clean.to_graph() == fuzzy.to_graph());
  CHECK(clean.nodes == fuzzy.nodes);
  TransitGraph got = fuzzy.to_graph();
  canonicalize(got);
  CHECK(got == stripped(g));
}

TEST_CASE("legend text never becomes a station name") {
  TransitGraph g = line_path({"ada", "bo"});
  StyleSpec style;
  RenderResult r = render_with_layout(g, 17, style);
  VisionConfig cfg;

  RecoveredGraph rec = parse_image(r.image, style, cfg);
  REQUIRE(rec.names.size() == 2);
  for (const auto& n : rec.names) CHECK(n != "redline");
  REQUIRE(rec.legend.size() == 1);
  CHECK(rec.legend[0].name == "redline");
}
