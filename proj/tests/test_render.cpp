#include <doctest.h>

#include <filesystem>
#include <initializer_list>
#include <map>
#include <set>
#include <string>

#include "vgqa/errors.hpp"
#include "vgqa/font.hpp"
#include "vgqa/graph.hpp"
#include "vgqa/layout.hpp"
#include "vgqa/png_io.hpp"
#include "vgqa/render.hpp"

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

std::map<Rgb, int> histogram(const RasterImage& img) {
  std::map<Rgb, int> h;
  for (const auto& px : img.pixels) ++h[px];
  return h;
}

int disk_pixel_count(int r) {
  int count = 0;
  for (int dy = -r; dy <= r; ++dy) {
    for (int dx = -r; dx <= r; ++dx) {
      if (dx * dx + dy * dy <= r * r) ++count;
    }
  }
  return count;
}

std::string temp_path(const std::string& name) {
  return (std::filesystem::temp_directory_path() / name).string();
}

}  // namespace

TEST_CASE("rendered path shows circles, strokes, labels and a legend") {
  TransitGraph g = line_path({"a", "b", "c"});
  StyleSpec style;
  Layout layout = layout_graph(g, 7, style);
  RenderResult r = render(g, layout, style);

  CHECK(r.image.width == 1024);
  CHECK(r.image.height == 1024);

  auto h = histogram(r.image);
  // Disks stay intact: labels and strokes never overwrite them.
  CHECK(h[style.node_color] == 3 * disk_pixel_count(style.node_radius));
  CHECK(h[Rgb{230, 30, 30}] > 0);   // two strokes and one swatch
  CHECK(h[style.label_color] > 0);  // three labels and a legend row

  CHECK(r.sidecar.legend.rows.size() == 1);
  CHECK(r.sidecar.legend.rows[0].name == "redline");
  CHECK(r.sidecar.centers.size() == 3);
  CHECK(r.sidecar.label_boxes.size() == 3);
  CHECK(r.sidecar.graph == g);
}

TEST_CASE("every pixel is one of the declared colors") {
  TransitGraph g;
  add_line(g, 0, Rgb{230, 30, 30}, {"a", "b", "c", "d"});
  add_line(g, 1, Rgb{0, 255, 255}, {"e", "b", "f"});
  add_line(g, 2, Rgb{60, 195, 0}, {"g", "c", "h"});
  StyleSpec style;
  RenderResult r = render_with_layout(g, 21, style);

  std::set<Rgb> allowed{style.background, style.node_color, style.label_color,
                        Rgb{230, 30, 30}, Rgb{0, 255, 255}, Rgb{60, 195, 0}};
  for (const auto& px : r.image.pixels) {
    if (!allowed.count(px)) {
      CAPTURE(int(px.r));
      CAPTURE(int(px.g));
      CAPTURE(int(px.b));
      FAIL("foreign color in rendered image");
    }
  }
}

TEST_CASE("rendering is deterministic") {
  TransitGraph g = line_path({"nily", "leauts", "ostrava"});
  StyleSpec style;
  Layout layout = layout_graph(g, 3, style);
  RenderResult r1 = render(g, layout, style);
  RenderResult r2 = render(g, layout, style);
  CHECK(r1.image == r2.image);
  CHECK(r1.sidecar == r2.sidecar);

  RenderResult w1 = render_with_layout(g, 4, style);
  RenderResult w2 = render_with_layout(g, 4, style);
  CHECK(w1.image == w2.image);
}

TEST_CASE("sidecar centers equal the layout positions exactly") {
  TransitGraph g = line_path({"a", "b", "c", "d"});
  StyleSpec style;
  Layout layout = layout_graph(g, 9, style);
  RenderResult r = render(g, layout, style);
  for (const auto& [name, p] : layout.positions) {
    CHECK(r.sidecar.centers.at(name) == p);
  }
}

TEST_CASE("a single-character label equals its atlas bitmap on the canvas") {
  TransitGraph g = line_path({"a", "b", "c"});
  StyleSpec style;
  RenderResult r = render_with_layout(g, 15, style);
  GlyphAtlas atlas = build_glyph_atlas(style);

  Rect box = r.sidecar.label_boxes.at("a");
  CHECK(box.w == atlas.width);
  CHECK(box.h == atlas.height);
  const auto& bits = atlas.bitmap('a');
  for (int y = 0; y < box.h; ++y) {
    for (int x = 0; x < box.w; ++x) {
      bool ink = r.image.at(box.x + x, box.y + y) == style.label_color;
      bool expected = bits[size_t(y) * size_t(atlas.width) + size_t(x)] != 0;
      CHECK(ink == expected);
    }
  }
}

TEST_CASE("legend rows are stacked in line id order with exact swatches") {
  TransitGraph g;
  add_line(g, 2, Rgb{60, 195, 0}, {"g", "c"});
  add_line(g, 0, Rgb{230, 30, 30}, {"a", "b", "c"});
  add_line(g, 1, Rgb{0, 255, 255}, {"e", "b"});
  StyleSpec style;
  RasterImage img = RasterImage::filled(1024, 1024, style.background);
  LegendBlock block = draw_legend(img, g.lines, style);

  REQUIRE(block.rows.size() == 3);
  CHECK(block.rows[0].line_id == 0);
  CHECK(block.rows[1].line_id == 1);
  CHECK(block.rows[2].line_id == 2);
  CHECK(block.rows[0].swatch.y < block.rows[1].swatch.y);
  CHECK(block.rows[1].swatch.y < block.rows[2].swatch.y);

  const Rect& sw = block.rows[1].swatch;
  for (int y = sw.y; y < sw.bottom(); ++y) {
    for (int x = sw.x; x < sw.right(); ++x) {
      CHECK(img.at(x, y) == Rgb{0, 255, 255});
    }
  }
  for (const auto& row : block.rows) {
    CHECK(block.box.intersects(row.swatch));
    CHECK(block.box.intersects(row.text));
  }
}

TEST_CASE("an encircled station with no label room fails by name") {
  TransitGraph g;
  add_line(g, 0, Rgb{230, 30, 30}, {"west", "mid", "east"});
  add_line(g, 1, Rgb{0, 255, 255}, {"north", "mid", "south"});
  Layout l;
  l.width = l.height = 1024;
  l.positions["mid"] = {500, 500};
  l.positions["east"] = {543, 500};
  l.positions["west"] = {457, 500};
  l.positions["north"] = {500, 457};
  l.positions["south"] = {500, 543};
  CHECK_THROWS_WITH_AS(render(g, l, StyleSpec{}),
                       "no label position for station mid", DataError);
}

TEST_CASE("render rejects a layout that misses a station") {
  TransitGraph g = line_path({"a", "b"});
  Layout l;
  l.width = l.height = 1024;
  l.positions["a"] = {200, 300};
  CHECK_THROWS_WITH_AS(render(g, l, StyleSpec{}),
                       "layout has no position for station b", DataError);
}

TEST_CASE("png files round-trip bit for bit") {
  TransitGraph g = line_path({"a", "b", "c"});
  StyleSpec style;
  RenderResult r = render_with_layout(g, 12, style);
  std::string path = temp_path("vgqa_render_roundtrip.png");
  write_png(r.image, path);
  RasterImage back = read_png(path);
  CHECK(back == r.image);
  std::filesystem::remove(path);

  CHECK_THROWS_AS(read_png(temp_path("vgqa_missing.png")), DataError);
}

TEST_CASE("sidecar text round-trips to an equal sidecar") {
  TransitGraph g;
  add_line(g, 0, Rgb{230, 30, 30}, {"a", "b", "c"});
  add_line(g, 1, Rgb{0, 255, 255}, {"d", "b"});
  canonicalize(g);  // the saved graph embeds in canonical form
  StyleSpec style;
  RenderResult r = render_with_layout(g, 33, style);
  std::string text = save_sidecar(r.sidecar);
  Sidecar back = load_sidecar(text);
  CHECK(back == r.sidecar);
  CHECK(save_sidecar(back) == text);

  CHECK_THROWS_AS(load_sidecar("{"), DataError);
  CHECK_THROWS_AS(load_sidecar("{}"), DataError);
}
