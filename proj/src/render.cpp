#include "vgqa/render.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>
#include <utility>

#include <nlohmann/json.hpp>

#include "vgqa/errors.hpp"
#include "vgqa/font.hpp"
#include "vgqa/geometry.hpp"
#include "vgqa/graph_io.hpp"
#include "vgqa/rng.hpp"

namespace vgqa {

using ordered_json = nlohmann::ordered_json;

namespace {

Vec2 to_vec(Point p) { return {double(p.x), double(p.y)}; }

Rect rect_union(const Rect& a, const Rect& b) {
  int x0 = std::min(a.x, b.x);
  int y0 = std::min(a.y, b.y);
  int x1 = std::max(a.right(), b.right());
  int y1 = std::max(a.bottom(), b.bottom());
  return {x0, y0, x1 - x0, y1 - y0};
}

double point_rect_distance(Vec2 p, const Rect& r) {
  double dx = std::max({double(r.x) - p.x, 0.0, p.x - double(r.right())});
  double dy = std::max({double(r.y) - p.y, 0.0, p.y - double(r.bottom())});
  return std::hypot(dx, dy);
}

double rect_segment_distance(const Rect& r, Vec2 a, Vec2 b) {
  auto inside = [&](Vec2 p) {
    return p.x >= r.x && p.x <= r.right() && p.y >= r.y && p.y <= r.bottom();
  };
  if (inside(a) || inside(b)) return 0;
  Vec2 c0{double(r.x), double(r.y)};
  Vec2 c1{double(r.right()), double(r.y)};
  Vec2 c2{double(r.right()), double(r.bottom())};
  Vec2 c3{double(r.x), double(r.bottom())};
  return std::min(std::min(segment_gap(a, b, c0, c1), segment_gap(a, b, c1, c2)),
                  std::min(segment_gap(a, b, c2, c3), segment_gap(a, b, c3, c0)));
}

void draw_disk(RasterImage& img, Point c, int r, Rgb color) {
  for (int y = c.y - r; y <= c.y + r; ++y) {
    for (int x = c.x - r; x <= c.x + r; ++x) {
      int dx = x - c.x;
      int dy = y - c.y;
      if (dx * dx + dy * dy <= r * r && img.in_bounds(x, y)) {
        img.at(x, y) = color;
      }
    }
  }
}

// Solid stroke with round caps: every pixel whose center lies within
// width/2 of the segment.
void draw_stroke(RasterImage& img, Point a, Point b, int width, Rgb color) {
  double half = width / 2.0;
  int pad = width;
  int x0 = std::min(a.x, b.x) - pad;
  int x1 = std::max(a.x, b.x) + pad;
  int y0 = std::min(a.y, b.y) - pad;
  int y1 = std::max(a.y, b.y) + pad;
  Vec2 va = to_vec(a);
  Vec2 vb = to_vec(b);
  for (int y = y0; y <= y1; ++y) {
    for (int x = x0; x <= x1; ++x) {
      if (!img.in_bounds(x, y)) continue;
      if (point_segment_distance({double(x), double(y)}, va, vb) <= half) {
        img.at(x, y) = color;
      }
    }
  }
}

void fill_rect(RasterImage& img, const Rect& r, Rgb color) {
  for (int y = r.y; y < r.bottom(); ++y) {
    for (int x = r.x; x < r.right(); ++x) {
      if (img.in_bounds(x, y)) img.at(x, y) = color;
    }
  }
}

void draw_text(RasterImage& img, int x, int y, const std::string& text,
               const GlyphAtlas& atlas, Rgb color, const StyleSpec& style) {
  int cx = x;
  for (char ch : text) {
    const auto& bits = atlas.bitmap(ch);
    for (int gy = 0; gy < atlas.height; ++gy) {
      for (int gx = 0; gx < atlas.width; ++gx) {
        if (bits[size_t(gy) * size_t(atlas.width) + size_t(gx)] &&
            img.in_bounds(cx + gx, y + gy)) {
          img.at(cx + gx, y + gy) = color;
        }
      }
    }
    cx += style.glyph_advance();
  }
}

std::vector<const Line*> lines_by_id(const std::vector<Line>& lines) {
  std::vector<const Line*> order;
  for (const auto& l : lines) order.push_back(&l);
  std::sort(order.begin(), order.end(),
            [](const Line* a, const Line* b) { return a->id < b->id; });
  return order;
}

// E, NE, N, NW, W, SW, S, SE — first candidate that collides with nothing
// wins, so the common case reads to the right of the node.
std::vector<Rect> label_candidates(Point c, int w, int h,
                                   const StyleSpec& style) {
  int d = style.node_radius + style.label_offset;
  int dd = int(std::lround(d * 0.7071067811865476));
  return {
      {c.x + d, c.y - h / 2, w, h},      {c.x + dd, c.y - dd - h, w, h},
      {c.x - w / 2, c.y - d - h, w, h},  {c.x - dd - w, c.y - dd - h, w, h},
      {c.x - d - w, c.y - h / 2, w, h},  {c.x - dd - w, c.y + dd, w, h},
      {c.x - w / 2, c.y + d, w, h},      {c.x + dd, c.y + dd, w, h},
  };
}

ordered_json rect_json(const Rect& r) {
  return {{"x", r.x}, {"y", r.y}, {"w", r.w}, {"h", r.h}};
}

Rect rect_from_json(const ordered_json& j, const std::string& where) {
  for (const char* k : {"x", "y", "w", "h"}) {
    if (!j.contains(k) || !j[k].is_number_integer()) {
      throw DataError("sidecar: " + where + " needs integer " + k);
    }
  }
  return {j["x"].get<int>(), j["y"].get<int>(), j["w"].get<int>(),
          j["h"].get<int>()};
}

}  // namespace

LegendBlock draw_legend(RasterImage& img, const std::vector<Line>& lines,
                        const StyleSpec& style) {
  LegendBlock block;
  GlyphAtlas atlas = build_glyph_atlas(style);
  auto order = lines_by_id(lines);
  for (size_t i = 0; i < order.size(); ++i) {
    const Line& line = *order[i];
    int row_y = style.legend_origin.y + int(i) * style.legend_row_height;
    Rect swatch{style.legend_origin.x,
                row_y + (style.legend_row_height - style.legend_swatch_height) / 2,
                style.legend_swatch_width, style.legend_swatch_height};
    fill_rect(img, swatch, line.color);
    int tx = swatch.right() + style.legend_gap;
    int ty = row_y + (style.legend_row_height - style.glyph_height()) / 2;
    draw_text(img, tx, ty, line.name, atlas, style.label_color, style);
    Rect text{tx, ty, text_width(line.name, style), style.glyph_height()};
    Rect row = rect_union(swatch, text);
    block.box = block.rows.empty() ? row : rect_union(block.box, row);
    block.rows.push_back({line.id, line.name, swatch, text});
  }
  return block;
}

RenderResult render(const TransitGraph& g, const Layout& layout,
                    const StyleSpec& style) {
  std::vector<Point> centers(g.stations.size());
  for (size_t i = 0; i < g.stations.size(); ++i) {
    auto it = layout.positions.find(g.stations[i].name);
    if (it == layout.positions.end()) {
      throw DataError("layout has no position for station " + g.stations[i].name);
    }
    centers[i] = it->second;
  }

  RasterImage img =
      RasterImage::filled(layout.width, layout.height, style.background);
  Sidecar side;
  side.graph = g;
  side.width = layout.width;
  side.height = layout.height;
  side.node_radius = style.node_radius;
  side.stroke_width = style.stroke_width;
  side.glyph_scale = style.glyph_scale;

  side.legend = draw_legend(img, g.lines, style);

  for (const Line* line : lines_by_id(g.lines)) {
    for (const auto& e : g.edges) {
      if (e.line_id != line->id) continue;
      draw_stroke(img, centers[size_t(g.station_index(e.s1))],
                  centers[size_t(g.station_index(e.s2))], style.stroke_width,
                  line->color);
    }
  }

  for (size_t i = 0; i < g.stations.size(); ++i) {
    draw_disk(img, centers[i], style.node_radius, style.node_color);
    side.centers[g.stations[i].name] = centers[i];
  }

  // Unique segments for label collision checks; color is irrelevant here.
  std::set<std::pair<int, int>> seen;
  std::vector<std::pair<Vec2, Vec2>> segments;
  for (const auto& e : g.edges) {
    int a = g.station_index(e.s1);
    int b = g.station_index(e.s2);
    if (seen.insert({std::min(a, b), std::max(a, b)}).second) {
      segments.emplace_back(to_vec(centers[size_t(a)]), to_vec(centers[size_t(b)]));
    }
  }

  GlyphAtlas atlas = build_glyph_atlas(style);
  double stroke_keepout = style.stroke_width / 2.0 + 2.0;
  std::vector<Rect> placed;
  for (size_t i = 0; i < g.stations.size(); ++i) {
    const Station& st = g.stations[i];
    int w = text_width(st.display_name, style);
    int h = style.glyph_height();
    const Rect* chosen = nullptr;
    auto candidates = label_candidates(centers[i], w, h, style);
    for (const Rect& box : candidates) {
      if (box.x < 0 || box.y < 0 || box.right() > img.width ||
          box.bottom() > img.height) {
        continue;
      }
      bool ok = true;
      for (const Point& c : centers) {
        if (point_rect_distance(to_vec(c), box) < style.node_radius + 2.0) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      for (const auto& [a, b] : segments) {
        if (rect_segment_distance(box, a, b) < stroke_keepout) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      Rect padded = box.inflated(8, 8);
      if (padded.intersects(side.legend.box)) continue;
      for (const Rect& other : placed) {
        if (padded.intersects(other)) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      // The label must sit unambiguously closest to its own station, or
      // name association on the vision side could swap two stations.
      Vec2 bc{box.x + w / 2.0, box.y + h / 2.0};
      double own = (bc - to_vec(centers[i])).norm();
      for (size_t j = 0; j < centers.size(); ++j) {
        if (j != i && own + 8.0 > (bc - to_vec(centers[j])).norm()) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      chosen = &box;
      break;
    }
    if (!chosen) {
      throw DataError("no label position for station " + st.name);
    }
    draw_text(img, chosen->x, chosen->y, st.display_name, atlas,
              style.label_color, style);
    placed.push_back(*chosen);
    side.label_boxes[st.name] = *chosen;
  }

  return {std::move(img), std::move(side)};
}

RenderResult render_with_layout(const TransitGraph& g, std::uint64_t seed,
                                const StyleSpec& style) {
  std::string label_failure;
  for (int k = 0; k < 20; ++k) {
    Layout layout = layout_graph(g, mix_seed(seed, 1000 + std::uint64_t(k)), style);
    try {
      return render(g, layout, style);
    } catch (const DataError& e) {
      label_failure = e.what();  // crowded arrangement; try a fresh one
    }
  }
  throw DataError("rendering failed after 20 layouts: " + label_failure);
}

std::string save_sidecar(const Sidecar& s) {
  ordered_json doc;
  doc["canvas"] = {{"width", s.width}, {"height", s.height}};
  doc["style"] = {{"node_radius", s.node_radius},
                  {"stroke_width", s.stroke_width},
                  {"glyph_scale", s.glyph_scale}};
  doc["graph"] = ordered_json::parse(save_graph(s.graph));
  ordered_json centers = ordered_json::array();
  for (const auto& [name, p] : s.centers) {
    centers.push_back({{"station", name}, {"x", p.x}, {"y", p.y}});
  }
  doc["centers"] = std::move(centers);
  ordered_json labels = ordered_json::array();
  for (const auto& [name, box] : s.label_boxes) {
    labels.push_back({{"station", name},
                      {"x", box.x},
                      {"y", box.y},
                      {"w", box.w},
                      {"h", box.h}});
  }
  doc["labels"] = std::move(labels);
  ordered_json rows = ordered_json::array();
  for (const auto& r : s.legend.rows) {
    rows.push_back({{"line", r.line_id},
                    {"name", r.name},
                    {"swatch", rect_json(r.swatch)},
                    {"text", rect_json(r.text)}});
  }
  doc["legend"] = {{"box", rect_json(s.legend.box)}, {"rows", std::move(rows)}};
  return doc.dump(2) + "\n";
}

Sidecar load_sidecar(const std::string& text) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(text);
  } catch (const ordered_json::parse_error& e) {
    throw DataError(std::string("sidecar is not valid JSON: ") + e.what());
  }
  try {
    Sidecar s;
    s.width = doc.at("canvas").at("width").get<int>();
    s.height = doc.at("canvas").at("height").get<int>();
    s.node_radius = doc.at("style").at("node_radius").get<int>();
    s.stroke_width = doc.at("style").at("stroke_width").get<int>();
    s.glyph_scale = doc.at("style").at("glyph_scale").get<int>();
    s.graph = load_graph(doc.at("graph").dump());
    for (const auto& row : doc.at("centers")) {
      s.centers[row.at("station").get<std::string>()] = {
          row.at("x").get<int>(), row.at("y").get<int>()};
    }
    for (const auto& row : doc.at("labels")) {
      s.label_boxes[row.at("station").get<std::string>()] =
          rect_from_json(row, "label");
    }
    const auto& legend = doc.at("legend");
    s.legend.box = rect_from_json(legend.at("box"), "legend box");
    for (const auto& row : legend.at("rows")) {
      s.legend.rows.push_back({row.at("line").get<int>(),
                               row.at("name").get<std::string>(),
                               rect_from_json(row.at("swatch"), "swatch"),
                               rect_from_json(row.at("text"), "legend text")});
    }
    for (const auto& st : s.graph.stations) {
      if (!s.centers.count(st.name)) {
        throw DataError("sidecar has no center for station " + st.name);
      }
    }
    return s;
  } catch (const ordered_json::exception& e) {
    throw DataError(std::string("sidecar is missing fields: ") + e.what());
  }
}

void save_sidecar_file(const Sidecar& s, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw DataError("cannot open for writing: " + path);
  out << save_sidecar(s);
  if (!out.flush()) throw DataError("write failed: " + path);
}

Sidecar load_sidecar_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw DataError("cannot open for reading: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_sidecar(buf.str());
}

}  // namespace vgqa
