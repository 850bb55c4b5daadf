#include "vgqa/vision.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <cstdarg>
#include <cstdint>
#include <cstdio>
#include <limits>
#include <map>
#include <string>
#include <vector>

#include "vgqa/geometry.hpp"

namespace vgqa {
namespace {

std::string fmt(const char* f, ...) {
  va_list args;
  va_start(args, f);
  char buf[256];
  std::vsnprintf(buf, sizeof buf, f, args);
  va_end(args);
  return buf;
}

void warn(std::vector<std::string>* sink, std::string msg) {
  if (sink) sink->push_back(std::move(msg));
}

// Every pixel resolves to at most one class: the palette keeps pairwise
// L1 distance >= 180 and >= 192 from the reserved colors, so with a
// tolerance of 60 the match is unique whenever one exists.
constexpr std::int8_t kClsUnknown = -1;
constexpr std::int8_t kClsBackground = 0;
constexpr std::int8_t kClsNode = 1;
constexpr std::int8_t kClsLabel = 2;
constexpr std::int8_t kClsPalette = 3;  // + palette index

struct ClassMap {
  int width = 0;
  int height = 0;
  std::vector<std::int8_t> cls;

  std::int8_t at(int x, int y) const {
    if (x < 0 || y < 0 || x >= width || y >= height) return kClsBackground;
    return cls[std::size_t(y) * width + x];
  }
};

ClassMap classify_pixels(const RasterImage& img, const StyleSpec& style,
                         int tolerance) {
  ClassMap m{img.width, img.height,
             std::vector<std::int8_t>(img.pixels.size(), kClsUnknown)};
  for (std::size_t i = 0; i < img.pixels.size(); ++i) {
    Rgb px = img.pixels[i];
    if (color_distance(px, style.background) <= tolerance) {
      m.cls[i] = kClsBackground;
    } else if (color_distance(px, style.node_color) <= tolerance) {
      m.cls[i] = kClsNode;
    } else if (color_distance(px, style.label_color) <= tolerance) {
      m.cls[i] = kClsLabel;
    } else {
      for (std::size_t k = 0; k < kLinePalette.size(); ++k) {
        if (color_distance(px, kLinePalette[k].color) <= tolerance) {
          m.cls[i] = std::int8_t(kClsPalette + int(k));
          break;
        }
      }
    }
  }
  return m;
}

struct Component {
  std::int8_t cls = kClsUnknown;
  int area = 0;
  long long sum_x = 0;
  long long sum_y = 0;
  Rect box;
};

// 8-connected components over pixels of the same class, for classes in
// [lo, hi]. Only aggregates are kept; pixel lists are not needed here.
std::vector<Component> same_class_components(const ClassMap& m,
                                             std::int8_t lo, std::int8_t hi) {
  std::vector<Component> out;
  std::vector<std::uint8_t> seen(m.cls.size(), 0);
  std::vector<Point> stack;
  for (int y = 0; y < m.height; ++y) {
    for (int x = 0; x < m.width; ++x) {
      std::size_t idx = std::size_t(y) * m.width + x;
      std::int8_t c = m.cls[idx];
      if (c < lo || c > hi || seen[idx]) continue;
      Component comp;
      comp.cls = c;
      int min_x = x, max_x = x, min_y = y, max_y = y;
      seen[idx] = 1;
      stack.assign(1, {x, y});
      while (!stack.empty()) {
        Point p = stack.back();
        stack.pop_back();
        ++comp.area;
        comp.sum_x += p.x;
        comp.sum_y += p.y;
        min_x = std::min(min_x, p.x);
        max_x = std::max(max_x, p.x);
        min_y = std::min(min_y, p.y);
        max_y = std::max(max_y, p.y);
        for (int dy = -1; dy <= 1; ++dy) {
          for (int dx = -1; dx <= 1; ++dx) {
            int nx = p.x + dx, ny = p.y + dy;
            if (nx < 0 || ny < 0 || nx >= m.width || ny >= m.height) continue;
            std::size_t nidx = std::size_t(ny) * m.width + nx;
            if (seen[nidx] || m.cls[nidx] != c) continue;
            seen[nidx] = 1;
            stack.push_back({nx, ny});
          }
        }
      }
      comp.box = {min_x, min_y, max_x - min_x + 1, max_y - min_y + 1};
      out.push_back(comp);
    }
  }
  return out;
}

struct LabelCluster {
  std::vector<Point> pixels;
  Rect box;
};

// Label pixels bridged across horizontal background runs up to merge_gap
// wide. Vertical bridging stays tighter: every glyph inks every row of
// its cell, so 5 px spans any intra-glyph diagonal, while stacked legend
// rows sit 6 px apart and must not fuse. A second pass glues glyph runs
// that share a baseline but have sparse contact.
std::vector<LabelCluster> label_clusters(const ClassMap& m, int merge_gap) {
  int radius_x = merge_gap + 1;
  int radius_y = 5;
  std::vector<LabelCluster> out;
  std::vector<std::uint8_t> seen(m.cls.size(), 0);
  std::vector<Point> stack;
  for (int y = 0; y < m.height; ++y) {
    for (int x = 0; x < m.width; ++x) {
      std::size_t idx = std::size_t(y) * m.width + x;
      if (m.cls[idx] != kClsLabel || seen[idx]) continue;
      LabelCluster c;
      int min_x = x, max_x = x, min_y = y, max_y = y;
      seen[idx] = 1;
      stack.assign(1, {x, y});
      while (!stack.empty()) {
        Point p = stack.back();
        stack.pop_back();
        c.pixels.push_back(p);
        min_x = std::min(min_x, p.x);
        max_x = std::max(max_x, p.x);
        min_y = std::min(min_y, p.y);
        max_y = std::max(max_y, p.y);
        for (int dy = -radius_y; dy <= radius_y; ++dy) {
          for (int dx = -radius_x; dx <= radius_x; ++dx) {
            int nx = p.x + dx, ny = p.y + dy;
            if (nx < 0 || ny < 0 || nx >= m.width || ny >= m.height) continue;
            std::size_t nidx = std::size_t(ny) * m.width + nx;
            if (seen[nidx] || m.cls[nidx] != kClsLabel) continue;
            seen[nidx] = 1;
            stack.push_back({nx, ny});
          }
        }
      }
      c.box = {min_x, min_y, max_x - min_x + 1, max_y - min_y + 1};
      out.push_back(std::move(c));
    }
  }
  // Merge clusters that overlap vertically and nearly touch horizontally.
  for (bool changed = true; changed;) {
    changed = false;
    for (std::size_t i = 0; i < out.size() && !changed; ++i) {
      for (std::size_t j = i + 1; j < out.size(); ++j) {
        const Rect& a = out[i].box;
        const Rect& b = out[j].box;
        bool rows_overlap = a.y < b.bottom() && b.y < a.bottom();
        int gap = std::max(a.x, b.x) - std::min(a.right(), b.right());
        if (!rows_overlap || gap > merge_gap) continue;
        out[i].pixels.insert(out[i].pixels.end(), out[j].pixels.begin(),
                             out[j].pixels.end());
        int min_x = std::min(a.x, b.x), min_y = std::min(a.y, b.y);
        int max_x = std::max(a.right(), b.right());
        int max_y = std::max(a.bottom(), b.bottom());
        out[i].box = {min_x, min_y, max_x - min_x, max_y - min_y};
        out.erase(out.begin() + j);
        changed = true;
        break;
      }
    }
  }
  std::sort(out.begin(), out.end(), [](const LabelCluster& a,
                                       const LabelCluster& b) {
    if (a.box.y != b.box.y) return a.box.y < b.box.y;
    return a.box.x < b.box.x;
  });
  return out;
}

struct OcrResult {
  std::string text;
  double confidence = 1.0;
  int dropped = 0;
};

// Cuts the cluster at the fixed glyph pitch and matches each cell against
// the atlas by Hamming distance. Cells that match nothing well enough are
// dropped and pull the confidence down.
OcrResult classify_cluster(const LabelCluster& c, const GlyphAtlas& atlas,
                           const StyleSpec& style, const VisionConfig& cfg) {
  std::vector<std::uint8_t> ink(std::size_t(c.box.w) * c.box.h, 0);
  for (const Point& p : c.pixels) {
    ink[std::size_t(p.y - c.box.y) * c.box.w + (p.x - c.box.x)] = 1;
  }
  int advance = style.glyph_advance();
  int cell_w = atlas.width;
  int cell_h = atlas.height;
  int cell_area = cell_w * cell_h;
  int n = std::max(
      1, int(std::lround(double(c.box.w + style.glyph_scale) / advance)));
  OcrResult out;
  for (int k = 0; k < n; ++k) {
    int x0 = k * advance;
    char best_char = 0;
    int best_dist = std::numeric_limits<int>::max();
    for (const char* p = kGlyphCharset; *p; ++p) {
      if (*p == ' ') continue;  // a blank cell inside a cluster is noise
      const auto& bits = atlas.bitmap(*p);
      int dist = 0;
      for (int y = 0; y < cell_h; ++y) {
        for (int x = 0; x < cell_w; ++x) {
          int gx = x0 + x;
          std::uint8_t have =
              (gx < c.box.w && y < c.box.h)
                  ? ink[std::size_t(y) * c.box.w + gx]
                  : 0;
          dist += have != bits[std::size_t(y) * cell_w + x];
        }
      }
      if (dist < best_dist) {
        best_dist = dist;
        best_char = *p;
      }
    }
    out.confidence =
        std::min(out.confidence, 1.0 - double(best_dist) / cell_area);
    if (double(best_dist) > cfg.glyph_drop_cutoff * cell_area) {
      ++out.dropped;
      continue;
    }
    out.text.push_back(best_char);
  }
  return out;
}

Vec2 to_vec(Point p) { return {double(p.x), double(p.y)}; }

}  // namespace

std::vector<DetectedNode> detect_nodes(const RasterImage& img,
                                       const StyleSpec& style,
                                       const VisionConfig& cfg,
                                       std::vector<std::string>* warnings) {
  ClassMap m = classify_pixels(img, style, cfg.color_tolerance);
  double disk_area = 3.14159265358979 * style.node_radius * style.node_radius;
  std::vector<DetectedNode> out;
  for (const Component& comp : same_class_components(m, kClsNode, kClsNode)) {
    if (comp.area < 0.5 * disk_area || comp.area > 1.5 * disk_area) {
      warn(warnings, fmt("node-colored blob of %d px near (%d, %d) ignored",
                         comp.area, comp.box.x, comp.box.y));
      continue;
    }
    DetectedNode n;
    n.center = {int(std::lround(double(comp.sum_x) / comp.area)),
                int(std::lround(double(comp.sum_y) / comp.area))};
    n.radius = std::sqrt(comp.area / 3.14159265358979);
    n.area = comp.area;
    out.push_back(n);
  }
  std::sort(out.begin(), out.end(), [](const DetectedNode& a,
                                       const DetectedNode& b) {
    if (a.center.y != b.center.y) return a.center.y < b.center.y;
    return a.center.x < b.center.x;
  });
  return out;
}

std::vector<RecoveredEdge> detect_edges(const RasterImage& img,
                                        const std::vector<DetectedNode>& nodes,
                                        const StyleSpec& style,
                                        const VisionConfig& cfg,
                                        std::vector<std::string>* warnings) {
  ClassMap m = classify_pixels(img, style, cfg.color_tolerance);
  std::vector<RecoveredEdge> out;
  double margin = style.node_radius + 4;
  double skip_radius = style.min_edge_clearance() - 2;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    for (std::size_t j = i + 1; j < nodes.size(); ++j) {
      Vec2 a = to_vec(nodes[i].center);
      Vec2 b = to_vec(nodes[j].center);
      double len = (b - a).norm();
      if (len < 2 * margin) continue;  // disks leave no segment to sample
      Vec2 u = (b - a).unit();
      Vec2 nrm = u.perp();
      double t0 = margin / len;
      double t1 = 1.0 - t0;

      // Nearest |offset| per palette color at each usable sample. Samples
      // inside a third disk's clearance zone would see that station's own
      // strokes, so they are excluded from the denominator.
      std::array<std::vector<int>, kLinePalette.size()> offsets;
      int valid = 0;
      for (int k = 0; k < cfg.edge_samples; ++k) {
        double t =
            cfg.edge_samples == 1
                ? 0.5
                : t0 + (t1 - t0) * double(k) / (cfg.edge_samples - 1);
        Vec2 p = a + (b - a) * t;
        bool near_other = false;
        for (std::size_t o = 0; o < nodes.size() && !near_other; ++o) {
          if (o == i || o == j) continue;
          near_other = (p - to_vec(nodes[o].center)).norm() < skip_radius;
        }
        if (near_other) continue;
        ++valid;
        std::array<bool, kLinePalette.size()> seen{};
        for (int off = 0; off <= cfg.band_halfwidth; ++off) {
          for (int sgn : {1, -1}) {
            if (off == 0 && sgn < 0) continue;
            Vec2 q = p + nrm * double(off * sgn);
            std::int8_t cls =
                m.at(int(std::lround(q.x)), int(std::lround(q.y)));
            if (cls < kClsPalette) continue;
            std::size_t pi = std::size_t(cls - kClsPalette);
            if (!seen[pi]) {
              seen[pi] = true;
              offsets[pi].push_back(off);
            }
          }
        }
      }
      if (valid < 8) {
        bool any_hits = false;
        for (const auto& v : offsets) any_hits |= !v.empty();
        if (any_hits) {
          warn(warnings,
               fmt("segment between nodes %zu and %zu is too occluded to "
                   "judge",
                   i, j));
        }
        continue;
      }

      struct Candidate {
        std::size_t palette;
        double fraction;
      };
      std::vector<Candidate> candidates;
      for (std::size_t pi = 0; pi < offsets.size(); ++pi) {
        auto& v = offsets[pi];
        if (v.empty()) continue;
        double fraction = double(v.size()) / valid;
        if (fraction < cfg.edge_fraction) continue;
        std::sort(v.begin(), v.end());
        double median =
            (v[(v.size() - 1) / 2] + v[v.size() / 2]) / 2.0;
        if (median > cfg.max_median_offset) continue;
        candidates.push_back({pi, fraction});
      }
      if (candidates.empty()) continue;
      std::sort(candidates.begin(), candidates.end(),
                [](const Candidate& x, const Candidate& y) {
                  if (x.fraction != y.fraction) return x.fraction > y.fraction;
                  return x.palette < y.palette;
                });
      if (candidates.size() > 1) {
        warn(warnings,
             fmt("nodes %zu and %zu are bridged by %zu colors; keeping %s",
                 i, j, candidates.size(),
                 kLinePalette[candidates[0].palette].name));
      }
      std::size_t best = candidates[0].palette;

      // The winning stroke must actually emerge from both disks; probes
      // just outside each rim reject strokes that merely pass nearby.
      auto touches = [&](Vec2 from, Vec2 dir) {
        for (int d = style.node_radius + 2; d <= style.node_radius + 5; ++d) {
          for (int poff = -2; poff <= 2; ++poff) {
            Vec2 q = from + dir * double(d) + nrm * double(poff);
            if (m.at(int(std::lround(q.x)), int(std::lround(q.y))) ==
                std::int8_t(kClsPalette + int(best))) {
              return true;
            }
          }
        }
        return false;
      };
      if (!touches(a, u) || !touches(b, u * -1.0)) {
        warn(warnings,
             fmt("%s stroke between nodes %zu and %zu does not reach both "
                 "disks; dropped",
                 kLinePalette[best].name, i, j));
        continue;
      }
      out.push_back({int(i), int(j), kLinePalette[best].color,
                     candidates[0].fraction});
    }
  }
  return out;
}

std::vector<DetectedLabel> ocr_labels(const RasterImage& img,
                                      const GlyphAtlas& atlas,
                                      const StyleSpec& style,
                                      const VisionConfig& cfg,
                                      std::vector<std::string>* warnings) {
  ClassMap m = classify_pixels(img, style, cfg.color_tolerance);
  std::vector<DetectedLabel> out;
  for (const LabelCluster& c : label_clusters(m, cfg.label_merge_gap)) {
    OcrResult r = classify_cluster(c, atlas, style, cfg);
    if (r.dropped > 0) {
      warn(warnings, fmt("dropped %d unreadable glyph(s) near (%d, %d)",
                         r.dropped, c.box.x, c.box.y));
    }
    if (r.text.empty()) {
      warn(warnings, fmt("unreadable label-colored blob at (%d, %d)",
                         c.box.x, c.box.y));
      continue;
    }
    out.push_back({r.text, c.box, r.confidence});
  }
  return out;
}

std::vector<std::string> associate_labels(
    const std::vector<DetectedNode>& nodes,
    const std::vector<DetectedLabel>& labels,
    std::vector<std::string>* warnings) {
  std::vector<int> owner(nodes.size(), -1);
  std::vector<bool> placed(labels.size(), false);
  // Closest pair first, globally: a contested node always goes to the
  // nearer label and the other label falls through to its next choice.
  for (;;) {
    double best_d = std::numeric_limits<double>::max();
    int best_label = -1, best_node = -1;
    for (std::size_t li = 0; li < labels.size(); ++li) {
      if (placed[li]) continue;
      Vec2 lc{labels[li].box.x + labels[li].box.w / 2.0,
              labels[li].box.y + labels[li].box.h / 2.0};
      for (std::size_t ni = 0; ni < nodes.size(); ++ni) {
        if (owner[ni] >= 0) continue;
        double d = (lc - to_vec(nodes[ni].center)).norm();
        if (d < best_d) {
          best_d = d;
          best_label = int(li);
          best_node = int(ni);
        }
      }
    }
    if (best_label < 0) break;
    owner[best_node] = best_label;
    placed[best_label] = true;
  }
  for (std::size_t li = 0; li < labels.size(); ++li) {
    if (!placed[li]) {
      warn(warnings,
           fmt("label '%s' matches no station", labels[li].text.c_str()));
    }
  }
  std::vector<std::string> names(nodes.size());
  int unk = 0;
  for (std::size_t ni = 0; ni < nodes.size(); ++ni) {
    if (owner[ni] >= 0) {
      names[ni] = labels[owner[ni]].text;
    } else {
      names[ni] = "unk_" + std::to_string(unk++);
      warn(warnings, fmt("station at (%d, %d) has no label",
                         nodes[ni].center.x, nodes[ni].center.y));
    }
  }
  std::map<std::string, int> counts;
  for (auto& name : names) {
    int k = ++counts[name];
    if (k > 1) {
      warn(warnings, fmt("duplicate label text '%s'", name.c_str()));
      name += "_" + std::to_string(k);
    }
  }
  return names;
}

LegendReadout read_legend(const RasterImage& img, const GlyphAtlas& atlas,
                          const StyleSpec& style, const VisionConfig& cfg,
                          std::vector<std::string>* warnings) {
  ClassMap m = classify_pixels(img, style, cfg.color_tolerance);
  int sw = style.legend_swatch_width;
  int sh = style.legend_swatch_height;
  std::vector<Component> swatches;
  for (const Component& comp : same_class_components(
           m, kClsPalette, std::int8_t(kClsPalette + kLinePalette.size() - 1))) {
    bool sized = std::abs(comp.box.w - sw) <= 2 && std::abs(comp.box.h - sh) <= 2;
    bool solid = comp.area >= 0.9 * comp.box.w * comp.box.h;
    if (sized && solid) swatches.push_back(comp);
  }
  std::sort(swatches.begin(), swatches.end(),
            [](const Component& a, const Component& b) {
              if (a.box.y != b.box.y) return a.box.y < b.box.y;
              return a.box.x < b.box.x;
            });

  LegendReadout out;
  if (swatches.empty()) {
    warn(warnings, "no legend found");
    return out;
  }
  auto clusters = label_clusters(m, cfg.label_merge_gap);
  bool first = true;
  for (const Component& swatch : swatches) {
    double row_cy = swatch.box.y + swatch.box.h / 2.0;
    const LabelCluster* text = nullptr;
    for (const LabelCluster& c : clusters) {
      double cy = c.box.y + c.box.h / 2.0;
      if (c.box.x < swatch.box.right()) continue;
      if (std::abs(cy - row_cy) > style.legend_row_height / 2.0) continue;
      if (!text || c.box.x < text->box.x) text = &c;
    }
    Rgb color = kLinePalette[std::size_t(swatch.cls - kClsPalette)].color;
    std::string name;
    if (text) {
      name = classify_cluster(*text, atlas, style, cfg).text;
    }
    if (name.empty()) {
      name = color_hex(color);
      warn(warnings, fmt("legend row at (%d, %d) has no readable name; "
                         "using %s",
                         swatch.box.x, swatch.box.y, name.c_str()));
    }
    out.entries.push_back({color, name, swatch.box});
    Rect row_box = swatch.box;
    if (text) {
      int min_x = std::min(row_box.x, text->box.x);
      int min_y = std::min(row_box.y, text->box.y);
      int max_x = std::max(row_box.right(), text->box.right());
      int max_y = std::max(row_box.bottom(), text->box.bottom());
      row_box = {min_x, min_y, max_x - min_x, max_y - min_y};
    }
    if (first) {
      out.box = row_box;
      first = false;
    } else {
      int min_x = std::min(out.box.x, row_box.x);
      int min_y = std::min(out.box.y, row_box.y);
      int max_x = std::max(out.box.right(), row_box.right());
      int max_y = std::max(out.box.bottom(), row_box.bottom());
      out.box = {min_x, min_y, max_x - min_x, max_y - min_y};
    }
  }
  return out;
}

TransitGraph RecoveredGraph::to_graph() const {
  TransitGraph g;
  for (std::size_t i = 0; i < nodes.size(); ++i) {
    g.stations.push_back({names[i], names[i], {}});
  }
  std::map<Rgb, int> line_of_color;
  for (const LegendEntry& entry : legend) {
    if (line_of_color.count(entry.color)) continue;
    int id = int(g.lines.size());
    g.lines.push_back({id, entry.name, entry.color, {}, {}});
    line_of_color[entry.color] = id;
  }
  for (const RecoveredEdge& e : adjacency) {
    auto it = line_of_color.find(e.color);
    int id;
    if (it != line_of_color.end()) {
      id = it->second;
    } else {
      id = int(g.lines.size());
      g.lines.push_back({id, color_hex(e.color), e.color, {}, {}});
      line_of_color[e.color] = id;
    }
    g.edges.push_back({names[std::size_t(e.a)], names[std::size_t(e.b)], id});
  }
  return g;
}

RecoveredGraph parse_image(const RasterImage& img, const StyleSpec& style,
                           const VisionConfig& cfg) {
  RecoveredGraph out;
  auto* w = &out.warnings;
  out.nodes = detect_nodes(img, style, cfg, w);
  GlyphAtlas atlas = build_glyph_atlas(style);
  LegendReadout legend = read_legend(img, atlas, style, cfg, w);
  out.legend = legend.entries;

  // Blank the legend before reading station labels and edges, so legend
  // text never competes for a station and swatches never look like
  // strokes.
  RasterImage work = img;
  if (legend.box.w > 0 && legend.box.h > 0) {
    Rect r = legend.box.inflated(4, 4);
    for (int y = std::max(0, r.y); y < std::min(work.height, r.bottom()); ++y) {
      for (int x = std::max(0, r.x); x < std::min(work.width, r.right()); ++x) {
        work.at(x, y) = style.background;
      }
    }
  }
  auto labels = ocr_labels(work, atlas, style, cfg, w);
  out.names = associate_labels(out.nodes, labels, w);
  out.adjacency = detect_edges(work, out.nodes, style, cfg, w);
  if (out.nodes.empty()) {
    w->push_back("no stations detected in image");
  }
  return out;
}

}  // namespace vgqa
