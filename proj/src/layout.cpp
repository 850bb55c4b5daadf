#include "vgqa/layout.hpp"

#include <algorithm>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <map>
#include <set>
#include <utility>

#include "vgqa/errors.hpp"
#include "vgqa/geometry.hpp"
#include "vgqa/rng.hpp"

namespace vgqa {

namespace {

constexpr int kAttempts = 40;
constexpr int kForceIterations = 300;
constexpr int kRepairPasses = 400;
// Repair aims this far past each minimum so rounding to integer pixels
// cannot drop a constraint back below it.
constexpr double kDistanceSlack = 4.0;
constexpr double kAngleSlack = 2.0;

struct UnionEdge {
  int a = 0;
  int b = 0;
  std::set<int> lines;
};

// Consecutive same-line station triple prev-mid-next.
struct Bend {
  int prev = 0;
  int mid = 0;
  int next = 0;
  int line_id = 0;
};

// Union edges sharing one station but no line; their strokes differ in
// color, so a shallow meeting angle lets one overpaint the other's
// contact zone at the shared node.
struct IncidentPair {
  size_t e1 = 0;
  size_t e2 = 0;
  int shared = 0;
};

struct Problem {
  int n = 0;
  std::vector<UnionEdge> edges;
  std::vector<Bend> bends;
  std::vector<IncidentPair> incident;
};

Problem build_problem(const TransitGraph& g) {
  Problem p;
  p.n = int(g.stations.size());

  std::map<std::pair<int, int>, std::set<int>> pairs;
  std::map<int, std::map<int, std::vector<int>>> line_adj;
  for (const auto& e : g.edges) {
    int i = g.station_index(e.s1);
    int j = g.station_index(e.s2);
    pairs[{std::min(i, j), std::max(i, j)}].insert(e.line_id);
    line_adj[e.line_id][i].push_back(j);
    line_adj[e.line_id][j].push_back(i);
  }
  for (const auto& [key, lines] : pairs) {
    p.edges.push_back({key.first, key.second, lines});
  }
  for (const auto& [line_id, adj] : line_adj) {
    for (const auto& [mid, nbrs] : adj) {
      if (nbrs.size() == 2) {
        p.bends.push_back({nbrs[0], mid, nbrs[1], line_id});
      }
    }
  }
  for (size_t i = 0; i < p.edges.size(); ++i) {
    for (size_t j = i + 1; j < p.edges.size(); ++j) {
      const UnionEdge& e = p.edges[i];
      const UnionEdge& f = p.edges[j];
      int shared = -1;
      if (e.a == f.a || e.a == f.b) shared = e.a;
      if (e.b == f.a || e.b == f.b) shared = e.b;
      if (shared < 0) continue;
      bool disjoint = true;
      for (int l : e.lines) {
        if (f.lines.count(l)) disjoint = false;
      }
      if (disjoint) p.incident.push_back({i, j, shared});
    }
  }
  return p;
}

struct Frame {
  double x0, y0, x1, y1;

  Vec2 center() const { return {(x0 + x1) / 2, (y0 + y1) / 2}; }
  Vec2 clamp(Vec2 v) const {
    return {std::clamp(v.x, x0, x1), std::clamp(v.y, y0, y1)};
  }
};

Vec2 rotate_about(Vec2 p, Vec2 center, double deg) {
  double rad = deg * 3.14159265358979323846 / 180.0;
  double c = std::cos(rad);
  double s = std::sin(rad);
  Vec2 d = p - center;
  return center + Vec2{d.x * c - d.y * s, d.x * s + d.y * c};
}

void force_phase(const Problem& p, const Frame& frame, std::vector<Vec2>& pos) {
  double area = (frame.x1 - frame.x0) * (frame.y1 - frame.y0);
  double k = std::clamp(0.8 * std::sqrt(area / std::max(1, p.n)), 110.0, 240.0);
  double temp = std::min(frame.x1 - frame.x0, frame.y1 - frame.y0) / 8.0;
  double cool = std::pow(2.0 / temp, 1.0 / kForceIterations);

  std::vector<Vec2> disp(size_t(p.n));
  for (int iter = 0; iter < kForceIterations; ++iter) {
    for (auto& d : disp) d = {0, 0};
    for (int i = 0; i < p.n; ++i) {
      for (int j = i + 1; j < p.n; ++j) {
        Vec2 delta = pos[size_t(i)] - pos[size_t(j)];
        double d = std::max(delta.norm(), 0.5);
        Vec2 push = delta.unit() * (k * k / d);
        disp[size_t(i)] = disp[size_t(i)] + push;
        disp[size_t(j)] = disp[size_t(j)] - push;
      }
    }
    for (const auto& e : p.edges) {
      Vec2 delta = pos[size_t(e.a)] - pos[size_t(e.b)];
      double d = std::max(delta.norm(), 0.5);
      Vec2 pull = delta.unit() * (d * d / k);
      disp[size_t(e.a)] = disp[size_t(e.a)] - pull;
      disp[size_t(e.b)] = disp[size_t(e.b)] + pull;
    }
    for (int i = 0; i < p.n; ++i) {
      Vec2 d = disp[size_t(i)] + (frame.center() - pos[size_t(i)]) * 0.02;
      double len = d.norm();
      if (len > temp) d = d.unit() * temp;
      pos[size_t(i)] = frame.clamp(pos[size_t(i)] + d);
    }
    temp = std::max(temp * cool, 2.0);
  }
}

// One Gauss-Seidel sweep over every spacing rule; returns the number of
// corrections applied.
int repair_pass(const Problem& p, const Frame& frame, const StyleSpec& style,
                std::vector<Vec2>& pos) {
  int fixes = 0;
  auto move = [&](int i, Vec2 delta) {
    pos[size_t(i)] = frame.clamp(pos[size_t(i)] + delta);
  };

  for (const auto& e : p.edges) {
    Vec2 d = pos[size_t(e.b)] - pos[size_t(e.a)];
    double len = d.norm();
    double want = kMinEdgeLength + kDistanceSlack;
    if (len < want) {
      Vec2 u = d.unit();
      double grow = (want - len) / 2 + 0.5;
      move(e.a, u * -grow);
      move(e.b, u * grow);
      ++fixes;
    }
  }

  double d_min = style.min_node_distance() + kDistanceSlack;
  for (int i = 0; i < p.n; ++i) {
    for (int j = i + 1; j < p.n; ++j) {
      Vec2 d = pos[size_t(i)] - pos[size_t(j)];
      double len = d.norm();
      if (len < d_min) {
        Vec2 u = d.unit();
        double grow = (d_min - len) / 2 + 0.5;
        move(i, u * grow);
        move(j, u * -grow);
        ++fixes;
      }
    }
  }

  for (const auto& b : p.bends) {
    Vec2 a = pos[size_t(b.prev)];
    Vec2 c = pos[size_t(b.next)];
    Vec2 m = pos[size_t(b.mid)];
    double depth = point_segment_distance(m, a, c);
    double want = kMinBendDepth + kDistanceSlack;
    if (depth >= want) continue;
    Vec2 chord = c - a;
    Vec2 normal = chord.perp().unit();
    if (normal.dot(m - a) < 0) normal = normal * -1;
    Vec2 foot = m - normal * depth;
    move(b.mid, foot + normal * (want + 0.5) - m);
    ++fixes;
  }

  double e_min = style.min_edge_clearance() + kDistanceSlack;
  for (int i = 0; i < p.n; ++i) {
    for (const auto& e : p.edges) {
      if (e.a == i || e.b == i) continue;
      Vec2 a = pos[size_t(e.a)];
      Vec2 b = pos[size_t(e.b)];
      Vec2 m = pos[size_t(i)];
      double dist = point_segment_distance(m, a, b);
      if (dist >= e_min) continue;
      Vec2 away;
      if (dist > 0.01) {
        Vec2 ab = b - a;
        double t = std::clamp((m - a).dot(ab) / ab.dot(ab), 0.0, 1.0);
        away = (m - (a + ab * t)).unit();
      } else {
        away = (b - a).perp().unit();
      }
      double grow = e_min - dist + 0.5;
      move(i, away * (grow * 0.75));
      move(e.a, away * (-grow * 0.25));
      move(e.b, away * (-grow * 0.25));
      ++fixes;
    }
  }

  double angle_min = kMinCrossingAngleDeg + kAngleSlack;
  for (const auto& ip : p.incident) {
    const UnionEdge& e = p.edges[ip.e1];
    const UnionEdge& f = p.edges[ip.e2];
    int t1 = e.a == ip.shared ? e.b : e.a;
    int t2 = f.a == ip.shared ? f.b : f.a;
    Vec2 s = pos[size_t(ip.shared)];
    double angle = ray_angle_deg(s, pos[size_t(t1)], pos[size_t(t2)]);
    if (angle >= angle_min) continue;
    double half = (angle_min - angle) / 2 + 1.0;
    double side = (pos[size_t(t1)] - s).cross(pos[size_t(t2)] - s) >= 0 ? 1.0 : -1.0;
    move(t1, rotate_about(pos[size_t(t1)], s, -side * half) - pos[size_t(t1)]);
    move(t2, rotate_about(pos[size_t(t2)], s, side * half) - pos[size_t(t2)]);
    ++fixes;
  }

  for (size_t i = 0; i < p.edges.size(); ++i) {
    for (size_t j = i + 1; j < p.edges.size(); ++j) {
      const UnionEdge& e = p.edges[i];
      const UnionEdge& f = p.edges[j];
      if (e.a == f.a || e.a == f.b || e.b == f.a || e.b == f.b) continue;
      Vec2 a = pos[size_t(e.a)], b = pos[size_t(e.b)];
      Vec2 c = pos[size_t(f.a)], d = pos[size_t(f.b)];
      if (segment_intersection(a, b, c, d)) {
        double angle = segment_angle_deg(a, b, c, d);
        if (angle >= angle_min) continue;
        double half = (angle_min - angle) / 2 + 1.0;
        // Twist the two segments in whichever opposed senses open the angle.
        Vec2 me = (a + b) * 0.5;
        Vec2 mf = (c + d) * 0.5;
        auto twisted = [&](double sign) {
          return segment_angle_deg(rotate_about(a, me, sign * half),
                                   rotate_about(b, me, sign * half),
                                   rotate_about(c, mf, -sign * half),
                                   rotate_about(d, mf, -sign * half));
        };
        double sign = twisted(1.0) >= twisted(-1.0) ? 1.0 : -1.0;
        move(e.a, rotate_about(a, me, sign * half) - a);
        move(e.b, rotate_about(b, me, sign * half) - b);
        move(f.a, rotate_about(c, mf, -sign * half) - c);
        move(f.b, rotate_about(d, mf, -sign * half) - d);
        ++fixes;
      } else {
        double gap = segment_gap(a, b, c, d);
        double want = kMinSegmentGap + kDistanceSlack;
        if (gap >= want) continue;
        // Push the segments apart along the closest-approach direction.
        struct Candidate {
          double dist;
          Vec2 point;
          Vec2 sa, sb;
          double flip;
        };
        Candidate best{point_segment_distance(a, c, d), a, c, d, 1.0};
        Candidate others[] = {
            {point_segment_distance(b, c, d), b, c, d, 1.0},
            {point_segment_distance(c, a, b), c, a, b, -1.0},
            {point_segment_distance(d, a, b), d, a, b, -1.0},
        };
        for (const auto& cand : others) {
          if (cand.dist < best.dist) best = cand;
        }
        Vec2 ab = best.sb - best.sa;
        double t = ab.dot(ab) > 0
                       ? std::clamp((best.point - best.sa).dot(ab) / ab.dot(ab), 0.0, 1.0)
                       : 0.0;
        Vec2 away = best.point - (best.sa + ab * t);
        Vec2 u = away.norm() > 0.01 ? away.unit() : (b - a).perp().unit();
        u = u * best.flip;
        double grow = (want - gap) / 2 + 0.5;
        move(e.a, u * grow);
        move(e.b, u * grow);
        move(f.a, u * -grow);
        move(f.b, u * -grow);
        ++fixes;
      }
    }
  }

  return fixes;
}

std::string fmt(const char* pattern, ...) {
  char buf[256];
  va_list args;
  va_start(args, pattern);
  std::vsnprintf(buf, sizeof buf, pattern, args);
  va_end(args);
  return buf;
}

}  // namespace

std::vector<std::string> check_layout(const TransitGraph& g,
                                      const Layout& layout,
                                      const StyleSpec& style) {
  std::vector<std::string> out;
  int canvas = style.canvas_for_lines(int(g.lines.size()));
  if (layout.width != canvas || layout.height != canvas) {
    out.push_back(fmt("canvas %dx%d does not match expected %dx%d",
                      layout.width, layout.height, canvas, canvas));
  }

  std::vector<Vec2> pos(g.stations.size());
  for (size_t i = 0; i < g.stations.size(); ++i) {
    auto it = layout.positions.find(g.stations[i].name);
    if (it == layout.positions.end()) {
      out.push_back("no position for station " + g.stations[i].name);
      return out;
    }
    pos[i] = {double(it->second.x), double(it->second.y)};
  }

  const auto name = [&](int i) { return g.stations[size_t(i)].name.c_str(); };
  Frame frame{double(style.canvas_margin),
              double(style.reserved_top(int(g.lines.size())) + style.canvas_margin),
              double(layout.width - style.canvas_margin),
              double(layout.height - style.canvas_margin)};
  for (size_t i = 0; i < pos.size(); ++i) {
    if (pos[i].x < frame.x0 || pos[i].x > frame.x1 || pos[i].y < frame.y0 ||
        pos[i].y > frame.y1) {
      out.push_back(fmt("station %s at (%d, %d) outside usable area",
                        name(int(i)), int(pos[i].x), int(pos[i].y)));
    }
  }

  Problem p = build_problem(g);

  for (int i = 0; i < p.n; ++i) {
    for (int j = i + 1; j < p.n; ++j) {
      double d = (pos[size_t(i)] - pos[size_t(j)]).norm();
      if (d < style.min_node_distance()) {
        out.push_back(fmt("stations %s and %s are %.1f px apart (minimum %d)",
                          name(i), name(j), d, style.min_node_distance()));
      }
    }
  }

  for (const auto& e : p.edges) {
    double len = (pos[size_t(e.a)] - pos[size_t(e.b)]).norm();
    if (len < kMinEdgeLength) {
      out.push_back(fmt("edge %s-%s is %.1f px long (minimum %.0f)", name(e.a),
                        name(e.b), len, kMinEdgeLength));
    }
  }

  for (int i = 0; i < p.n; ++i) {
    for (const auto& e : p.edges) {
      if (e.a == i || e.b == i) continue;
      double d = point_segment_distance(pos[size_t(i)], pos[size_t(e.a)],
                                        pos[size_t(e.b)]);
      if (d < style.min_edge_clearance()) {
        out.push_back(fmt("station %s is %.1f px from edge %s-%s (minimum %d)",
                          name(i), d, name(e.a), name(e.b),
                          style.min_edge_clearance()));
      }
    }
  }

  for (const auto& b : p.bends) {
    double depth = point_segment_distance(pos[size_t(b.mid)], pos[size_t(b.prev)],
                                          pos[size_t(b.next)]);
    if (depth < kMinBendDepth) {
      out.push_back(fmt("bend at %s between %s and %s is %.1f px deep (minimum %.0f)",
                        name(b.mid), name(b.prev), name(b.next), depth,
                        kMinBendDepth));
    }
  }

  for (const auto& ip : p.incident) {
    const UnionEdge& e = p.edges[ip.e1];
    const UnionEdge& f = p.edges[ip.e2];
    int t1 = e.a == ip.shared ? e.b : e.a;
    int t2 = f.a == ip.shared ? f.b : f.a;
    double angle = ray_angle_deg(pos[size_t(ip.shared)], pos[size_t(t1)],
                                 pos[size_t(t2)]);
    if (angle < kMinCrossingAngleDeg) {
      out.push_back(fmt("edges %s-%s and %s-%s meet at %.1f degrees (minimum %.0f)",
                        name(ip.shared), name(t1), name(ip.shared), name(t2),
                        angle, kMinCrossingAngleDeg));
    }
  }

  std::vector<double> obscured(p.edges.size(), 0.0);
  for (size_t i = 0; i < p.edges.size(); ++i) {
    for (size_t j = i + 1; j < p.edges.size(); ++j) {
      const UnionEdge& e = p.edges[i];
      const UnionEdge& f = p.edges[j];
      if (e.a == f.a || e.a == f.b || e.b == f.a || e.b == f.b) continue;
      Vec2 a = pos[size_t(e.a)], b = pos[size_t(e.b)];
      Vec2 c = pos[size_t(f.a)], d = pos[size_t(f.b)];
      if (segment_intersection(a, b, c, d)) {
        double angle = segment_angle_deg(a, b, c, d);
        if (angle < kMinCrossingAngleDeg) {
          out.push_back(fmt("edges %s-%s and %s-%s cross at %.1f degrees (minimum %.0f)",
                            name(e.a), name(e.b), name(f.a), name(f.b), angle,
                            kMinCrossingAngleDeg));
        }
        double cover = style.stroke_width /
                       std::sin(std::max(angle, 1.0) * 3.14159265358979323846 / 180.0);
        obscured[i] += cover;
        obscured[j] += cover;
      } else {
        double gap = segment_gap(a, b, c, d);
        if (gap < kMinSegmentGap) {
          out.push_back(fmt("edges %s-%s and %s-%s pass %.1f px apart (minimum %.0f)",
                            name(e.a), name(e.b), name(f.a), name(f.b), gap,
                            kMinSegmentGap));
        }
      }
    }
  }
  for (size_t i = 0; i < p.edges.size(); ++i) {
    double len = (pos[size_t(p.edges[i].a)] - pos[size_t(p.edges[i].b)]).norm();
    double window = len - 2.0 * (style.node_radius + 4);
    if (window <= 0) continue;  // already reported as too short
    if (obscured[i] > kMaxObscuredFraction * window) {
      out.push_back(fmt("edge %s-%s loses %.0f%% of its sampling window to crossings (maximum %.0f%%)",
                        name(p.edges[i].a), name(p.edges[i].b),
                        100.0 * obscured[i] / window,
                        100.0 * kMaxObscuredFraction));
    }
  }

  return out;
}

Layout layout_graph(const TransitGraph& g, std::uint64_t seed,
                    const StyleSpec& style) {
  if (g.stations.empty()) throw DataError("cannot lay out a graph with no stations");
  Problem p = build_problem(g);
  int canvas = style.canvas_for_lines(int(g.lines.size()));
  Frame frame{double(style.canvas_margin),
              double(style.reserved_top(int(g.lines.size())) + style.canvas_margin),
              double(canvas - style.canvas_margin),
              double(canvas - style.canvas_margin)};

  for (int attempt = 0; attempt < kAttempts; ++attempt) {
    Rng rng(mix_seed(seed, std::uint64_t(attempt)));
    std::vector<Vec2> pos(size_t(p.n));
    for (auto& v : pos) {
      v = {frame.x0 + rng.next_unit() * (frame.x1 - frame.x0),
           frame.y0 + rng.next_unit() * (frame.y1 - frame.y0)};
    }
    force_phase(p, frame, pos);
    bool settled = false;
    for (int pass = 0; pass < kRepairPasses; ++pass) {
      if (repair_pass(p, frame, style, pos) == 0) {
        settled = true;
        break;
      }
    }
    if (!settled) continue;

    Layout out;
    out.width = canvas;
    out.height = canvas;
    for (int i = 0; i < p.n; ++i) {
      out.positions[g.stations[size_t(i)].name] = {
          int(std::lround(pos[size_t(i)].x)), int(std::lround(pos[size_t(i)].y))};
    }
    if (check_layout(g, out, style).empty()) return out;
  }
  throw DataError(fmt("no valid layout after %d attempts for graph with %d stations and %d edges on %dx%d canvas",
                      kAttempts, p.n, int(p.edges.size()), canvas, canvas));
}

}  // namespace vgqa
