#pragma once

#include <algorithm>
#include <cmath>
#include <optional>

namespace vgqa {

struct Vec2 {
  double x = 0;
  double y = 0;

  Vec2 operator+(const Vec2& o) const { return {x + o.x, y + o.y}; }
  Vec2 operator-(const Vec2& o) const { return {x - o.x, y - o.y}; }
  Vec2 operator*(double s) const { return {x * s, y * s}; }
  double dot(const Vec2& o) const { return x * o.x + y * o.y; }
  double cross(const Vec2& o) const { return x * o.y - y * o.x; }
  double norm() const { return std::sqrt(x * x + y * y); }
  Vec2 unit() const {
    double n = norm();
    return n > 0 ? Vec2{x / n, y / n} : Vec2{1, 0};
  }
  Vec2 perp() const { return {-y, x}; }
};

inline double point_segment_distance(Vec2 p, Vec2 a, Vec2 b) {
  Vec2 ab = b - a;
  double len2 = ab.dot(ab);
  double t = len2 > 0 ? std::clamp((p - a).dot(ab) / len2, 0.0, 1.0) : 0.0;
  Vec2 q = a + ab * t;
  return (p - q).norm();
}

// Intersection point of segments ab and cd, endpoints included. Parallel
// segments yield nullopt; collinear overlap is caught by gap checks.
inline std::optional<Vec2> segment_intersection(Vec2 a, Vec2 b, Vec2 c,
                                                Vec2 d) {
  Vec2 r = b - a;
  Vec2 s = d - c;
  double denom = r.cross(s);
  if (denom == 0) return std::nullopt;
  double t = (c - a).cross(s) / denom;
  double u = (c - a).cross(r) / denom;
  if (t < 0 || t > 1 || u < 0 || u > 1) return std::nullopt;
  return a + r * t;
}

inline double segment_gap(Vec2 a, Vec2 b, Vec2 c, Vec2 d) {
  if (segment_intersection(a, b, c, d)) return 0.0;
  return std::min(
      std::min(point_segment_distance(a, c, d), point_segment_distance(b, c, d)),
      std::min(point_segment_distance(c, a, b), point_segment_distance(d, a, b)));
}

// Acute angle between the directions of ab and cd, degrees in [0, 90].
inline double segment_angle_deg(Vec2 a, Vec2 b, Vec2 c, Vec2 d) {
  double cosv = std::min(1.0, std::abs((b - a).unit().dot((d - c).unit())));
  return std::acos(cosv) * 180.0 / 3.14159265358979323846;
}

// Angle at s between the rays toward t1 and t2, degrees in [0, 180].
inline double ray_angle_deg(Vec2 s, Vec2 t1, Vec2 t2) {
  double cosv = std::clamp((t1 - s).unit().dot((t2 - s).unit()), -1.0, 1.0);
  return std::acos(cosv) * 180.0 / 3.14159265358979323846;
}

}  // namespace vgqa
