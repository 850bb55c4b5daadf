#include <doctest.h>

#include <initializer_list>
#include <string>
#include <vector>

#include "vgqa/errors.hpp"
#include "vgqa/geometry.hpp"
#include "vgqa/layout.hpp"

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

std::string joined(const std::vector<std::string>& violations) {
  std::string all;
  for (const auto& v : violations) all += v + "\n";
  return all;
}

double dist(const Layout& l, const char* a, const char* b) {
  Point pa = l.positions.at(a);
  Point pb = l.positions.at(b);
  return (Vec2{double(pa.x), double(pa.y)} - Vec2{double(pb.x), double(pb.y)}).norm();
}

}  // namespace

TEST_CASE("geometry helpers") {
  CHECK(point_segment_distance({0, 5}, {-10, 0}, {10, 0}) == doctest::Approx(5));
  CHECK(point_segment_distance({20, 0}, {-10, 0}, {10, 0}) == doctest::Approx(10));
  auto hit = segment_intersection({0, -5}, {0, 5}, {-5, 0}, {5, 0});
  REQUIRE(hit.has_value());
  CHECK(hit->x == doctest::Approx(0));
  CHECK(hit->y == doctest::Approx(0));
  CHECK_FALSE(segment_intersection({0, 1}, {10, 1}, {0, 5}, {10, 5}).has_value());
  CHECK(segment_gap({0, 0}, {10, 0}, {0, 4}, {10, 4}) == doctest::Approx(4));
  CHECK(segment_angle_deg({0, 0}, {10, 0}, {0, 0}, {0, 10}) == doctest::Approx(90));
  CHECK(ray_angle_deg({0, 0}, {10, 0}, {-10, 0}) == doctest::Approx(180));
}

TEST_CASE("layout of a short path keeps stations apart") {
  TransitGraph g = line_path({"a", "b", "c"});
  StyleSpec style;
  Layout l = layout_graph(g, 11, style);
  CHECK(l.width == 1024);
  CHECK(l.height == 1024);
  CHECK(l.positions.size() == 3);
  CHECK(dist(l, "a", "b") >= style.min_node_distance());
  CHECK(dist(l, "a", "c") >= style.min_node_distance());
  CHECK(dist(l, "b", "c") >= style.min_node_distance());
  CHECK(check_layout(g, l, style).empty());
}

TEST_CASE("layout is deterministic in graph and seed") {
  TransitGraph g = line_path({"a", "b", "c", "d"});
  StyleSpec style;
  Layout l1 = layout_graph(g, 99, style);
  Layout l2 = layout_graph(g, 99, style);
  CHECK(l1.positions == l2.positions);
  Layout l3 = layout_graph(g, 100, style);
  CHECK(l1.positions != l3.positions);  // astronomically unlikely to collide
}

TEST_CASE("layout of a three-line network passes the checker") {
  TransitGraph g;
  add_line(g, 0, Rgb{230, 30, 30}, {"a", "b", "c", "d"});
  add_line(g, 1, Rgb{0, 255, 255}, {"e", "b", "f"});
  add_line(g, 2, Rgb{60, 195, 0}, {"g", "c", "h"});
  StyleSpec style;
  Layout l = layout_graph(g, 5, style);
  CHECK(l.width == 1024);
  CHECK(joined(check_layout(g, l, style)) == "");
}

TEST_CASE("five lines widen the canvas") {
  TransitGraph g;
  add_line(g, 0, Rgb{230, 30, 30}, {"hub", "a1", "a2"});
  add_line(g, 1, Rgb{0, 255, 255}, {"hub", "b1"});
  add_line(g, 2, Rgb{60, 195, 0}, {"hub", "c1"});
  add_line(g, 3, Rgb{195, 105, 255}, {"hub", "d1"});
  add_line(g, 4, Rgb{255, 180, 0}, {"hub", "e1"});
  StyleSpec style;
  Layout l = layout_graph(g, 3, style);
  CHECK(l.width == 1536);
  CHECK(l.height == 1536);
  CHECK(check_layout(g, l, style).empty());
}

TEST_CASE("checker reports stations that are too close") {
  TransitGraph g = line_path({"a", "b"});
  Layout l;
  l.width = l.height = 1024;
  l.positions["a"] = {100, 300};
  l.positions["b"] = {110, 300};
  auto v = check_layout(g, l, StyleSpec{});
  CHECK(joined(v).find("stations a and b are 10.0 px apart (minimum 42)") !=
        std::string::npos);
}

TEST_CASE("checker reports short edges") {
  TransitGraph g = line_path({"a", "b"});
  Layout l;
  l.width = l.height = 1024;
  l.positions["a"] = {100, 300};
  l.positions["b"] = {150, 300};
  auto v = check_layout(g, l, StyleSpec{});
  CHECK(joined(v).find("edge a-b is 50.0 px long (minimum 90)") !=
        std::string::npos);
}

TEST_CASE("checker reports a station sitting on a foreign edge") {
  TransitGraph g = line_path({"a", "b", "c"});
  Layout l;
  l.width = l.height = 1024;
  l.positions["a"] = {100, 300};
  l.positions["b"] = {300, 300};
  l.positions["c"] = {200, 310};
  auto v = check_layout(g, l, StyleSpec{});
  CHECK(joined(v).find("station c is 10.0 px from edge a-b (minimum 28)") !=
        std::string::npos);
}

TEST_CASE("checker reports shallow same-line bends") {
  TransitGraph g = line_path({"a", "b", "c"});
  Layout l;
  l.width = l.height = 1024;
  l.positions["a"] = {100, 300};
  l.positions["b"] = {200, 302};
  l.positions["c"] = {300, 300};
  auto v = check_layout(g, l, StyleSpec{});
  CHECK(joined(v).find("bend at b between a and c") != std::string::npos);
}

TEST_CASE("checker reports shallow crossings between foreign lines") {
  TransitGraph g;
  add_line(g, 0, Rgb{230, 30, 30}, {"a", "b"});
  add_line(g, 1, Rgb{0, 255, 255}, {"c", "d"});
  Layout l;
  l.width = l.height = 1024;
  l.positions["a"] = {100, 300};
  l.positions["b"] = {500, 300};
  l.positions["c"] = {120, 380};
  l.positions["d"] = {480, 220};
  auto v = check_layout(g, l, StyleSpec{});
  CHECK(joined(v).find("cross at 24.0 degrees (minimum 25)") !=
        std::string::npos);
}

TEST_CASE("checker reports shallow meeting angles at interchanges") {
  TransitGraph g;
  add_line(g, 0, Rgb{230, 30, 30}, {"s", "a"});
  add_line(g, 1, Rgb{0, 255, 255}, {"s", "b"});
  Layout l;
  l.width = l.height = 1024;
  l.positions["s"] = {200, 400};
  l.positions["a"] = {400, 400};
  l.positions["b"] = {400, 440};
  auto v = check_layout(g, l, StyleSpec{});
  CHECK(joined(v).find("meet at") != std::string::npos);
}

TEST_CASE("checker reports canvas and coverage problems") {
  TransitGraph g = line_path({"a", "b"});
  Layout l;
  l.width = l.height = 999;
  l.positions["a"] = {100, 300};
  l.positions["b"] = {300, 300};
  auto v = check_layout(g, l, StyleSpec{});
  CHECK(joined(v).find("canvas 999x999 does not match expected 1024x1024") !=
        std::string::npos);

  Layout missing;
  missing.width = missing.height = 1024;
  missing.positions["a"] = {100, 300};
  auto v2 = check_layout(g, missing, StyleSpec{});
  CHECK(joined(v2).find("no position for station b") != std::string::npos);
}
