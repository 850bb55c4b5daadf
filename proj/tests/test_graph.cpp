#include <doctest.h>

#include "vgqa/errors.hpp"
#include "vgqa/graph.hpp"
#include "vgqa/graph_io.hpp"

using namespace vgqa;

namespace {

TransitGraph path_graph(std::initializer_list<const char*> names, int line_id = 0,
                        const char* line_name = "redline") {
  TransitGraph g;
  for (const char* n : names) g.stations.push_back({n, n, {}});
  g.lines.push_back({line_id, line_name, Rgb{230, 30, 30}, {}, {}});
  const Station* prev = nullptr;
  for (auto& s : g.stations) {
    if (prev) g.edges.push_back({prev->name, s.name, line_id});
    prev = &s;
  }
  return g;
}

}  // namespace

TEST_CASE("normalize_name lowercases and collapses whitespace") {
  CHECK(normalize_name("Leauts") == "leauts");
  CHECK(normalize_name("  Main  Station ") == "main station");
  CHECK(normalize_name("NILY") == "nily");
  CHECK_THROWS_AS(normalize_name("   "), DataError);
}

TEST_CASE("canonical identifiers") {
  CHECK(is_canonical_identifier("leauts"));
  CHECK(is_canonical_identifier("foo9"));
  CHECK(!is_canonical_identifier("9foo"));
  CHECK(!is_canonical_identifier("Main"));
  CHECK(!is_canonical_identifier("main station"));
  CHECK(!is_canonical_identifier(""));
}

TEST_CASE("validate_graph accepts a simple path") {
  CHECK(validate_graph(path_graph({"a", "b", "c"})).ok());
}

TEST_CASE("validate_graph flags a cyclic line") {
  TransitGraph g = path_graph({"x", "y", "z"});
  g.edges.push_back({"z", "x", 0});
  auto r = validate_graph(g);
  REQUIRE(!r.ok());
  bool found = false;
  for (const auto& v : r.violations) found |= v == "line 0 is not a simple path";
  CHECK(found);
}

TEST_CASE("validate_graph flags disconnected union graph") {
  TransitGraph g;
  for (const char* n : {"a", "b", "c", "d"}) g.stations.push_back({n, n, {}});
  g.lines.push_back({0, "redline", Rgb{230, 30, 30}, {}, {}});
  g.lines.push_back({1, "cyanline", Rgb{0, 255, 255}, {}, {}});
  g.edges.push_back({"a", "b", 0});
  g.edges.push_back({"c", "d", 1});
  auto r = validate_graph(g);
  REQUIRE(!r.ok());
  bool found = false;
  for (const auto& v : r.violations) found |= v == "union graph disconnected";
  CHECK(found);
}

TEST_CASE("validate_graph flags branching lines, bad names, color clashes") {
  TransitGraph g = path_graph({"a", "b", "c"});
  g.edges.push_back({"b", "d", 0});
  g.stations.push_back({"d", "d", {}});
  CHECK(!validate_graph(g).ok());  // b now has degree 3 on line 0

  TransitGraph bad_name = path_graph({"a", "b"});
  bad_name.stations[0].name = "A";
  bad_name.stations[0].display_name = "A";
  CHECK(!validate_graph(bad_name).ok());

  TransitGraph clash = path_graph({"a", "b", "c"});
  clash.lines.push_back({1, "pinkline", Rgb{235, 35, 35}, {}, {}});  // ~red
  clash.edges.push_back({"a", "c", 1});
  auto r = validate_graph(clash);
  bool found = false;
  for (const auto& v : r.violations)
    found |= v.find("colors too close") != std::string::npos;
  CHECK(found);
}

TEST_CASE("validate_graph names missing edge endpoints") {
  TransitGraph g = path_graph({"a", "b"});
  g.edges.push_back({"a", "ghost", 0});
  auto r = validate_graph(g);
  REQUIRE(!r.ok());
  bool found = false;
  for (const auto& v : r.violations)
    found |= v == "unknown station in edge: ghost";
  CHECK(found);
}

TEST_CASE("canonicalize orders members and edge endpoints") {
  TransitGraph g;
  g.stations.push_back({"zeta", "zeta", {}});
  g.stations.push_back({"alfa", "alfa", {}});
  g.lines.push_back({1, "cyanline", Rgb{0, 255, 255}, {}, {}});
  g.lines.push_back({0, "redline", Rgb{230, 30, 30}, {}, {}});
  g.edges.push_back({"zeta", "alfa", 0});
  canonicalize(g);
  CHECK(g.stations[0].name == "alfa");
  CHECK(g.lines[0].id == 0);
  CHECK(g.edges[0].s1 == "alfa");
  CHECK(g.edges[0].s2 == "zeta");
}

TEST_CASE("graph file round-trip is the identity on canonical text") {
  TransitGraph g = path_graph({"aki", "bon", "cel"});
  g.stations[0].attributes.size = "large";
  g.stations[0].attributes.music = "classical";
  g.lines[0].built = "90s";
  g.lines[0].aircon = true;
  std::string text = save_graph(g);
  TransitGraph loaded = load_graph(text);
  CHECK(save_graph(loaded) == text);
  CHECK(loaded.stations[0].attributes.size == "large");
  CHECK(loaded.lines[0].aircon == true);
}

TEST_CASE("load_graph reports a parse locus") {
  CHECK_THROWS_WITH_AS(load_graph("{\n  \"stations\": [,]\n}"),
                       doctest::Contains("line 2"), DataError);
}

TEST_CASE("load_graph rejects documents that fail validation") {
  std::string text = R"({
    "stations": [{"name": "a"}, {"name": "b"}],
    "lines": [{"id": 0, "name": "redline", "color": [230, 30, 30]}],
    "edges": [{"s1": "a", "s2": "ghost", "line_id": 0}]
  })";
  CHECK_THROWS_WITH_AS(load_graph(text), doctest::Contains("ghost"), DataError);
}

TEST_CASE("minimal two-station document loads") {
  std::string text = R"({
    "stations": [{"name": "a"}, {"name": "b"}],
    "lines": [{"id": 0, "name": "redline", "color": [230, 30, 30]}],
    "edges": [{"s1": "a", "s2": "b", "line_id": 0}]
  })";
  TransitGraph g = load_graph(text);
  CHECK(g.stations.size() == 2);
  CHECK(g.lines.size() == 1);
  CHECK(g.edges.size() == 1);
  CHECK(g.stations[0].display_name == "a");
}
