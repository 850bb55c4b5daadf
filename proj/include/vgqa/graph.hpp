#pragma once

#include <optional>
#include <string>
#include <vector>

#include "vgqa/color.hpp"

namespace vgqa {

// Optional categorical extras carried for schema fidelity; only the station
// name participates in question answering.
struct StationAttributes {
  std::optional<std::string> size;
  std::optional<std::string> architecture;
  std::optional<std::string> cleanliness;
  std::optional<std::string> disabled_access;
  std::optional<std::string> rail_access;
  std::optional<std::string> music;

  bool empty() const;
  friend bool operator==(const StationAttributes&,
                         const StationAttributes&) = default;
};

struct Station {
  std::string name;          // canonical: [a-z][a-z0-9]*
  std::string display_name;  // as rendered on the map
  StationAttributes attributes;

  friend bool operator==(const Station&, const Station&) = default;
};

struct Line {
  int id = 0;
  std::string name;  // canonical: [a-z][a-z0-9]*
  Rgb color;
  std::optional<std::string> built;
  std::optional<bool> aircon;

  friend bool operator==(const Line&, const Line&) = default;
};

// Undirected; stored with s1 < s2 after canonicalization.
struct Edge {
  std::string s1;
  std::string s2;
  int line_id = 0;

  friend bool operator==(const Edge&, const Edge&) = default;
};

struct TransitGraph {
  std::vector<Station> stations;
  std::vector<Line> lines;
  std::vector<Edge> edges;

  const Station* find_station(const std::string& canonical_name) const;
  const Line* find_line(int id) const;
  const Line* find_line(const std::string& canonical_name) const;
  int station_index(const std::string& canonical_name) const;  // -1 if absent

  friend bool operator==(const TransitGraph&, const TransitGraph&) = default;
};

struct ValidationResult {
  std::vector<std::string> violations;

  bool ok() const { return violations.empty(); }
};

// Checks every TransitGraph invariant: canonical unique names, palette
// discipline on line colors, edge endpoint sanity, one simple path per
// line, and a connected union graph. Violations are data, not faults.
ValidationResult validate_graph(const TransitGraph& g);

// Sorts stations by name, lines by id, edges by (s1, s2, line_id), and
// swaps edge endpoints into s1 < s2 order.
void canonicalize(TransitGraph& g);

// Lowercases, trims, and collapses internal whitespace runs to single
// spaces. Throws DataError if nothing remains.
std::string normalize_name(const std::string& s);

// [a-z][a-z0-9]*
bool is_canonical_identifier(const std::string& s);

}  // namespace vgqa
