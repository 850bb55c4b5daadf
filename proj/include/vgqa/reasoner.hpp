#pragma once

#include <string>
#include <vector>

#include "vgqa/graph.hpp"
#include "vgqa/program.hpp"

namespace vgqa {

// All primitives operate on the union graph (every edge, lines ignored,
// parallel edges collapsed) and take canonical station/line names. Unknown
// names raise DataError; evaluate() converts those into the categorical
// "unknown" answer so a recovered-but-wrong graph still grades.

// Minimum edge count over paths between s1 and s2; 0 for (s,s).
// DataError if no path exists.
int shortest_path_hops(const TransitGraph& g, const std::string& s1,
                       const std::string& s2);

// Intermediate stations on a shortest path: shortest_path_hops - 1.
int count_nodes_between(const TransitGraph& g, const std::string& s1,
                        const std::string& s2);

// Stations t != s with 1 <= distance(s,t) <= k.
int within_hops_count(const TransitGraph& g, const std::string& s, int k);

// Simple paths (no repeated station) between s1 and s2; (s,s) counts the
// empty path as 1.
long long count_simple_paths(const TransitGraph& g, const std::string& s1,
                             const std::string& s2);

// True iff s lies on a simple cycle of >= 3 stations. Parallel edges from
// different lines collapse, so a two-station shuttle is not a cycle.
bool on_cycle(const TransitGraph& g, const std::string& s);

bool adjacent(const TransitGraph& g, const std::string& s1,
              const std::string& s2);

// Stations adjacent to both, sorted.
std::vector<std::string> common_adjacent_stations(const TransitGraph& g,
                                                  const std::string& s1,
                                                  const std::string& s2);

// Total; normalizes its argument instead of failing on unknown names.
bool station_exists(const TransitGraph& g, const std::string& name);

// Sorted names of lines with an edge incident to s.
std::vector<std::string> lines_of_station(const TransitGraph& g,
                                          const std::string& s);

bool same_line(const TransitGraph& g, const std::string& s1,
               const std::string& s2);

// Sorted names of stations incident to any edge of the line.
std::vector<std::string> stations_of_line(const TransitGraph& g,
                                          const std::string& line_name);

struct EvalTrace {
  std::vector<std::string> notes;
};

// Dispatches on the step at index T-1 (checking its predecessor chain) to
// the primitives above. Unknown stations/lines and unreachable pairs give
// Answer::unknown(); malformed programs (bad op, arity) raise DataError.
Answer evaluate(const FunctionalProgram& p, const TransitGraph& g,
                EvalTrace* trace = nullptr);

struct AspFactSet {
  std::vector<std::string> facts;  // one per line, "."-terminated

  std::string text() const;
};

// Graph facts (station/1, edge/3, line/2) in canonical order, then the
// program's atoms. Name arguments are quoted consistently in both so the
// facts join when fed to an external solver.
AspFactSet emit_asp_facts(const TransitGraph& g, const FunctionalProgram& p);

}  // namespace vgqa
