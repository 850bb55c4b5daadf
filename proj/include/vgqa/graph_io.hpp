#pragma once

#include <string>

#include "vgqa/graph.hpp"

namespace vgqa {

// Parses a graph document (see README for the schema) and validates it.
// Throws DataError with a line/field locus on parse errors and with the
// violation list on validation failures.
TransitGraph load_graph(const std::string& text);

// Canonical text: object keys in schema order, stations sorted by name,
// lines by id, edges by (s1, s2, line_id). save∘load∘save is the identity.
std::string save_graph(const TransitGraph& g);

TransitGraph load_graph_file(const std::string& path);
void save_graph_file(const TransitGraph& g, const std::string& path);

}  // namespace vgqa
