#include "vgqa/graph.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <set>

#include "vgqa/errors.hpp"

namespace vgqa {

bool StationAttributes::empty() const {
  return !size && !architecture && !cleanliness && !disabled_access &&
         !rail_access && !music;
}

const Station* TransitGraph::find_station(const std::string& name) const {
  for (const auto& s : stations) {
    if (s.name == name) return &s;
  }
  return nullptr;
}

const Line* TransitGraph::find_line(int id) const {
  for (const auto& l : lines) {
    if (l.id == id) return &l;
  }
  return nullptr;
}

const Line* TransitGraph::find_line(const std::string& name) const {
  for (const auto& l : lines) {
    if (l.name == name) return &l;
  }
  return nullptr;
}

int TransitGraph::station_index(const std::string& name) const {
  for (size_t i = 0; i < stations.size(); ++i) {
    if (stations[i].name == name) return int(i);
  }
  return -1;
}

std::string normalize_name(const std::string& s) {
  std::string out;
  out.reserve(s.size());
  bool pending_space = false;
  for (unsigned char c : s) {
    if (std::isspace(c)) {
      if (!out.empty()) pending_space = true;
      continue;
    }
    if (pending_space) {
      out.push_back(' ');
      pending_space = false;
    }
    out.push_back(char(std::tolower(c)));
  }
  if (out.empty()) throw DataError("name is empty after normalization");
  return out;
}

bool is_canonical_identifier(const std::string& s) {
  if (s.empty() || !std::islower(static_cast<unsigned char>(s[0]))) {
    return false;
  }
  return std::all_of(s.begin(), s.end(), [](unsigned char c) {
    return std::islower(c) || std::isdigit(c);
  });
}

namespace {

std::string strip_whitespace_lower(const std::string& s) {
  std::string out;
  for (unsigned char c : s) {
    if (!std::isspace(c)) out.push_back(char(std::tolower(c)));
  }
  return out;
}

// A nonempty edge set forms a simple path iff it is connected, every
// vertex has degree <= 2, and #edges = #vertices - 1.
bool is_simple_path(const std::vector<std::pair<std::string, std::string>>& edges) {
  std::map<std::string, std::vector<std::string>> adj;
  for (const auto& [a, b] : edges) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  }
  for (const auto& [_, nbrs] : adj) {
    if (nbrs.size() > 2) return false;
  }
  if (edges.size() + 1 != adj.size()) return false;
  // Connectivity by walk from an arbitrary vertex.
  std::set<std::string> seen;
  std::vector<std::string> stack{adj.begin()->first};
  while (!stack.empty()) {
    std::string v = stack.back();
    stack.pop_back();
    if (!seen.insert(v).second) continue;
    for (const auto& n : adj[v]) stack.push_back(n);
  }
  return seen.size() == adj.size();
}

}  // namespace

ValidationResult validate_graph(const TransitGraph& g) {
  ValidationResult r;
  auto flag = [&](std::string msg) { r.violations.push_back(std::move(msg)); };

  std::set<std::string> station_names;
  for (const auto& s : g.stations) {
    if (!is_canonical_identifier(s.name)) {
      flag("station name not canonical: \"" + s.name + "\"");
    }
    if (!station_names.insert(s.name).second) {
      flag("duplicate station name: " + s.name);
    }
    if (strip_whitespace_lower(s.display_name) != s.name) {
      flag("station " + s.name + " display name mismatch: \"" +
           s.display_name + "\"");
    }
  }

  std::set<int> line_ids;
  std::set<std::string> line_names;
  for (const auto& l : g.lines) {
    if (l.id < 0) flag("line id negative: " + std::to_string(l.id));
    if (!line_ids.insert(l.id).second) {
      flag("duplicate line id: " + std::to_string(l.id));
    }
    if (!is_canonical_identifier(l.name)) {
      flag("line name not canonical: \"" + l.name + "\"");
    }
    if (!line_names.insert(l.name).second) {
      flag("duplicate line name: " + l.name);
    }
    for (Rgb reserved : {kBackgroundColor, kNodeColor, kLabelColor}) {
      if (color_distance(l.color, reserved) < kMinColorSeparation) {
        flag("line " + l.name + " color too close to a reserved color");
      }
    }
    for (const auto& other : g.lines) {
      if (other.id < l.id &&
          color_distance(l.color, other.color) < kMinColorSeparation) {
        flag("lines " + other.name + " and " + l.name + " colors too close");
      }
    }
  }

  std::set<std::tuple<std::string, std::string, int>> edge_keys;
  for (const auto& e : g.edges) {
    if (e.s1 == e.s2) {
      flag("self-loop at " + e.s1);
      continue;
    }
    bool endpoints_ok = true;
    for (const auto& endpoint : {e.s1, e.s2}) {
      if (!station_names.count(endpoint)) {
        flag("unknown station in edge: " + endpoint);
        endpoints_ok = false;
      }
    }
    if (!line_ids.count(e.line_id)) {
      flag("unknown line in edge: " + std::to_string(e.line_id));
    }
    auto [a, b] = std::minmax(e.s1, e.s2);
    if (endpoints_ok && !edge_keys.insert({a, b, e.line_id}).second) {
      flag("duplicate edge " + a + "-" + b + " on line " +
           std::to_string(e.line_id));
    }
  }

  for (const auto& l : g.lines) {
    std::vector<std::pair<std::string, std::string>> line_edges;
    for (const auto& e : g.edges) {
      if (e.line_id == l.id && e.s1 != e.s2) line_edges.emplace_back(e.s1, e.s2);
    }
    if (line_edges.empty()) {
      flag("line " + std::to_string(l.id) + " has no edges");
    } else if (!is_simple_path(line_edges)) {
      flag("line " + std::to_string(l.id) + " is not a simple path");
    }
  }

  if (!g.stations.empty()) {
    std::map<std::string, std::vector<std::string>> adj;
    for (const auto& s : g.stations) adj[s.name];
    for (const auto& e : g.edges) {
      if (station_names.count(e.s1) && station_names.count(e.s2)) {
        adj[e.s1].push_back(e.s2);
        adj[e.s2].push_back(e.s1);
      }
    }
    std::set<std::string> seen;
    std::vector<std::string> stack{g.stations.front().name};
    while (!stack.empty()) {
      std::string v = stack.back();
      stack.pop_back();
      if (!seen.insert(v).second) continue;
      for (const auto& n : adj[v]) stack.push_back(n);
    }
    if (seen.size() != adj.size()) flag("union graph disconnected");
  }

  return r;
}

void canonicalize(TransitGraph& g) {
  std::sort(g.stations.begin(), g.stations.end(),
            [](const Station& a, const Station& b) { return a.name < b.name; });
  std::sort(g.lines.begin(), g.lines.end(),
            [](const Line& a, const Line& b) { return a.id < b.id; });
  for (auto& e : g.edges) {
    if (e.s2 < e.s1) std::swap(e.s1, e.s2);
  }
  std::sort(g.edges.begin(), g.edges.end(), [](const Edge& a, const Edge& b) {
    return std::tie(a.s1, a.s2, a.line_id) < std::tie(b.s1, b.s2, b.line_id);
  });
}

}  // namespace vgqa
