#pragma once

// Brute-force reference implementations for checking the reasoner. These
// deliberately use different machinery (distance matrices, transitive
// closure, bitmask DP) than the shipped breadth-first/DFS code so a shared
// bug cannot hide.

#include <algorithm>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "vgqa/graph.hpp"
#include "vgqa/rng.hpp"

namespace oracle {

constexpr int kInf = 1 << 20;

struct DenseGraph {
  std::vector<std::string> names;
  std::vector<std::vector<bool>> adj;

  explicit DenseGraph(const vgqa::TransitGraph& g) {
    std::map<std::string, int> index;
    for (const auto& s : g.stations) {
      index[s.name] = int(names.size());
      names.push_back(s.name);
    }
    adj.assign(names.size(), std::vector<bool>(names.size(), false));
    for (const auto& e : g.edges) {
      int a = index.at(e.s1), b = index.at(e.s2);
      if (a != b) adj[size_t(a)][size_t(b)] = adj[size_t(b)][size_t(a)] = true;
    }
  }

  int index_of(const std::string& name) const {
    for (size_t i = 0; i < names.size(); ++i) {
      if (names[i] == name) return int(i);
    }
    return -1;
  }
};

// All-pairs hop counts, Floyd-Warshall.
inline std::vector<std::vector<int>> distance_table(const DenseGraph& d) {
  size_t n = d.names.size();
  std::vector<std::vector<int>> dist(n, std::vector<int>(n, kInf));
  for (size_t i = 0; i < n; ++i) dist[i][i] = 0;
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < n; ++j) {
      if (d.adj[i][j]) dist[i][j] = 1;
    }
  }
  for (size_t k = 0; k < n; ++k) {
    for (size_t i = 0; i < n; ++i) {
      for (size_t j = 0; j < n; ++j) {
        dist[i][j] = std::min(dist[i][j], dist[i][k] + dist[k][j]);
      }
    }
  }
  return dist;
}

// Simple-path count via DP over (visited-set, endpoint). Requires <= ~20
// nodes; test graphs stay at 12.
inline long long path_count(const DenseGraph& d, int s, int t) {
  if (s == t) return 1;
  size_t n = d.names.size();
  std::vector<std::vector<long long>> dp(size_t(1) << n,
                                         std::vector<long long>(n, 0));
  dp[size_t(1) << s][size_t(s)] = 1;
  long long total = 0;
  for (size_t mask = 1; mask < dp.size(); ++mask) {
    for (size_t v = 0; v < n; ++v) {
      long long ways = dp[mask][v];
      if (!ways || !(mask >> v & 1)) continue;
      if (int(v) == t) continue;  // paths stop at t
      for (size_t w = 0; w < n; ++w) {
        if (d.adj[v][w] && !(mask >> w & 1)) {
          dp[mask | size_t(1) << w][w] += ways;
        }
      }
    }
  }
  for (size_t mask = 0; mask < dp.size(); ++mask) total += dp[mask][size_t(t)];
  return total;
}

// Boolean transitive closure with one vertex removed.
inline std::vector<std::vector<bool>> closure_without(const DenseGraph& d,
                                                      int removed) {
  size_t n = d.names.size();
  std::vector<std::vector<bool>> reach(n, std::vector<bool>(n, false));
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j < n; ++j) {
      if (int(i) != removed && int(j) != removed && d.adj[i][j]) {
        reach[i][j] = true;
      }
    }
  }
  for (size_t k = 0; k < n; ++k) {
    if (int(k) == removed) continue;
    for (size_t i = 0; i < n; ++i) {
      for (size_t j = 0; j < n; ++j) {
        if (reach[i][k] && reach[k][j]) reach[i][j] = true;
      }
    }
  }
  return reach;
}

// On a simple cycle of >= 3 stations iff two distinct neighbors reconnect
// once the vertex itself is removed.
inline bool on_cycle(const DenseGraph& d, int v) {
  size_t n = d.names.size();
  auto reach = closure_without(d, v);
  for (size_t u = 0; u < n; ++u) {
    if (!d.adj[size_t(v)][u]) continue;
    for (size_t w = u + 1; w < n; ++w) {
      if (d.adj[size_t(v)][w] && reach[u][w]) return true;
    }
  }
  return false;
}

inline std::vector<std::string> common_adjacent(const DenseGraph& d, int a,
                                                int b) {
  std::vector<std::string> out;
  for (size_t v = 0; v < d.names.size(); ++v) {
    if (d.adj[size_t(a)][v] && d.adj[size_t(b)][v]) out.push_back(d.names[v]);
  }
  std::sort(out.begin(), out.end());
  return out;
}

inline std::vector<std::string> lines_of_station(const vgqa::TransitGraph& g,
                                                 const std::string& s) {
  std::set<std::string> names;
  for (const auto& l : g.lines) {
    for (const auto& e : g.edges) {
      if (e.line_id == l.id && (e.s1 == s || e.s2 == s)) names.insert(l.name);
    }
  }
  return {names.begin(), names.end()};
}

inline std::vector<std::string> stations_of_line(const vgqa::TransitGraph& g,
                                                 int line_id) {
  std::set<std::string> names;
  for (const auto& e : g.edges) {
    if (e.line_id == line_id) {
      names.insert(e.s1);
      names.insert(e.s2);
    }
  }
  return {names.begin(), names.end()};
}

// Random connected graph on <= 12 nodes: a spanning tree plus a few chords,
// with edges dealt across 1-3 pseudo-lines. Lines here need not be valid
// transit lines; the primitives under test only read the union graph and
// the edge->line map.
inline vgqa::TransitGraph random_graph(vgqa::Rng& rng) {
  using namespace vgqa;
  int n = rng.next_int(2, 12);
  TransitGraph g;
  for (int i = 0; i < n; ++i) {
    std::string name = "s" + std::to_string(i);
    g.stations.push_back({name, name, {}});
  }
  int n_lines = rng.next_int(1, 3);
  for (int l = 0; l < n_lines; ++l) {
    g.lines.push_back(
        {l, std::string(kLinePalette[size_t(l)].name) + "line",
         kLinePalette[size_t(l)].color, {}, {}});
  }
  std::set<std::pair<int, int>> used;
  auto add_edge = [&](int a, int b) {
    auto key = std::minmax(a, b);
    if (a == b || !used.insert(key).second) return;
    g.edges.push_back({g.stations[size_t(a)].name, g.stations[size_t(b)].name,
                       rng.next_int(0, n_lines - 1)});
  };
  for (int i = 1; i < n; ++i) add_edge(i, rng.next_int(0, i - 1));
  int chords = rng.next_int(0, std::min(4, n * (n - 1) / 2 - (n - 1)));
  for (int c = 0; c < chords; ++c) {
    add_edge(rng.next_int(0, n - 1), rng.next_int(0, n - 1));
  }
  return g;
}

}  // namespace oracle
