// Small-graph corpus for the orientation solvers: every connected graph with
// few edges up to isomorphism, plus a builder that turns an edge list into a
// graph instance with chosen symmetric edge weights.
#pragma once

#include <algorithm>
#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "core/instance.hpp"

namespace catalog {

struct SmallGraph {
  int n = 0;
  std::vector<std::pair<int, int>> edges;
};

// Connected graphs with 1..max_edges edges and no isolated vertices, one
// representative per isomorphism class, by brute-force canonicalization.
inline std::vector<SmallGraph> connected_graphs(int max_edges) {
  std::vector<SmallGraph> out;
  std::set<std::vector<std::pair<int, int>>> seen;
  for (int n = 2; n <= max_edges + 1; ++n) {
    std::vector<std::pair<int, int>> all;
    for (int a = 0; a < n; ++a) {
      for (int b = a + 1; b < n; ++b) all.emplace_back(a, b);
    }
    const int total = static_cast<int>(all.size());
    for (uint32_t pick = 1; pick < (1u << total); ++pick) {
      if (__builtin_popcount(pick) > max_edges) continue;
      std::vector<std::pair<int, int>> edges;
      std::vector<int> degree(n, 0);
      for (int i = 0; i < total; ++i) {
        if ((pick >> i) & 1) {
          edges.push_back(all[i]);
          ++degree[all[i].first];
          ++degree[all[i].second];
        }
      }
      if (std::count(degree.begin(), degree.end(), 0) > 0) continue;
      // connectivity
      std::vector<int> comp(n, -1), queue = {0};
      comp[0] = 0;
      for (size_t q = 0; q < queue.size(); ++q) {
        for (auto [a, b] : edges) {
          int other = -1;
          if (a == queue[q]) other = b;
          if (b == queue[q]) other = a;
          if (other >= 0 && comp[other] < 0) {
            comp[other] = 0;
            queue.push_back(other);
          }
        }
      }
      if (queue.size() != static_cast<size_t>(n)) continue;
      // canonical form: lexicographically least relabeling
      std::vector<int> perm(n);
      for (int i = 0; i < n; ++i) perm[i] = i;
      std::vector<std::pair<int, int>> best;
      do {
        std::vector<std::pair<int, int>> relab;
        for (auto [a, b] : edges) {
          relab.emplace_back(std::min(perm[a], perm[b]), std::max(perm[a], perm[b]));
        }
        std::sort(relab.begin(), relab.end());
        if (best.empty() || relab < best) best = relab;
      } while (std::next_permutation(perm.begin(), perm.end()));
      if (seen.insert(best).second) out.push_back({n, best});
    }
  }
  return out;
}

inline fairorient::Instance weighted_graph(int n, const std::vector<std::pair<int, int>>& edges,
                                           const std::vector<fairorient::Rational>& weights) {
  std::vector<std::string> verts;
  for (int i = 0; i < n; ++i) verts.push_back("v" + std::to_string(i));
  std::vector<fairorient::GraphEdge> ge;
  for (size_t i = 0; i < edges.size(); ++i) {
    fairorient::GraphEdge e;
    e.u = edges[i].first;
    e.v = edges[i].second;
    e.id = "e" + std::to_string(i);
    e.wu = weights[i];
    e.wv = weights[i];
    ge.push_back(e);
  }
  return fairorient::make_graph_instance(fairorient::InstanceKind::Graph, verts, ge);
}

inline fairorient::Instance unit_graph(int n, const std::vector<std::pair<int, int>>& edges) {
  return weighted_graph(n, edges, std::vector<fairorient::Rational>(edges.size(), 1));
}

}  // namespace catalog
