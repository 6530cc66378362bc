#pragma once

#include <utility>
#include <vector>

#include "core/itemset.hpp"
#include "core/json_io.hpp"

namespace fairorient {

class Instance;

// Role a vertex plays as a child of its tree parent. Closed means the
// subtree touches the rest of the graph through the single edge to the
// parent; Detached means no graph edge leaves the subtree at all (the
// subtree hangs off an auxiliary tree edge); everything else is Open.
enum class ChildKind { Open, Closed, Detached };

// Rooted spanning tree T of an auxiliary supergraph H = G + extra edges,
// with the derived per-vertex data the orientation DP consumes. Width k is
// 1 + the largest number of non-tree H-edges whose tree path runs through a
// single vertex.
struct TreeLayout {
  int root = 0;
  std::vector<int> parent;                   // -1 at the root
  std::vector<std::vector<int>> children;    // ascending
  std::vector<int> postorder;                // children before parents
  std::vector<std::pair<int, int>> h_extra;  // normalized u < v

  int k = 1;
  std::vector<int> feedback;           // non-tree H-edges routed through v
  std::vector<std::pair<int, int>> edge_ends;  // g.edges[e] normalized, for fit checks
  std::vector<ItemSet> subtree;        // vertex set of the subtree at v
  std::vector<std::vector<int>> crossing;  // G-edges with one endpoint in subtree[v]
  std::vector<std::vector<int>> boundary;  // endpoints of those edges, sorted
  std::vector<ChildKind> kind;         // as a child of parent[v]; root: Open
  std::vector<int> closed_edge;        // the single crossing edge when Closed, else -1

  int n() const { return static_cast<int>(parent.size()); }
  bool in_boundary(int v, int w) const;
};

// Validates the tree against H = G + extras, fills in the derived sets, and
// asserts the structural bounds the DP relies on (boundary size <= 2k+2,
// open children <= 2k, boundary containment in child boundaries).
TreeLayout build_layout(const Instance& g, const std::vector<std::pair<int, int>>& h_extra,
                        const std::vector<int>& tree_parent, int root);

// Picks a layout for g: exhaustive over spanning trees for components with
// at most 8 vertices (within the given enumeration budget), greedy BFS tree
// plus local edge swaps otherwise. Disconnected components are bridged by
// extra tree edges, which leaves k at the per-component maximum.
TreeLayout search_layout(const Instance& g, long long budget = 200000);

Json layout_to_json(const Instance& g, const TreeLayout& t);
TreeLayout layout_from_json(const Instance& g, const Json& j);

}  // namespace fairorient
