#include "efx/layout.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <string>

#include "core/errors.hpp"
#include "core/instance.hpp"

namespace fairorient {

namespace {

std::pair<int, int> norm_pair(int a, int b) { return {std::min(a, b), std::max(a, b)}; }

const Instance& require_simple_graph(const Instance& g) {
  if (g.kind != InstanceKind::Graph || g.multi) {
    throw InputError("tree layouts need a simple graph instance");
  }
  return g;
}

std::set<std::pair<int, int>> graph_pairs(const Instance& g) {
  std::set<std::pair<int, int>> pairs;
  for (const auto& e : g.edges) pairs.insert(norm_pair(e.u, e.v));
  return pairs;
}

// Count, for every vertex, the non-tree H-edges whose tree path passes
// through it. Width of the layout is 1 + the maximum count.
std::vector<int> feedback_counts(int n, const std::vector<int>& parent,
                                 const std::vector<int>& depth,
                                 const std::vector<std::pair<int, int>>& non_tree) {
  std::vector<int> count(n, 0);
  for (auto [a, b] : non_tree) {
    while (a != b) {
      if (depth[a] < depth[b]) std::swap(a, b);
      count[a] += 1;
      a = parent[a];
    }
    count[a] += 1;
  }
  return count;
}

std::vector<int> depths_of(const std::vector<int>& parent, int root) {
  const int n = static_cast<int>(parent.size());
  std::vector<int> depth(n, -1);
  depth[root] = 0;
  for (int v = 0; v < n; ++v) {
    int steps = 0;
    int w = v;
    while (depth[w] < 0) {
      if (parent[w] < 0 || parent[w] >= n || ++steps > n) {
        throw InputError("tree parent map does not form a tree rooted at root");
      }
      w = parent[w];
    }
    int base = depth[w];
    w = v;
    std::vector<int> path;
    while (depth[w] < 0) {
      path.push_back(w);
      w = parent[w];
    }
    for (auto it = path.rbegin(); it != path.rend(); ++it) depth[*it] = ++base;
  }
  return depth;
}

}  // namespace

bool TreeLayout::in_boundary(int v, int w) const {
  const auto& b = boundary[v];
  return std::binary_search(b.begin(), b.end(), w);
}

TreeLayout build_layout(const Instance& g, const std::vector<std::pair<int, int>>& h_extra,
                        const std::vector<int>& tree_parent, int root) {
  require_simple_graph(g);
  const int n = g.n();
  if (root < 0 || root >= n) throw InputError("layout root is not a vertex");
  if (static_cast<int>(tree_parent.size()) != n) {
    throw InputError("tree parent map must cover every vertex");
  }
  if (tree_parent[root] != -1) throw InputError("layout root must have no parent");

  auto h_pairs = graph_pairs(g);
  TreeLayout t;
  t.root = root;
  t.parent = tree_parent;
  for (auto [a, b] : h_extra) {
    if (a < 0 || b < 0 || a >= n || b >= n || a == b) {
      throw InputError("extra layout edge is not a vertex pair");
    }
    auto p = norm_pair(a, b);
    if (!h_pairs.insert(p).second) throw InputError("extra layout edge duplicates an edge");
    t.h_extra.push_back(p);
  }
  std::sort(t.h_extra.begin(), t.h_extra.end());

  for (int v = 0; v < n; ++v) {
    if (v == root) continue;
    if (tree_parent[v] < 0 || tree_parent[v] >= n || tree_parent[v] == v) {
      throw InputError("tree parent map entry out of range");
    }
    if (!h_pairs.count(norm_pair(v, tree_parent[v]))) {
      throw InputError("tree edge is not part of the layout graph");
    }
  }
  std::vector<int> depth = depths_of(t.parent, root);

  t.children.assign(n, {});
  for (int v = 0; v < n; ++v) {
    if (v != root) t.children[t.parent[v]].push_back(v);
  }

  // Postorder via a preorder stack: reversing a children-first preorder
  // visits every child before its parent.
  {
    std::vector<int> stack = {root};
    std::vector<int> rev;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      rev.push_back(v);
      for (int c : t.children[v]) stack.push_back(c);
    }
    t.postorder.assign(rev.rbegin(), rev.rend());
  }

  std::set<std::pair<int, int>> tree_pairs;
  for (int v = 0; v < n; ++v) {
    if (v != root) tree_pairs.insert(norm_pair(v, t.parent[v]));
  }
  std::vector<std::pair<int, int>> non_tree;
  for (const auto& p : h_pairs) {
    if (!tree_pairs.count(p)) non_tree.push_back(p);
  }
  t.feedback = feedback_counts(n, t.parent, depth, non_tree);
  t.k = 1 + (n ? *std::max_element(t.feedback.begin(), t.feedback.end()) : 0);

  for (const auto& e : g.edges) t.edge_ends.push_back(norm_pair(e.u, e.v));

  t.subtree.assign(n, ItemSet(n));
  for (int v : t.postorder) {
    t.subtree[v].add(v);
    for (int c : t.children[v]) t.subtree[v] |= t.subtree[c];
  }

  t.crossing.assign(n, {});
  t.boundary.assign(n, {});
  for (int v = 0; v < n; ++v) {
    std::set<int> ends;
    for (int e = 0; e < g.m(); ++e) {
      if (t.subtree[v].contains(g.edges[e].u) != t.subtree[v].contains(g.edges[e].v)) {
        t.crossing[v].push_back(e);
        ends.insert(g.edges[e].u);
        ends.insert(g.edges[e].v);
      }
    }
    t.boundary[v].assign(ends.begin(), ends.end());
  }

  t.kind.assign(n, ChildKind::Open);
  t.closed_edge.assign(n, -1);
  for (int v = 0; v < n; ++v) {
    if (v == root) continue;
    if (t.crossing[v].empty()) {
      t.kind[v] = ChildKind::Detached;
    } else if (t.crossing[v].size() == 1) {
      int e = t.crossing[v][0];
      if (norm_pair(g.edges[e].u, g.edges[e].v) == norm_pair(v, t.parent[v])) {
        t.kind[v] = ChildKind::Closed;
        t.closed_edge[v] = e;
      }
    }
  }

  for (int v = 0; v < n; ++v) {
    if (static_cast<int>(t.boundary[v].size()) > 2 * t.k + 2) {
      throw InternalError("layout boundary exceeds the width bound");
    }
    int open = 0;
    for (int c : t.children[v]) {
      if (t.kind[c] == ChildKind::Open) ++open;
    }
    if (open > 2 * t.k) throw InternalError("layout has too many open children");
    // Every boundary vertex must be visible from a child boundary, from v
    // itself, or across one of v's own edges.
    for (int w : t.boundary[v]) {
      bool seen = (w == v);
      for (int c : t.children[v]) {
        if (!seen) seen = t.in_boundary(c, w);
      }
      if (!seen) {
        for (int e = 0; e < g.m() && !seen; ++e) {
          seen = norm_pair(g.edges[e].u, g.edges[e].v) == norm_pair(v, w);
        }
      }
      if (!seen) throw InternalError("layout boundary not covered by children");
    }
    if (t.h_extra.empty() && v != root && t.boundary[v].size() <= 2 &&
        t.kind[v] == ChildKind::Open) {
      throw InternalError("small boundary child must be closed when H equals G");
    }
  }
  return t;
}

namespace {

struct LocalGraph {
  std::vector<int> verts;                  // global ids, ascending
  std::vector<std::pair<int, int>> edges;  // local indices
};

int local_width(const std::vector<int>& parent, int root,
                const std::vector<std::pair<int, int>>& non_tree) {
  std::vector<int> depth = depths_of(parent, root);
  auto counts = feedback_counts(static_cast<int>(parent.size()), parent, depth, non_tree);
  return 1 + (counts.empty() ? 0 : *std::max_element(counts.begin(), counts.end()));
}

std::vector<int> bfs_parents(int n, const std::vector<std::vector<int>>& adj, int start) {
  std::vector<int> parent(n, -2);
  std::vector<int> queue = {start};
  parent[start] = -1;
  for (size_t q = 0; q < queue.size(); ++q) {
    int v = queue[q];
    for (int w : adj[v]) {
      if (parent[w] == -2) {
        parent[w] = v;
        queue.push_back(w);
      }
    }
  }
  return parent;
}

// Exhaustive minimum over spanning trees, walking (cv-1)-subsets of the
// component edges. Budget counts candidate subsets; returns false when it
// runs out so the caller can fall back to the greedy route.
bool best_tree_exhaustive(const LocalGraph& lg, long long& budget, std::vector<int>& out_parent) {
  const int n = static_cast<int>(lg.verts.size());
  const int m = static_cast<int>(lg.edges.size());
  const int need = n - 1;
  std::vector<int> pick(need);
  std::iota(pick.begin(), pick.end(), 0);
  int best = -1;
  std::vector<int> best_parent;
  while (true) {
    if (--budget < 0) return false;
    std::vector<std::vector<int>> adj(n);
    for (int i : pick) {
      adj[lg.edges[i].first].push_back(lg.edges[i].second);
      adj[lg.edges[i].second].push_back(lg.edges[i].first);
    }
    auto parent = bfs_parents(n, adj, 0);
    bool spanning = std::none_of(parent.begin(), parent.end(), [](int p) { return p == -2; });
    if (spanning) {
      std::vector<bool> chosen(m, false);
      for (int i : pick) chosen[i] = true;
      std::vector<std::pair<int, int>> non_tree;
      for (int i = 0; i < m; ++i) {
        if (!chosen[i]) non_tree.push_back(lg.edges[i]);
      }
      int w = local_width(parent, 0, non_tree);
      if (best < 0 || w < best) {
        best = w;
        best_parent = parent;
      }
    }
    // next combination
    int i = need - 1;
    while (i >= 0 && pick[i] == m - need + i) --i;
    if (i < 0) break;
    ++pick[i];
    for (int j = i + 1; j < need; ++j) pick[j] = pick[j - 1] + 1;
  }
  out_parent = best_parent;
  return best >= 0;
}

void best_tree_greedy(const LocalGraph& lg, long long& budget, std::vector<int>& out_parent) {
  const int n = static_cast<int>(lg.verts.size());
  const int m = static_cast<int>(lg.edges.size());
  std::vector<std::vector<int>> adj(n);
  std::vector<int> degree(n, 0);
  for (auto [a, b] : lg.edges) {
    adj[a].push_back(b);
    adj[b].push_back(a);
    ++degree[a];
    ++degree[b];
  }
  int start = static_cast<int>(std::min_element(degree.begin(), degree.end()) - degree.begin());
  std::vector<int> parent = bfs_parents(n, adj, start);

  auto width_of = [&](const std::vector<int>& par) {
    std::set<std::pair<int, int>> tp;
    for (int v = 0; v < n; ++v) {
      if (par[v] >= 0) tp.insert(norm_pair(v, par[v]));
    }
    std::vector<std::pair<int, int>> non_tree;
    for (int i = 0; i < m; ++i) {
      if (!tp.count(norm_pair(lg.edges[i].first, lg.edges[i].second))) {
        non_tree.push_back(lg.edges[i]);
      }
    }
    return local_width(par, start, non_tree);
  };

  int cur = width_of(parent);
  bool improved = true;
  while (improved && budget > 0) {
    improved = false;
    std::set<std::pair<int, int>> tp;
    for (int v = 0; v < n; ++v) {
      if (parent[v] >= 0) tp.insert(norm_pair(v, parent[v]));
    }
    for (int i = 0; i < m && !improved; ++i) {
      auto np = norm_pair(lg.edges[i].first, lg.edges[i].second);
      if (tp.count(np)) continue;
      // walk the fundamental path of edge i, trying each tree edge swap
      std::vector<int> depth = depths_of(parent, start);
      int a = lg.edges[i].first;
      int b = lg.edges[i].second;
      while (a != b && !improved) {
        if (depth[a] < depth[b]) std::swap(a, b);
        int drop_child = a;
        a = parent[a];
        if (--budget < 0) break;
        // rebuild the tree with edge i in place of (drop_child, parent)
        std::vector<std::vector<int>> tadj(n);
        for (int v = 0; v < n; ++v) {
          if (parent[v] >= 0 && v != drop_child) {
            tadj[v].push_back(parent[v]);
            tadj[parent[v]].push_back(v);
          }
        }
        tadj[lg.edges[i].first].push_back(lg.edges[i].second);
        tadj[lg.edges[i].second].push_back(lg.edges[i].first);
        auto cand = bfs_parents(n, tadj, start);
        if (std::none_of(cand.begin(), cand.end(), [](int p) { return p == -2; })) {
          int w = width_of(cand);
          if (w < cur) {
            parent = cand;
            cur = w;
            improved = true;
          }
        }
      }
    }
  }
  out_parent = parent;
}

}  // namespace

TreeLayout search_layout(const Instance& g, long long budget) {
  require_simple_graph(g);
  const int n = g.n();
  if (n == 0) throw InputError("layout needs at least one vertex");

  std::vector<std::vector<int>> adj(n);
  for (const auto& e : g.edges) {
    adj[e.u].push_back(e.v);
    adj[e.v].push_back(e.u);
  }
  std::vector<int> comp(n, -1);
  std::vector<std::vector<int>> comps;
  for (int v = 0; v < n; ++v) {
    if (comp[v] >= 0) continue;
    std::vector<int> queue = {v};
    comp[v] = static_cast<int>(comps.size());
    for (size_t q = 0; q < queue.size(); ++q) {
      for (int w : adj[queue[q]]) {
        if (comp[w] < 0) {
          comp[w] = comp[v];
          queue.push_back(w);
        }
      }
    }
    std::sort(queue.begin(), queue.end());
    comps.push_back(queue);
  }

  std::vector<int> parent(n, -1);
  for (const auto& verts : comps) {
    LocalGraph lg;
    lg.verts = verts;
    std::vector<int> local(n, -1);
    for (int i = 0; i < static_cast<int>(verts.size()); ++i) local[verts[i]] = i;
    for (const auto& e : g.edges) {
      if (comp[e.u] == comp[verts[0]]) lg.edges.push_back(norm_pair(local[e.u], local[e.v]));
    }
    std::vector<int> lp;
    if (verts.size() == 1) {
      lp = {-1};
    } else if (verts.size() > 8 || !best_tree_exhaustive(lg, budget, lp)) {
      best_tree_greedy(lg, budget, lp);
    }
    for (int i = 0; i < static_cast<int>(verts.size()); ++i) {
      parent[verts[i]] = lp[i] < 0 ? -1 : verts[lp[i]];
    }
  }

  // Bridge the components into one tree: each component root hangs off the
  // previous component's root through an extra (non-graph) edge.
  std::vector<std::pair<int, int>> extra;
  for (size_t c = 1; c < comps.size(); ++c) {
    parent[comps[c][0]] = comps[c - 1][0];
    extra.push_back(norm_pair(comps[c][0], comps[c - 1][0]));
  }
  return build_layout(g, extra, parent, comps[0][0]);
}

Json layout_to_json(const Instance& g, const TreeLayout& t) {
  Json j;
  j["h_extra_edges"] = Json::array();
  for (auto [a, b] : t.h_extra) {
    j["h_extra_edges"].push_back(Json::array({g.agents[a], g.agents[b]}));
  }
  j["tree_parent"] = Json::object();
  for (int v = 0; v < t.n(); ++v) {
    if (v != t.root) j["tree_parent"][g.agents[v]] = g.agents[t.parent[v]];
  }
  j["root"] = g.agents[t.root];
  return j;
}

TreeLayout layout_from_json(const Instance& g, const Json& j) {
  require_simple_graph(g);
  auto vertex_of = [&](const Json& name) {
    if (!name.is_string()) throw InputError("layout vertex names must be strings");
    int v = g.agent_index(name.get<std::string>());
    if (v < 0) {
      throw InputError("layout refers to unknown vertex '" + name.get<std::string>() + "'");
    }
    return v;
  };
  if (!j.is_object() || !j.contains("tree_parent") || !j.contains("root")) {
    throw InputError("layout file needs tree_parent and root");
  }
  std::vector<std::pair<int, int>> extra;
  if (j.contains("h_extra_edges")) {
    for (const auto& pair : j.at("h_extra_edges")) {
      if (!pair.is_array() || pair.size() != 2) {
        throw InputError("h_extra_edges entries must be vertex pairs");
      }
      extra.emplace_back(vertex_of(pair[0]), vertex_of(pair[1]));
    }
  }
  int root = vertex_of(j.at("root"));
  std::vector<int> parent(g.n(), -1);
  std::vector<bool> seen(g.n(), false);
  for (const auto& [child, par] : j.at("tree_parent").items()) {
    int v = vertex_of(Json(child));
    parent[v] = vertex_of(par);
    seen[v] = true;
  }
  for (int v = 0; v < g.n(); ++v) {
    if (v != root && !seen[v]) {
      throw InputError("tree parent map must cover every vertex except the root");
    }
  }
  if (seen[root]) throw InputError("layout root must have no parent");
  return build_layout(g, extra, parent, root);
}

}  // namespace fairorient
