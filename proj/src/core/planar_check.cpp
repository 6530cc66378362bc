#include "core/planar_check.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "core/errors.hpp"
#include "core/instance.hpp"

namespace fairorient {

std::vector<std::pair<int, int>> face_graph_edges(const FaceGraph& g) {
  std::set<std::pair<int, int>> out;
  for (const auto& f : g.faces)
    for (int s = 0; s < 3; ++s) {
      auto e = std::minmax(f[s], f[(s + 1) % 3]);
      out.insert({e.first, e.second});
    }
  return {out.begin(), out.end()};
}

bool is_biconnected(int n, const std::vector<std::pair<int, int>>& edges) {
  if (n < 3) return false;
  std::vector<std::vector<int>> adj(n);
  for (auto [u, v] : edges) {
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  // Remove each vertex in turn and check the rest stays connected. Quadratic,
  // fine at this scale.
  for (int skip = -1; skip < n; ++skip) {
    int start = skip == 0 ? 1 : 0;
    std::vector<char> seen(n, 0);
    std::vector<int> stack{start};
    seen[start] = 1;
    if (skip >= 0) seen[skip] = 1;
    int reached = 1;
    while (!stack.empty()) {
      int u = stack.back();
      stack.pop_back();
      for (int w : adj[u])
        if (!seen[w]) {
          seen[w] = 1;
          ++reached;
          stack.push_back(w);
        }
    }
    if (reached != n - (skip >= 0 ? 1 : 0)) return false;
  }
  return true;
}

std::vector<int> vertex_fan(const FaceGraph& g, int v) {
  // Each incident face contributes a link edge between the two other
  // corners; the link must form one simple path (boundary vertex) or one
  // simple cycle (interior vertex).
  std::map<int, std::vector<int>> link;
  int link_edges = 0;
  for (const auto& f : g.faces) {
    int pos = -1;
    for (int s = 0; s < 3; ++s)
      if (f[s] == v) pos = s;
    if (pos < 0) continue;
    int x = f[(pos + 1) % 3], y = f[(pos + 2) % 3];
    link[x].push_back(y);
    link[y].push_back(x);
    ++link_edges;
  }
  if (link.empty())
    throw InputError("vertex " + std::to_string(v) + " lies on no face");
  bool on_boundary =
      std::find(g.boundary.begin(), g.boundary.end(), v) != g.boundary.end();
  std::vector<int> ends;
  for (const auto& [w, nb] : link) {
    if (nb.size() > 2)
      throw InputError("faces around a vertex do not form a fan");
    if (nb.size() == 1) ends.push_back(w);
  }
  std::vector<int> order;
  if (on_boundary) {
    if (ends.size() != 2)
      throw InputError("boundary vertex fan must be a path");
    int cur = std::min(ends[0], ends[1]);
    int prev = -1;
    while (true) {
      order.push_back(cur);
      const auto& nb = link[cur];
      int next = -1;
      for (int w : nb)
        if (w != prev) next = w;
      if (next == -1) break;
      prev = cur;
      cur = next;
      if (static_cast<int>(order.size()) > link_edges + 1)
        throw InputError("faces around a vertex do not form a fan");
    }
    if (static_cast<int>(order.size()) != link_edges + 1 ||
        order.size() != link.size())
      throw InputError("faces around a vertex do not form a fan");
  } else {
    if (!ends.empty())
      throw InputError("interior vertex fan must be a cycle");
    int start = link.begin()->first;
    int cur = start, prev = -1;
    while (true) {
      order.push_back(cur);
      const auto& nb = link[cur];
      int next = nb[0] == prev ? nb[1] : nb[0];
      prev = cur;
      cur = next;
      if (cur == start) break;
      if (static_cast<int>(order.size()) > link_edges)
        throw InputError("faces around a vertex do not form a fan");
    }
    if (order.size() != link.size() ||
        static_cast<int>(order.size()) != link_edges)
      throw InputError("faces around a vertex do not form a fan");
  }
  return order;
}

void validate_face_graph(const FaceGraph& g) {
  if (g.faces.empty()) throw InputError("planar instance needs a face");
  for (const auto& f : g.faces) {
    for (int corner : f)
      if (corner < 0 || corner >= g.n)
        throw InputError("face corner out of range");
    if (f[0] == f[1] || f[1] == f[2] || f[0] == f[2])
      throw InputError("face corners must be distinct");
  }
  {
    std::set<std::array<int, 3>> seen;
    for (auto f : g.faces) {
      std::sort(f.begin(), f.end());
      if (!seen.insert(f).second) throw InputError("duplicate face");
    }
  }
  if (g.boundary.size() < 3)
    throw InputError("outer boundary needs at least three vertices");
  {
    std::set<int> seen;
    for (int v : g.boundary) {
      if (v < 0 || v >= g.n) throw InputError("boundary vertex out of range");
      if (!seen.insert(v).second)
        throw InputError("outer boundary must be a simple cycle");
    }
  }

  // Edge multiplicities: boundary edges on exactly one inner face, interior
  // edges on exactly two.
  std::map<std::pair<int, int>, int> count;
  for (const auto& f : g.faces)
    for (int s = 0; s < 3; ++s) {
      auto e = std::minmax(f[s], f[(s + 1) % 3]);
      ++count[{e.first, e.second}];
    }
  std::set<std::pair<int, int>> boundary_edges;
  for (size_t s = 0; s < g.boundary.size(); ++s) {
    auto e = std::minmax(g.boundary[s],
                         g.boundary[(s + 1) % g.boundary.size()]);
    boundary_edges.insert({e.first, e.second});
  }
  for (const auto& [e, c] : count) {
    if (c > 2) throw InputError("an edge lies on more than two faces");
    bool on_boundary = boundary_edges.count(e) > 0;
    if (on_boundary && c != 1)
      throw InputError("a boundary edge must lie on exactly one inner face");
    if (!on_boundary && c != 2)
      throw InputError("an interior edge must lie on exactly two inner faces");
  }
  for (const auto& e : boundary_edges)
    if (!count.count(e))
      throw InputError("a boundary edge lies on no inner face");

  auto edges = face_graph_edges(g);
  // Disk Euler count: |E| = |V| + |inner faces| - 1.
  if (static_cast<int>(edges.size()) !=
      g.n + static_cast<int>(g.faces.size()) - 1)
    throw InputError("face data fails the Euler count for a disk");
  if (!is_biconnected(g.n, edges))
    throw InputError("planar instance must be 2-connected");
  for (int v = 0; v < g.n; ++v) vertex_fan(g, v);  // throws when incoherent
}

void validate_planar_payload(const Instance& inst) {
  FaceGraph g;
  g.n = inst.n();
  g.faces = inst.faces;
  g.boundary = inst.outer_boundary;
  validate_face_graph(g);
}

}  // namespace fairorient
