#include "efxr/planar.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <map>
#include <set>
#include <vector>

#include "core/errors.hpp"
#include "core/planar_check.hpp"
#include "verify/verify.hpp"

namespace fairorient {

namespace {

using FaceKey = std::array<int, 3>;
using FaceMap = std::map<FaceKey, int>;  // sorted corners -> owner vertex

FaceKey key_of(const std::array<int, 3>& f) {
  FaceKey k = f;
  std::sort(k.begin(), k.end());
  return k;
}

bool biconnected_without(const FaceGraph& fg, int skip) {
  std::vector<int> alive;
  std::vector<int> pos(fg.n, -1);
  for (int v = 0; v < fg.n; ++v)
    if (v != skip) {
      pos[v] = static_cast<int>(alive.size());
      alive.push_back(v);
    }
  std::vector<std::pair<int, int>> edges;
  for (auto [u, w] : face_graph_edges(fg))
    if (u != skip && w != skip) edges.emplace_back(pos[u], pos[w]);
  return is_biconnected(static_cast<int>(alive.size()), edges);
}

// Compacts vertex ids to 0..n'-1, validates the result as a disk, recurses,
// and translates the assignment back to the caller's ids.
FaceMap solve_disk(const FaceGraph& fg);

FaceMap recurse_on(std::vector<std::array<int, 3>> faces,
                   std::vector<int> boundary) {
  std::map<int, int> dense;
  for (const auto& f : faces)
    for (int c : f) dense.emplace(c, 0);
  std::vector<int> orig;
  for (auto& [old_id, new_id] : dense) {
    new_id = static_cast<int>(orig.size());
    orig.push_back(old_id);
  }
  FaceGraph child;
  child.n = static_cast<int>(orig.size());
  for (auto& f : faces)
    child.faces.push_back({dense[f[0]], dense[f[1]], dense[f[2]]});
  for (int v : boundary) {
    auto it = dense.find(v);
    if (it == dense.end())
      throw InternalError("peeled boundary vertex lies on no face");
    child.boundary.push_back(it->second);
  }
  try {
    validate_face_graph(child);
  } catch (const InputError& e) {
    throw InternalError(std::string("reduced disk is malformed: ") + e.what());
  }
  FaceMap sub = solve_disk(child);
  FaceMap out;
  for (const auto& [k, owner] : sub)
    out.emplace(key_of({orig[k[0]], orig[k[1]], orig[k[2]]}), orig[owner]);
  return out;
}

// Exhaustive assignment of faces to corners under the two conditions: at
// most two faces per vertex, and never both faces flanking an edge to one
// endpoint of that edge. Complete, so an exhausted search is a definitive
// no; the theory says that never happens for a valid disk.
FaceMap search_disk(const FaceGraph& fg) {
  int nf = static_cast<int>(fg.faces.size());
  std::map<std::pair<int, int>, std::vector<int>> flanks;
  for (int i = 0; i < nf; ++i)
    for (int s = 0; s < 3; ++s) {
      auto e = std::minmax(fg.faces[i][s], fg.faces[i][(s + 1) % 3]);
      flanks[{e.first, e.second}].push_back(i);
    }

  std::vector<int> owner(nf, -1);
  std::vector<int> load(fg.n, 0);
  long long budget = 50'000'000;

  auto blocked = [&](int i, int x) {
    if (load[x] >= 2) return true;
    for (int s = 0; s < 3; ++s) {
      int a = fg.faces[i][s], b = fg.faces[i][(s + 1) % 3];
      if (a != x && b != x) continue;
      for (int j : flanks[std::minmax(a, b)])
        if (j != i && owner[j] == x) return true;
    }
    return false;
  };

  std::vector<int> order;
  std::function<bool(int)> go = [&](int i) {
    if (i == nf) return true;
    if (--budget < 0)
      throw LimitError("proper-assignment search budget exceeded");
    FaceKey corners = key_of(fg.faces[i]);
    for (int x : corners) {
      if (blocked(i, x)) continue;
      owner[i] = x;
      ++load[x];
      if (go(i + 1)) return true;
      --load[x];
      owner[i] = -1;
    }
    return false;
  };
  if (!go(0))
    throw InternalError("no proper assignment of faces exists");

  FaceMap out;
  for (int i = 0; i < nf; ++i) out.emplace(key_of(fg.faces[i]), owner[i]);
  return out;
}

FaceMap solve_disk(const FaceGraph& fg) {
  if (fg.faces.size() == 1) {
    FaceKey k = key_of(fg.faces[0]);
    return {{k, k[0]}};
  }

  auto edges = face_graph_edges(fg);
  std::set<std::pair<int, int>> edge_set(edges.begin(), edges.end());
  std::vector<int> deg(fg.n, 0);
  for (auto [u, w] : edges) {
    ++deg[u];
    ++deg[w];
  }
  std::vector<char> on_boundary(fg.n, 0);
  for (int v : fg.boundary) on_boundary[v] = 1;

  std::vector<int> candidates;
  for (int v = 0; v < fg.n; ++v)
    if (on_boundary[v] && biconnected_without(fg, v)) candidates.push_back(v);

  for (int v : candidates) {
    if (deg[v] == 2) {
      // Unique face at v; the rest is a smaller disk.
      std::array<int, 3> peeled{};
      std::vector<std::array<int, 3>> rest;
      for (const auto& f : fg.faces) {
        if (f[0] == v || f[1] == v || f[2] == v)
          peeled = f;
        else
          rest.push_back(f);
      }
      std::vector<int> boundary;
      for (int b : fg.boundary)
        if (b != v) boundary.push_back(b);
      FaceMap out = recurse_on(std::move(rest), std::move(boundary));
      out.emplace(key_of(peeled), v);
      return out;
    }

    // Contraction onto a boundary neighbor vp. Sound only when vp has no
    // prior edge into the fan and the fan interior stays off the boundary;
    // otherwise some fan faces would lose their image in the reduced disk.
    std::vector<int> fan = vertex_fan(fg, v);
    int bsize = static_cast<int>(fg.boundary.size());
    int at = 0;
    while (fg.boundary[at] != v) ++at;
    std::array<int, 2> sides = {fg.boundary[(at + bsize - 1) % bsize],
                                fg.boundary[(at + 1) % bsize]};
    std::sort(sides.begin(), sides.end());
    for (int vp : sides) {
      std::vector<int> w = fan;
      if (w.front() != vp) std::reverse(w.begin(), w.end());
      int k = static_cast<int>(w.size()) - 1;
      bool clean = true;
      for (int i = 2; clean && i <= k; ++i)
        clean = !edge_set.count(std::minmax(vp, w[i]));
      for (int i = 1; clean && i < k; ++i) clean = !on_boundary[w[i]];
      if (!clean) continue;

      std::vector<std::array<int, 3>> faces;
      for (const auto& f : fg.faces)
        if (f[0] != v && f[1] != v && f[2] != v) faces.push_back(f);
      for (int i = 1; i < k; ++i) faces.push_back({vp, w[i], w[i + 1]});
      std::vector<int> boundary;
      for (int b : fg.boundary)
        if (b != v) boundary.push_back(b);
      FaceMap sub = recurse_on(std::move(faces), std::move(boundary));

      FaceMap out;
      int v_load = 0;
      for (const auto& f : fg.faces) {
        if (f[0] == v || f[1] == v || f[2] == v) continue;
        out.emplace(key_of(f), sub.at(key_of(f)));
      }
      for (int i = 1; i < k; ++i) {
        int x = sub.at(key_of({vp, w[i], w[i + 1]}));
        if (x == vp) x = v;
        if (x == v) ++v_load;
        out.emplace(key_of({v, w[i], w[i + 1]}), x);
      }
      // The face on the dropped boundary edge goes to v unless v is full or
      // already holds the face across the vv'' edge.
      int f1_owner = out.at(key_of({v, w[1], w[2]}));
      out.emplace(key_of({v, vp, w[1]}),
                  v_load < 2 && f1_owner != v ? v : vp);
      return out;
    }
  }

  return search_disk(fg);
}

}  // namespace

bool is_proper(const Instance& p, const Allocation& alloc, std::string* why) {
  auto fail = [&](const std::string& msg) {
    if (why) *why = msg;
    return false;
  };
  for (int i = 0; i < p.n(); ++i)
    if (alloc.bundles[i].count() > 2)
      return fail("vertex '" + p.agents[i] + "' holds more than two faces");
  for (int i = 0; i < p.n(); ++i)
    for (int j = i + 1; j < p.n(); ++j) {
      int mine = 0, theirs = 0;
      for (int a = 0; a < p.m(); ++a) {
        const auto& f = p.faces[a];
        bool has_i = f[0] == i || f[1] == i || f[2] == i;
        bool has_j = f[0] == j || f[1] == j || f[2] == j;
        if (!has_i || !has_j) continue;
        if (alloc.bundles[i].contains(a)) ++mine;
        if (alloc.bundles[j].contains(a)) ++theirs;
      }
      if (mine > 1 || theirs > 1)
        return fail("vertices '" + p.agents[i] + "' and '" + p.agents[j] +
                    "' hold two common faces");
    }
  return true;
}

Allocation planar_faces_orientation(const Instance& p) {
  if (p.kind != InstanceKind::PlanarFaces)
    throw InputError("face orientation requires a planar-faces instance");
  validate_planar_payload(p);

  FaceGraph fg;
  fg.n = p.n();
  fg.faces = p.faces;
  fg.boundary = p.outer_boundary;
  FaceMap owners = solve_disk(fg);

  Allocation alloc;
  alloc.bundles.assign(p.n(), ItemSet(p.m()));
  alloc.unallocated = ItemSet(p.m());
  for (int a = 0; a < p.m(); ++a) {
    auto it = owners.find(key_of(p.faces[a]));
    if (it == owners.end())
      throw InternalError("a face was never assigned");
    const auto& f = p.faces[a];
    if (it->second != f[0] && it->second != f[1] && it->second != f[2])
      throw InternalError("a face landed outside its corners");
    alloc.bundles[it->second].add(a);
  }

  std::string why;
  if (!is_proper(p, alloc, &why))
    throw InternalError("face assignment is not proper: " + why);
  if (!check_orientation(p, alloc).holds)
    throw InternalError("face assignment leaves a relevant set");
  return alloc;
}

}  // namespace fairorient
