#include "gen/generators.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <set>
#include <utility>

#include "core/errors.hpp"
#include "gen/rng.hpp"

namespace fairorient {

namespace {

// The four clique vertices arrive as indices into the target vertex list;
// the two heavy edges pair (0,1) and (2,3), the four unit edges close the K4.
void append_gadget_edges(std::vector<GraphEdge>& edges,
                         const std::array<int, 4>& x, const Rational& b) {
  auto push = [&](int u, int v, Rational w) {
    GraphEdge e;
    e.u = u;
    e.v = v;
    e.wu = w;
    e.wv = std::move(w);
    edges.push_back(std::move(e));
  };
  push(x[0], x[1], b);
  push(x[2], x[3], b);
  push(x[0], x[2], Rational(1));
  push(x[0], x[3], Rational(1));
  push(x[1], x[2], Rational(1));
  push(x[1], x[3], Rational(1));
}

void assign_edge_ids(std::vector<GraphEdge>& edges) {
  for (size_t k = 0; k < edges.size(); ++k)
    edges[k].id = "e" + std::to_string(k);
}

void check_partition_input(const PartitionInput& in, const Rational& b) {
  if (in.s.empty()) throw InputError("partition input is empty");
  for (long long v : in.s)
    if (v <= 0) throw InputError("partition entries must be positive");
  // With a target of 2 or less the blocking gadgets admit fair orientations,
  // so the equivalence with subset-sum breaks down; refuse such inputs.
  if (!(b > Rational(2)))
    throw InputError("partition target must exceed 2 (total weight >= 5)");
  for (long long v : in.s)
    if (!(Rational(v) < b))
      throw InputError("every partition entry must be below the target");
}

}  // namespace

Rational PartitionInput::half_sum() const {
  long long total = 0;
  for (long long v : s) total += v;
  return Rational(total) / Rational(2);
}

Instance gadget_x(const Rational& b) {
  if (!(b >= Rational(3)))
    throw InputError("gadget weight must be at least 3");
  std::vector<std::string> vertices = {"X1", "X2", "X3", "X4"};
  std::vector<GraphEdge> edges;
  append_gadget_edges(edges, {0, 1, 2, 3}, b);
  assign_edge_ids(edges);
  return make_graph_instance(InstanceKind::Graph, std::move(vertices),
                             std::move(edges));
}

Instance partition_to_vc_graph(const PartitionInput& in,
                               std::vector<std::string>* cover) {
  Rational b = in.half_sum();
  check_partition_input(in, b);
  int t = static_cast<int>(in.s.size());
  std::vector<std::string> vertices;
  for (int v = 0; v < t; ++v) vertices.push_back("x" + std::to_string(v + 1));
  int vi = t, vj = t + 1;
  vertices.push_back("i");
  vertices.push_back("j");
  std::array<int, 4> g1, g2;
  for (int h = 0; h < 4; ++h) {
    g1[h] = t + 2 + h;
    vertices.push_back("X1" + std::to_string(h + 1));
  }
  for (int h = 0; h < 4; ++h) {
    g2[h] = t + 6 + h;
    vertices.push_back("X2" + std::to_string(h + 1));
  }

  std::vector<GraphEdge> edges;
  auto push = [&](int u, int v, Rational w) {
    GraphEdge e;
    e.u = u;
    e.v = v;
    e.wu = w;
    e.wv = std::move(w);
    edges.push_back(std::move(e));
  };
  for (int v = 0; v < t; ++v) {
    push(vi, v, Rational(in.s[v]));
    push(vj, v, Rational(in.s[v]));
  }
  append_gadget_edges(edges, g1, b);
  append_gadget_edges(edges, g2, b);
  push(vi, g1[0], b);
  push(vj, g2[0], b);
  assign_edge_ids(edges);

  if (cover) {
    cover->clear();
    for (int v : {vi, vj, g1[0], g1[1], g1[2], g1[3], g2[0], g2[1], g2[2],
                  g2[3]})
      cover->push_back(vertices[v]);
  }
  return make_graph_instance(InstanceKind::Graph, std::move(vertices),
                             std::move(edges));
}

Instance partition_to_multigraph(const PartitionInput& in) {
  Rational b = in.half_sum();
  check_partition_input(in, b);
  int t = static_cast<int>(in.s.size());
  std::vector<std::string> vertices = {"i", "j"};
  std::array<int, 4> g1, g2;
  for (int h = 0; h < 4; ++h) {
    g1[h] = 2 + h;
    vertices.push_back("X1" + std::to_string(h + 1));
  }
  for (int h = 0; h < 4; ++h) {
    g2[h] = 6 + h;
    vertices.push_back("X2" + std::to_string(h + 1));
  }

  std::vector<GraphEdge> edges;
  auto push = [&](int u, int v, Rational w) {
    GraphEdge e;
    e.u = u;
    e.v = v;
    e.wu = w;
    e.wv = std::move(w);
    edges.push_back(std::move(e));
  };
  for (int v = 0; v < t; ++v) push(0, 1, Rational(in.s[v]));
  append_gadget_edges(edges, g1, b);
  append_gadget_edges(edges, g2, b);
  push(0, g1[0], b);
  push(1, g2[0], b);
  assign_edge_ids(edges);
  return make_graph_instance(InstanceKind::Multigraph, std::move(vertices),
                             std::move(edges));
}

namespace {

std::vector<std::string> numbered(const std::string& prefix, int count,
                                  int first = 1) {
  std::vector<std::string> out;
  out.reserve(count);
  for (int k = 0; k < count; ++k)
    out.push_back(prefix + std::to_string(first + k));
  return out;
}

// Strictly increasing under single-item removal: each bundle beats its
// largest predecessor by a fresh positive margin.
TableFn layered_table(std::vector<int> support, SplitMix64& rng,
                      long long max_weight) {
  TableFn fn;
  fn.support = std::move(support);
  int l = static_cast<int>(fn.support.size());
  fn.values.assign(size_t{1} << l, Rational(0));
  for (uint32_t mask = 1; mask < (uint32_t{1} << l); ++mask) {
    Rational best(0);
    for (int p = 0; p < l; ++p)
      if (mask & (uint32_t{1} << p))
        best = std::max(best, fn.values[mask ^ (uint32_t{1} << p)]);
    fn.values[mask] = best + Rational(rng.range(1, max_weight));
  }
  return fn;
}

void check_common(const RandomParams& p) {
  if (p.max_weight < 1) throw InputError("max_weight must be positive");
}

Instance random_general(const RandomParams& p, SplitMix64& rng) {
  if (p.agents < 1 || p.agents > 64) throw InputError("agent count out of range");
  if (p.items < 1 || p.items > 256) throw InputError("item count out of range");
  auto agents = numbered("a", p.agents);
  auto items = numbered("g", p.items);
  int n = p.agents, m = p.items;

  if (p.profile == "additive") {
    std::vector<std::vector<Rational>> weights(n,
                                               std::vector<Rational>(m));
    std::vector<std::vector<int>> relevance(n);
    for (int a = 0; a < m; ++a) {
      std::vector<int> owners;
      for (int i = 0; i < n; ++i)
        if (rng.chance(1, 2)) owners.push_back(i);
      if (owners.empty()) owners.push_back(static_cast<int>(rng.below(n)));
      for (int i : owners) {
        weights[i][a] = Rational(rng.range(1, p.max_weight));
        relevance[i].push_back(a);
      }
    }
    return make_general_instance(agents, items, relevance,
                                 ProfileKind::Additive, weights, {});
  }
  if (p.profile == "table") {
    if (m > 16) throw InputError("table profile is capped at 16 items");
    std::vector<std::vector<int>> supports(n);
    std::vector<char> covered(m, 0);
    for (int i = 0; i < n; ++i) {
      for (int a = 0; a < m; ++a)
        if (rng.chance(1, 2)) supports[i].push_back(a);
      if (supports[i].empty())
        supports[i].push_back(static_cast<int>(rng.below(m)));
      for (int a : supports[i]) covered[a] = 1;
    }
    for (int a = 0; a < m; ++a)
      if (!covered[a]) {
        auto& sup = supports[rng.below(n)];
        sup.push_back(a);
        std::sort(sup.begin(), sup.end());
      }
    std::vector<TableFn> tables;
    tables.reserve(n);
    for (int i = 0; i < n; ++i)
      tables.push_back(layered_table(supports[i], rng, p.max_weight));
    return make_general_instance(agents, items, supports, ProfileKind::Table,
                                 {}, tables);
  }
  throw InputError("unknown valuation profile: " + p.profile);
}

Instance random_identical(const RandomParams& p, SplitMix64& rng) {
  if (p.agents < 1 || p.agents > 64) throw InputError("agent count out of range");
  if (p.items < 1 || p.items > 256) throw InputError("item count out of range");
  auto agents = numbered("a", p.agents);
  auto items = numbered("g", p.items);
  int n = p.agents, m = p.items;

  std::vector<std::vector<int>> relevance(n);
  std::vector<char> covered(m, 0);
  for (int i = 0; i < n; ++i) {
    for (int a = 0; a < m; ++a)
      if (rng.chance(1, 2)) relevance[i].push_back(a);
    if (relevance[i].empty())
      relevance[i].push_back(static_cast<int>(rng.below(m)));
    for (int a : relevance[i]) covered[a] = 1;
  }
  for (int a = 0; a < m; ++a)
    if (!covered[a]) {
      auto& rel = relevance[rng.below(n)];
      rel.push_back(a);
      std::sort(rel.begin(), rel.end());
    }

  if (p.profile == "additive") {
    std::vector<Rational> row(m);
    for (int a = 0; a < m; ++a) row[a] = Rational(rng.range(1, p.max_weight));
    return make_general_instance(agents, items, relevance,
                                 ProfileKind::IdenticalAdditive, {row}, {});
  }
  if (p.profile == "table") {
    if (m > 16) throw InputError("table profile is capped at 16 items");
    std::vector<int> support(m);
    for (int a = 0; a < m; ++a) support[a] = a;
    TableFn shared = layered_table(support, rng, p.max_weight);
    return make_general_instance(agents, items, relevance,
                                 ProfileKind::IdenticalTable, {}, {shared});
  }
  throw InputError("unknown valuation profile: " + p.profile);
}

Instance random_laminar(const RandomParams& p, SplitMix64& rng) {
  if (p.agents < 1 || p.agents > 64) throw InputError("agent count out of range");
  if (p.items < 1 || p.items > 256) throw InputError("item count out of range");
  int n = p.agents, m = p.items;

  // Recursive interval splits; any two intervals are nested or disjoint.
  std::vector<std::pair<int, int>> intervals;
  std::function<void(int, int)> split = [&](int lo, int hi) {
    intervals.emplace_back(lo, hi);
    if (hi - lo < 2) return;
    int cut = static_cast<int>(rng.range(lo + 1, hi - 1));
    split(lo, cut);
    split(cut, hi);
  };
  split(0, n);

  std::vector<std::vector<Rational>> weights(n, std::vector<Rational>(m));
  std::vector<std::vector<int>> relevance(n);
  for (int a = 0; a < m; ++a) {
    // Item 0 sits at the root so every agent has a relevant item.
    auto iv = a == 0 ? intervals[0] : intervals[rng.below(intervals.size())];
    for (int i = iv.first; i < iv.second; ++i) {
      weights[i][a] = Rational(rng.range(1, p.max_weight));
      relevance[i].push_back(a);
    }
  }
  return make_general_instance(numbered("a", n), numbered("g", m), relevance,
                               ProfileKind::Additive, weights, {});
}

Instance random_decomposable(const RandomParams& p, SplitMix64& rng) {
  if (p.groups < 1 || p.groups > 32) throw InputError("group count out of range");
  if (p.items < p.groups) throw InputError("need at least one item per group");
  if (p.items > 256) throw InputError("item count out of range");

  // Agent sets chained so consecutive groups share at most one agent and
  // non-adjacent ones are disjoint.
  std::vector<std::vector<int>> gsets(p.groups);
  int next_agent = 0;
  for (int k = 0; k < p.groups; ++k) {
    if (k > 0 && rng.chance(1, 2)) gsets[k].push_back(gsets[k - 1].back());
    int size = static_cast<int>(rng.range(2, 3));
    while (static_cast<int>(gsets[k].size()) < size)
      gsets[k].push_back(next_agent++);
  }
  int n = next_agent, m = p.items;

  std::vector<std::vector<Rational>> weights(n, std::vector<Rational>(m));
  std::vector<std::vector<int>> relevance(n);
  for (int a = 0; a < m; ++a) {
    int k = a < p.groups ? a : static_cast<int>(rng.below(p.groups));
    for (int i : gsets[k]) {
      weights[i][a] = Rational(rng.range(1, p.max_weight));
      relevance[i].push_back(a);
    }
  }
  for (auto& rel : relevance) std::sort(rel.begin(), rel.end());
  return make_general_instance(numbered("a", n), numbered("g", m), relevance,
                               ProfileKind::Additive, weights, {});
}

Instance random_graph(const RandomParams& p, SplitMix64& rng) {
  int nv = p.vertices, ne = p.edges;
  if (nv < 2 || nv > 64) throw InputError("vertex count out of range");
  if (ne < nv - 1) throw InputError("edge count below a spanning tree");
  long long simple_cap = static_cast<long long>(nv) * (nv - 1) / 2;
  if (!p.multigraph && ne > simple_cap)
    throw InputError("edge count exceeds the simple-graph maximum");
  if (ne > 4096) throw InputError("edge count out of range");

  std::vector<std::pair<int, int>> pairs;
  std::set<std::pair<int, int>> seen;
  for (int v = 1; v < nv; ++v) {
    int u = static_cast<int>(rng.below(v));
    pairs.emplace_back(u, v);
    seen.insert({u, v});
  }
  while (static_cast<int>(pairs.size()) < ne) {
    int u = static_cast<int>(rng.below(nv));
    int w = static_cast<int>(rng.below(nv));
    if (u == w) continue;
    if (u > w) std::swap(u, w);
    if (!p.multigraph && seen.count({u, w})) continue;
    pairs.emplace_back(u, w);
    seen.insert({u, w});
  }

  std::vector<GraphEdge> edges;
  edges.reserve(pairs.size());
  for (auto [u, w] : pairs) {
    GraphEdge e;
    e.u = u;
    e.v = w;
    e.wu = Rational(rng.range(1, p.max_weight));
    e.wv = e.wu;
    edges.push_back(std::move(e));
  }
  assign_edge_ids(edges);
  return make_graph_instance(
      p.multigraph ? InstanceKind::Multigraph : InstanceKind::Graph,
      numbered("v", nv, 0), std::move(edges));
}

Instance random_planar(const RandomParams& p, SplitMix64& rng) {
  int nv = p.vertices;
  if (nv < 3 || nv > 16) throw InputError("vertex count out of range");

  std::vector<std::array<int, 3>> faces;
  std::function<void(const std::vector<int>&)> tri =
      [&](const std::vector<int>& poly) {
        int r = static_cast<int>(poly.size());
        if (r < 3) return;
        if (r == 3) {
          faces.push_back({poly[0], poly[1], poly[2]});
          return;
        }
        int k = static_cast<int>(rng.range(1, r - 2));
        faces.push_back({poly[0], poly[k], poly[r - 1]});
        tri(std::vector<int>(poly.begin(), poly.begin() + k + 1));
        tri(std::vector<int>(poly.begin() + k, poly.end()));
      };
  std::vector<int> boundary(nv);
  for (int v = 0; v < nv; ++v) boundary[v] = v;
  tri(boundary);

  int f = static_cast<int>(faces.size());
  std::vector<std::vector<Rational>> weights(nv, std::vector<Rational>(f));
  for (int a = 0; a < f; ++a)
    for (int corner : faces[a])
      weights[corner][a] = Rational(rng.range(1, p.max_weight));
  return make_planar_instance(numbered("v", nv, 0), std::move(faces),
                              boundary, ProfileKind::Additive,
                              std::move(weights), {});
}

}  // namespace

Instance random_instance(const std::string& kind, const RandomParams& params,
                         std::uint64_t seed) {
  check_common(params);
  SplitMix64 rng(seed);
  if (kind == "general") return random_general(params, rng);
  if (kind == "graph") return random_graph(params, rng);
  if (kind == "identical") return random_identical(params, rng);
  if (kind == "laminar") return random_laminar(params, rng);
  if (kind == "decomposable") return random_decomposable(params, rng);
  if (kind == "planar") return random_planar(params, rng);
  throw InputError("unknown instance kind: " + kind);
}

}  // namespace fairorient
