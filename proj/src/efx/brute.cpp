#include "efx/brute.hpp"

#include <algorithm>
#include <array>
#include <map>
#include <set>
#include <tuple>

#include <boost/multiprecision/cpp_int.hpp>

#include "core/errors.hpp"

namespace fairorient {

namespace {

using boost::multiprecision::cpp_int;

void require_graph(const Instance& g) {
  if (g.kind != InstanceKind::Graph && g.kind != InstanceKind::Multigraph)
    throw InputError("orientation search needs a graph instance");
}

// Edge search order: vertices ranked by heaviest incident edge (then lower
// degree, then declaration), each vertex contributing its not-yet-listed
// incident edges heaviest first. Structural blockers come early this way and
// their forced sub-orientations prune long before the wide tail.
std::vector<int> search_order(const Instance& g) {
  int n = g.n(), m = g.m();
  std::vector<Rational> edge_key(m);
  for (int e = 0; e < m; ++e)
    edge_key[e] = std::max(g.edges[e].wu, g.edges[e].wv);

  std::vector<std::vector<int>> incident(n);
  for (int e = 0; e < m; ++e) {
    incident[g.edges[e].u].push_back(e);
    incident[g.edges[e].v].push_back(e);
  }
  std::vector<Rational> vertex_key(n, Rational(0));
  for (int v = 0; v < n; ++v)
    for (int e : incident[v]) vertex_key[v] = std::max(vertex_key[v], edge_key[e]);

  std::vector<int> verts(n);
  for (int v = 0; v < n; ++v) verts[v] = v;
  std::sort(verts.begin(), verts.end(), [&](int a, int b) {
    if (vertex_key[a] != vertex_key[b]) return vertex_key[a] > vertex_key[b];
    if (incident[a].size() != incident[b].size())
      return incident[a].size() < incident[b].size();
    return a < b;
  });

  std::vector<int> order;
  order.reserve(m);
  std::vector<char> listed(m, 0);
  for (int v : verts) {
    std::vector<int> group;
    for (int e : incident[v])
      if (!listed[e]) {
        listed[e] = 1;
        group.push_back(e);
      }
    std::sort(group.begin(), group.end(), [&](int a, int b) {
      if (edge_key[a] != edge_key[b]) return edge_key[a] > edge_key[b];
      return a < b;
    });
    order.insert(order.end(), group.begin(), group.end());
  }
  return order;
}

// Both engines walk the same tree; Num is either long long (values scaled to
// a common denominator) or Rational.
template <typename Num>
struct Engine {
  const Instance& g;
  bool prune;
  int m, n;
  std::vector<int> order;
  std::vector<std::array<Num, 2>> val;  // [e][0] -> value to u, [1] -> to v

  struct PairView {
    int envier = 0, envied = 0;
    std::vector<std::pair<int, Num>> shared;  // edge, value to the envier
  };
  std::vector<PairView> pairs;
  std::vector<std::vector<int>> pairs_by_envier, pairs_by_envied;

  std::vector<int> side;  // -1 undecided
  std::vector<Num> own, undecided;
  std::vector<int> bundle_size;

  bool counting = false;
  long long count = 0;
  std::optional<std::vector<int>> witness;
  SearchStats stats;

  Engine(const Instance& gr, std::vector<std::array<Num, 2>> values,
         bool do_prune)
      : g(gr),
        prune(do_prune),
        m(gr.m()),
        n(gr.n()),
        order(search_order(gr)),
        val(std::move(values)),
        side(m, -1),
        own(n, Num(0)),
        undecided(n, Num(0)),
        bundle_size(n, 0) {
    std::map<std::pair<int, int>, int> index;
    for (int e = 0; e < m; ++e) {
      int u = g.edges[e].u, v = g.edges[e].v;
      undecided[u] += val[e][0];
      undecided[v] += val[e][1];
      for (auto [a, b, value_side] :
           {std::tuple<int, int, int>{u, v, 0}, {v, u, 1}}) {
        auto key = std::make_pair(a, b);
        auto it = index.find(key);
        if (it == index.end()) {
          it = index.emplace(key, static_cast<int>(pairs.size())).first;
          pairs.push_back({a, b, {}});
        }
        pairs[it->second].shared.emplace_back(e, val[e][value_side]);
      }
    }
    pairs_by_envier.assign(n, {});
    pairs_by_envied.assign(n, {});
    for (int p = 0; p < static_cast<int>(pairs.size()); ++p) {
      pairs_by_envier[pairs[p].envier].push_back(p);
      pairs_by_envied[pairs[p].envied].push_back(p);
    }
  }

  // True when the pair can no longer end fair: the smallest leftover the
  // envier is guaranteed to face in w's bundle beats everything the envier
  // can still gather. With no undecided edges left this is the exact
  // remove-any-single-item test.
  bool pair_hopeless(const PairView& p) const {
    Num sh(0);
    int cnt = 0;
    bool have_min = false;
    Num min_shared(0);
    for (const auto& [e, value] : p.shared) {
      bool to_envied = side[e] >= 0 && (g.edges[e].u == p.envied
                                            ? side[e] == 0
                                            : side[e] == 1);
      if (!to_envied) continue;
      sh += value;
      ++cnt;
      if (!have_min || value < min_shared) {
        min_shared = value;
        have_min = true;
      }
    }
    Num reach = own[p.envier] + undecided[p.envier];
    if (!(sh > reach)) return false;
    int outside = bundle_size[p.envied] - cnt;
    if (outside >= 1) return true;
    return sh - min_shared > reach;
  }

  bool decide(int e, int s) {
    side[e] = s;
    int receiver = s == 0 ? g.edges[e].u : g.edges[e].v;
    int loser = s == 0 ? g.edges[e].v : g.edges[e].u;
    own[receiver] += val[e][s];
    ++bundle_size[receiver];
    undecided[g.edges[e].u] -= val[e][0];
    undecided[g.edges[e].v] -= val[e][1];
    if (!prune) return true;
    for (int p : pairs_by_envied[receiver])
      if (pair_hopeless(pairs[p])) return false;
    for (int p : pairs_by_envier[loser])
      if (pair_hopeless(pairs[p])) return false;
    return true;
  }

  void undo(int e, int s) {
    int receiver = s == 0 ? g.edges[e].u : g.edges[e].v;
    own[receiver] -= val[e][s];
    --bundle_size[receiver];
    undecided[g.edges[e].u] += val[e][0];
    undecided[g.edges[e].v] += val[e][1];
    side[e] = -1;
  }

  bool leaf_fair() const {
    for (const auto& p : pairs)
      if (pair_hopeless(p)) return false;
    return true;
  }

  // Returns true to stop the whole search (witness mode success).
  bool dfs(size_t depth) {
    ++stats.nodes;
    if (depth == order.size()) {
      ++stats.leaves;
      if (!prune && !leaf_fair()) return false;
      if (counting) {
        ++count;
        return false;
      }
      witness = side;
      return true;
    }
    int e = order[depth];
    for (int s : {0, 1}) {
      bool viable = decide(e, s);
      if (viable) {
        if (dfs(depth + 1)) {
          undo(e, s);
          return true;
        }
      } else {
        ++stats.pruned;
      }
      undo(e, s);
    }
    return false;
  }
};

std::optional<std::vector<std::array<long long, 2>>> scale_to_int(
    const Instance& g) {
  cpp_int common(1);
  for (const auto& e : g.edges) {
    common = boost::multiprecision::lcm(common, denominator(e.wu));
    common = boost::multiprecision::lcm(common, denominator(e.wv));
    if (common > cpp_int(1) << 31) return std::nullopt;
  }
  cpp_int total = 0;
  std::vector<std::array<long long, 2>> out(g.m());
  for (int e = 0; e < g.m(); ++e) {
    for (int s = 0; s < 2; ++s) {
      const Rational& r = s == 0 ? g.edges[e].wu : g.edges[e].wv;
      cpp_int scaled = numerator(r) * (common / denominator(r));
      total += scaled;
      if (total > cpp_int(1) << 60) return std::nullopt;
      out[e][s] = scaled.convert_to<long long>();
    }
  }
  return out;
}

std::vector<std::array<Rational, 2>> rational_values(const Instance& g) {
  std::vector<std::array<Rational, 2>> out(g.m());
  for (int e = 0; e < g.m(); ++e)
    out[e] = {g.edges[e].wu, g.edges[e].wv};
  return out;
}

// Same search for graph instances whose vertices valuate through monotone
// table oracles; bounds come from value queries instead of running sums.
struct TableEngine {
  const Instance& g;
  bool prune;
  int m, n;
  std::vector<int> order;
  std::vector<ItemSet> bundles;
  std::vector<ItemSet> undecided_mask;
  std::vector<int> side;
  std::vector<std::pair<int, int>> adjacent;  // ordered vertex pairs
  std::vector<std::vector<int>> pairs_by_envier, pairs_by_envied;

  bool counting = false;
  long long count = 0;
  std::optional<std::vector<int>> witness;
  SearchStats stats;

  TableEngine(const Instance& gr, bool do_prune)
      : g(gr),
        prune(do_prune),
        m(gr.m()),
        n(gr.n()),
        order(search_order(gr)),
        bundles(gr.n(), ItemSet(gr.m())),
        undecided_mask(gr.n(), ItemSet(gr.m())),
        side(gr.m(), -1) {
    std::set<std::pair<int, int>> seen;
    for (const auto& e : g.edges) {
      undecided_mask[e.u].add(static_cast<int>(&e - g.edges.data()));
      undecided_mask[e.v].add(static_cast<int>(&e - g.edges.data()));
      seen.insert({e.u, e.v});
      seen.insert({e.v, e.u});
    }
    pairs_by_envier.assign(n, {});
    pairs_by_envied.assign(n, {});
    for (auto [a, b] : seen) {
      int p = static_cast<int>(adjacent.size());
      adjacent.emplace_back(a, b);
      pairs_by_envier[a].push_back(p);
      pairs_by_envied[b].push_back(p);
    }
  }

  bool pair_hopeless(int pid) const {
    auto [u, w] = adjacent[pid];
    const ItemSet& pw = bundles[w];
    ItemSet shared = pw & g.relevance[u];
    Rational reach = g.value_of(u, bundles[u] | undecided_mask[u]);
    Rational worst = Rational(-1);
    if (pw.count() > shared.count()) {
      worst = g.value_of(u, pw);
    } else {
      for (int x : shared.to_vector()) {
        ItemSet rest = pw;
        rest.remove(x);
        worst = std::max(worst, g.value_of(u, rest));
      }
    }
    return worst > reach;
  }

  bool decide(int e, int s) {
    side[e] = s;
    int receiver = s == 0 ? g.edges[e].u : g.edges[e].v;
    int loser = s == 0 ? g.edges[e].v : g.edges[e].u;
    bundles[receiver].add(e);
    undecided_mask[g.edges[e].u].remove(e);
    undecided_mask[g.edges[e].v].remove(e);
    if (!prune) return true;
    for (int p : pairs_by_envied[receiver])
      if (pair_hopeless(p)) return false;
    for (int p : pairs_by_envier[loser])
      if (pair_hopeless(p)) return false;
    return true;
  }

  void undo(int e, int s) {
    int receiver = s == 0 ? g.edges[e].u : g.edges[e].v;
    bundles[receiver].remove(e);
    undecided_mask[g.edges[e].u].add(e);
    undecided_mask[g.edges[e].v].add(e);
    side[e] = -1;
  }

  bool leaf_fair() const {
    for (int p = 0; p < static_cast<int>(adjacent.size()); ++p)
      if (pair_hopeless(p)) return false;
    return true;
  }

  bool dfs(size_t depth) {
    ++stats.nodes;
    if (depth == order.size()) {
      ++stats.leaves;
      if (!prune && !leaf_fair()) return false;
      if (counting) {
        ++count;
        return false;
      }
      witness = side;
      return true;
    }
    int e = order[depth];
    for (int s : {0, 1}) {
      bool viable = decide(e, s);
      if (viable) {
        if (dfs(depth + 1)) {
          undo(e, s);
          return true;
        }
      } else {
        ++stats.pruned;
      }
      undo(e, s);
    }
    return false;
  }
};

struct SearchOutcome {
  std::optional<std::vector<int>> witness;
  long long count = 0;
  SearchStats stats;
};

SearchOutcome run_search(const Instance& g, const BruteOptions& opt,
                         bool counting) {
  require_graph(g);
  if (g.m() > opt.edge_cap)
    throw LimitError("edge count exceeds the orientation search cap");

  SearchOutcome out;
  if (g.profile == ProfileKind::Additive) {
    if (auto ints = scale_to_int(g)) {
      Engine<long long> eng(g, std::move(*ints), opt.prune);
      eng.counting = counting;
      eng.dfs(0);
      out = {std::move(eng.witness), eng.count, eng.stats};
    } else {
      Engine<Rational> eng(g, rational_values(g), opt.prune);
      eng.counting = counting;
      eng.dfs(0);
      out = {std::move(eng.witness), eng.count, eng.stats};
    }
  } else {
    TableEngine eng(g, opt.prune);
    eng.counting = counting;
    eng.dfs(0);
    out = {std::move(eng.witness), eng.count, eng.stats};
  }
  return out;
}

}  // namespace

Allocation orientation_to_allocation(const Instance& g,
                                     const OrientationVector& ov) {
  require_graph(g);
  if (static_cast<int>(ov.side.size()) != g.m())
    throw InputError("orientation vector length mismatch");
  Allocation alloc;
  alloc.bundles.assign(g.n(), ItemSet(g.m()));
  alloc.unallocated = ItemSet(g.m());
  for (int e = 0; e < g.m(); ++e) {
    if (ov.side[e] != 0 && ov.side[e] != 1)
      throw InputError("orientation vector entries must be 0 or 1");
    alloc.bundles[ov.side[e] == 0 ? g.edges[e].u : g.edges[e].v].add(e);
  }
  return alloc;
}

std::optional<OrientationVector> brute_force_efx_orientation(
    const Instance& g, const BruteOptions& opt, SearchStats* stats) {
  SearchOutcome out = run_search(g, opt, false);
  if (stats) *stats = out.stats;
  if (!out.witness) return std::nullopt;
  return OrientationVector{std::move(*out.witness)};
}

long long count_efx_orientations(const Instance& g, const BruteOptions& opt,
                                 SearchStats* stats) {
  SearchOutcome out = run_search(g, opt, true);
  if (stats) *stats = out.stats;
  return out.count;
}

std::optional<Allocation> brute_force_efx_allocation(const Instance& inst) {
  int n = inst.n(), m = inst.m();
  // Two agents enumerate cheaply, so the item cap doubles there; that regime
  // serves the per-edge-class splits of the multigraph solver.
  if (!((n <= 4 && m <= 10) || (n == 2 && m <= 20)))
    throw LimitError("allocation search capped at 4 agents and 10 items");

  std::vector<int> owner(m, 0);
  std::vector<ItemSet> bundles(n, ItemSet(m));
  std::vector<Rational> own(n, Rational(0));

  auto fair = [&]() {
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        if (i == j) continue;
        if (!(inst.value_of(i, bundles[j]) > own[i])) continue;
        for (int x : bundles[j].to_vector()) {
          ItemSet rest = bundles[j];
          rest.remove(x);
          if (inst.value_of(i, rest) > own[i]) return false;
        }
      }
    return true;
  };

  // Odometer over owners, least significant item first.
  for (int a = 0; a < m; ++a) bundles[0].add(a);
  own[0] = inst.value_of(0, bundles[0]);
  for (;;) {
    if (fair()) {
      Allocation alloc;
      alloc.bundles = bundles;
      alloc.unallocated = ItemSet(m);
      return alloc;
    }
    int a = 0;
    while (a < m) {
      int from = owner[a];
      bundles[from].remove(a);
      own[from] = inst.value_of(from, bundles[from]);
      owner[a] = (owner[a] + 1) % n;
      int to = owner[a];
      bundles[to].add(a);
      own[to] = inst.value_of(to, bundles[to]);
      if (owner[a] != 0) break;
      ++a;
    }
    if (a == m) break;
  }
  return std::nullopt;
}

}  // namespace fairorient
