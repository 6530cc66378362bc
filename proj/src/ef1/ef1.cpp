#include "ef1/ef1.hpp"

#include <algorithm>
#include <cstdlib>
#include <deque>
#include <functional>

#include "core/errors.hpp"

namespace fairorient {

namespace {

struct SolverState {
  const Instance& inst;
  std::vector<ItemSet> bundles;
  std::vector<Rational> own;
  EnvyGraph envy;
  std::deque<int> pool;
  ItemSet pool_set;
  std::vector<TraceEvent> trace;
  int cycle_shifts = 0;
  int pool_returns = 0;
  bool debug = false;

  explicit SolverState(const Instance& i)
      : inst(i),
        bundles(i.n(), ItemSet(i.m())),
        own(i.n(), Rational(0)),
        pool_set(i.m()) {
    envy.n = i.n();
    envy.arc.assign(i.n(), std::vector<char>(i.n(), 0));
    debug = std::getenv("FAIR_ORIENT_LOG") != nullptr;
  }
};

// Only arcs touching `target` can change when its bundle or value moved.
void refresh_agent_arcs(SolverState& st, int target) {
  int n = st.inst.n();
  for (int j = 0; j < n; ++j) {
    if (j == target) continue;
    st.envy.arc[j][target] =
        st.inst.value_of(j, st.bundles[target]) > st.own[j] ? 1 : 0;
    st.envy.arc[target][j] =
        st.inst.value_of(target, st.bundles[j]) > st.own[target] ? 1 : 0;
  }
}

void refresh_all_arcs(SolverState& st) {
  int n = st.inst.n();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      st.envy.arc[i][j] =
          i != j && st.inst.value_of(i, st.bundles[j]) > st.own[i] ? 1 : 0;
}

void debug_check(SolverState& st) {
  if (!st.debug) return;
  Allocation partial{st.bundles, st.pool_set};
  EnvyGraph fresh = envy_graph(st.inst, partial);
  for (int i = 0; i < st.envy.n; ++i)
    for (int j = 0; j < st.envy.n; ++j)
      if (fresh.arc[i][j] != st.envy.arc[i][j])
        throw InternalError("incremental envy graph diverged from recompute");
  if (!check_orientation(st.inst, partial).holds)
    throw InternalError("partial allocation left the relevant sets");
  if (!check_ef1(st.inst, partial).holds)
    throw InternalError("partial allocation lost the EF1 property");
}

// First cycle reached by depth-first search from the lowest-index agent,
// reported so that each listed agent envies its successor (cyclically).
std::optional<std::vector<int>> find_cycle(const EnvyGraph& g) {
  int n = g.n;
  std::vector<int> color(n, 0), stack;
  std::optional<std::vector<int>> found;

  std::function<bool(int)> dfs = [&](int v) {
    color[v] = 1;
    stack.push_back(v);
    for (int w = 0; w < n; ++w) {
      if (!g.arc[v][w]) continue;
      if (color[w] == 1) {
        auto it = std::find(stack.begin(), stack.end(), w);
        found = std::vector<int>(it, stack.end());
        return true;
      }
      if (color[w] == 0 && dfs(w)) return true;
    }
    color[v] = 2;
    stack.pop_back();
    return false;
  };

  for (int v = 0; v < n && !found; ++v)
    if (color[v] == 0) dfs(v);
  return found;
}

void snapshot_potential(SolverState& st, TraceEvent& ev) {
  ev.potential = st.own;
}

void eliminate_cycles(SolverState& st, bool forbid_cycles) {
  for (;;) {
    auto cycle = find_cycle(st.envy);
    if (!cycle) return;
    if (forbid_cycles)
      throw InternalError("envy cycle appeared where none can exist");

    int len = static_cast<int>(cycle->size());
    std::vector<ItemSet> moved;
    moved.reserve(len);
    for (int j = 0; j < len; ++j) moved.push_back(st.bundles[(*cycle)[j]]);

    TraceEvent ev;
    ev.kind = TraceEvent::Kind::CycleShift;
    ev.cycle = *cycle;
    for (int j = 0; j < len; ++j) {
      int agent = (*cycle)[j];
      const ItemSet& inherited = moved[(j + 1) % len];
      ItemSet kept = inherited & st.inst.relevance[agent];
      ItemSet dropped = inherited - kept;
      Rational before = st.own[agent];
      st.bundles[agent] = kept;
      st.own[agent] = st.inst.value_of(agent, kept);
      if (!(st.own[agent] > before))
        throw InternalError("cycle shift failed to raise an on-cycle value");
      for (int a : dropped.to_vector()) {
        st.pool.push_back(a);
        st.pool_set.add(a);
        ev.returned.push_back(a);
        ++st.pool_returns;
      }
    }
    ++st.cycle_shifts;
    refresh_all_arcs(st);
    snapshot_potential(st, ev);
    st.trace.push_back(std::move(ev));
    debug_check(st);
  }
}

std::deque<int> initial_pool(const Instance& inst, const Ef1Policy& policy) {
  int m = inst.m();
  std::vector<int> order;
  switch (policy.item_order) {
    case ItemOrder::Declaration:
      order.resize(m);
      for (int a = 0; a < m; ++a) order[a] = a;
      break;
    case ItemOrder::Laminar: {
      LaminarOrder lo = laminar_order(inst);
      if (!lo.laminar)
        throw InputError("agent lists are not laminar: items " +
                         inst.items[lo.witness.first] + " and " +
                         inst.items[lo.witness.second] + " overlap sideways");
      order = lo.order;
      break;
    }
    case ItemOrder::Custom: {
      order = policy.custom_order;
      if (static_cast<int>(order.size()) != m)
        throw InputError("custom order must list every item exactly once");
      std::vector<char> seen(m, 0);
      for (int a : order) {
        if (a < 0 || a >= m || seen[a])
          throw InputError("custom order must list every item exactly once");
        seen[a] = 1;
      }
      break;
    }
  }
  return std::deque<int>(order.begin(), order.end());
}

unsigned long long iteration_guard(const Instance& inst) {
  int max_rel = 0;
  for (int i = 0; i < inst.n(); ++i)
    max_rel = std::max(max_rel, inst.relevance[i].count());
  int exp = std::min(max_rel, 24);
  unsigned long long budget = 4ULL * std::max(1, inst.n()) *
                              std::max(1, inst.m());
  return budget << exp;
}

Ef1Result run_solver(const Instance& inst, const Ef1Policy& policy) {
  SolverState st(inst);
  st.pool = initial_pool(inst, policy);
  for (int a : st.pool) st.pool_set.add(a);

  unsigned long long guard = iteration_guard(inst);
  unsigned long long steps = 0;
  while (!st.pool.empty()) {
    if (++steps > guard)
      throw InternalError("iteration guard exceeded; termination bug");
    int a = st.pool.front();
    st.pool.pop_front();
    st.pool_set.remove(a);

    int receiver = pick_source(st.envy, inst.agent_list[a]);
    st.bundles[receiver].add(a);
    st.own[receiver] = inst.value_of(receiver, st.bundles[receiver]);
    refresh_agent_arcs(st, receiver);

    TraceEvent ev;
    ev.kind = TraceEvent::Kind::Assign;
    ev.item = a;
    ev.agent = receiver;
    snapshot_potential(st, ev);
    st.trace.push_back(std::move(ev));
    debug_check(st);

    eliminate_cycles(st, policy.forbid_cycles);
  }

  Ef1Result out;
  out.alloc.bundles = std::move(st.bundles);
  out.alloc.unallocated = ItemSet(inst.m());
  out.trace = std::move(st.trace);
  out.cycle_shifts = st.cycle_shifts;
  out.pool_returns = st.pool_returns;
  return out;
}

}  // namespace

Ef1Result solve_ef1(const Instance& inst, const Ef1Policy& policy) {
  return run_solver(inst, policy);
}

Ef1Result solve_ef1_identical(const Instance& inst) {
  if (inst.profile != ProfileKind::IdenticalAdditive &&
      inst.profile != ProfileKind::IdenticalTable)
    throw InputError("identical-valuations solver needs an identical profile");
  Ef1Policy policy;
  policy.forbid_cycles = true;
  return run_solver(inst, policy);
}

int pick_source(const EnvyGraph& g, const std::vector<int>& candidates) {
  for (int i : candidates) {
    bool clean = true;
    for (int j : candidates)
      if (j != i && g.arc[j][i]) {
        clean = false;
        break;
      }
    if (clean) return i;
  }
  throw InternalError("no source in the induced envy graph");
}

LaminarOrder laminar_order(const Instance& inst) {
  LaminarOrder out;
  int m = inst.m();
  out.order.resize(m);
  for (int a = 0; a < m; ++a) out.order[a] = a;
  std::stable_sort(out.order.begin(), out.order.end(), [&](int x, int y) {
    return inst.agent_list[x].size() > inst.agent_list[y].size();
  });

  for (int j = 0; j < m; ++j)
    for (int k = j + 1; k < m; ++k) {
      const auto& big = inst.agent_list[out.order[j]];
      const auto& small = inst.agent_list[out.order[k]];
      std::vector<int> common;
      std::set_intersection(big.begin(), big.end(), small.begin(),
                            small.end(), std::back_inserter(common));
      if (common.empty() || common.size() == small.size()) continue;
      out.witness = {out.order[j], out.order[k]};
      out.order.clear();
      return out;
    }
  out.laminar = true;
  return out;
}

Json trace_to_json(const Instance& inst,
                   const std::vector<TraceEvent>& trace) {
  Json out = Json::array();
  for (const auto& ev : trace) {
    Json e;
    if (ev.kind == TraceEvent::Kind::Assign) {
      e["event"] = "assign";
      e["item"] = inst.items[ev.item];
      e["agent"] = inst.agents[ev.agent];
    } else {
      e["event"] = "cycle-shift";
      Json cyc = Json::array();
      for (int i : ev.cycle) cyc.push_back(inst.agents[i]);
      e["cycle"] = std::move(cyc);
      Json ret = Json::array();
      for (int a : ev.returned) ret.push_back(inst.items[a]);
      e["returned"] = std::move(ret);
    }
    Json pot = Json::array();
    for (const auto& v : ev.potential) pot.push_back(format_rational(v));
    e["potential"] = std::move(pot);
    out.push_back(std::move(e));
  }
  return out;
}

}  // namespace fairorient
