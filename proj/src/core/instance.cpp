#include "core/instance.hpp"

#include <algorithm>
#include <set>

#include "core/errors.hpp"

namespace fairorient {

std::string kind_name(InstanceKind k) {
  switch (k) {
    case InstanceKind::General: return "general";
    case InstanceKind::Graph: return "graph";
    case InstanceKind::Multigraph: return "multigraph";
    case InstanceKind::PlanarFaces: return "planar-faces";
  }
  return "?";
}

int TableFn::position_of(int item) const {
  auto it = std::lower_bound(support.begin(), support.end(), item);
  if (it == support.end() || *it != item) return -1;
  return static_cast<int>(it - support.begin());
}

uint32_t TableFn::mask_of(const ItemSet& bundle) const {
  uint32_t mask = 0;
  for (size_t p = 0; p < support.size(); ++p)
    if (bundle.contains(support[p])) mask |= 1u << p;
  return mask;
}

const Rational& TableFn::value(const ItemSet& bundle) const {
  return values[mask_of(bundle)];
}

int Instance::agent_index(const std::string& id) const {
  for (int i = 0; i < n(); ++i)
    if (agents[i] == id) return i;
  return -1;
}

int Instance::item_index(const std::string& id) const {
  for (int a = 0; a < m(); ++a)
    if (items[a] == id) return a;
  return -1;
}

Rational Instance::value_of(int agent, const ItemSet& bundle) const {
  switch (profile) {
    case ProfileKind::Table:
      return tables[agent].value(bundle);
    case ProfileKind::IdenticalTable:
      // V_i(B) = shared value of B ∩ A_i.
      return tables[0].value(bundle & relevance[agent]);
    case ProfileKind::Additive: {
      Rational sum = 0;
      const auto& w = weights[agent];
      for (int a = 0; a < m(); ++a)
        if (bundle.contains(a)) sum += w[a];
      return sum;
    }
    case ProfileKind::IdenticalAdditive: {
      Rational sum = 0;
      const auto& w = weights[0];
      const ItemSet& rel = relevance[agent];
      for (int a = 0; a < m(); ++a)
        if (bundle.contains(a) && rel.contains(a)) sum += w[a];
      return sum;
    }
  }
  return Rational(0);
}

ItemSet Instance::derived_relevance(int agent) const {
  // Graph and planar kinds: relevance is incidence, not value-derived, so a
  // zero-weight edge or face stays relevant to its endpoints.
  if (kind != InstanceKind::General) return relevance[agent];

  ItemSet out(m());
  switch (profile) {
    case ProfileKind::Additive:
      for (int a = 0; a < m(); ++a)
        if (weights[agent][a] > 0) out.add(a);
      break;
    case ProfileKind::IdenticalAdditive:
      for (int a = 0; a < m(); ++a)
        if (relevance[agent].contains(a) && weights[0][a] > 0) out.add(a);
      break;
    case ProfileKind::Table: {
      const TableFn& t = tables[agent];
      int l = static_cast<int>(t.support.size());
      for (int p = 0; p < l; ++p) {
        bool witness = false;
        for (uint32_t mask = 0; mask < (1u << l) && !witness; ++mask)
          if ((mask >> p) & 1)
            if (t.values[mask & ~(1u << p)] < t.values[mask]) witness = true;
        if (witness) out.add(t.support[p]);
      }
      break;
    }
    case ProfileKind::IdenticalTable: {
      // Witnesses are sought among subsets of the agent's own A_i.
      const TableFn& t = tables[0];
      std::vector<int> local;  // positions in the shared support within A_i
      for (size_t p = 0; p < t.support.size(); ++p)
        if (relevance[agent].contains(t.support[p]))
          local.push_back(static_cast<int>(p));
      int l = static_cast<int>(local.size());
      if (l > 24) throw LimitError("relevance check: support too large");
      for (int q = 0; q < l; ++q) {
        bool witness = false;
        for (uint32_t sub = 0; sub < (1u << l) && !witness; ++sub) {
          if (!((sub >> q) & 1)) continue;
          uint32_t mask = 0, mask_wo = 0;
          for (int r = 0; r < l; ++r)
            if ((sub >> r) & 1) {
              mask |= 1u << local[r];
              if (r != q) mask_wo |= 1u << local[r];
            }
          if (t.values[mask_wo] < t.values[mask]) witness = true;
        }
        if (witness) out.add(t.support[local[q]]);
      }
      break;
    }
  }
  return out;
}

std::optional<long> Instance::range_size(int agent, long cap) const {
  std::vector<int> rel = relevance[agent].to_vector();
  int l = static_cast<int>(rel.size());
  if (l > 24) return std::nullopt;
  std::set<Rational> seen;
  ItemSet bundle(m());
  for (uint64_t sub = 0; sub < (1ull << l); ++sub) {
    bundle = ItemSet(m());
    for (int p = 0; p < l; ++p)
      if ((sub >> p) & 1) bundle.add(rel[p]);
    seen.insert(value_of(agent, bundle));
    if (cap > 0 && static_cast<long>(seen.size()) > cap) return std::nullopt;
  }
  return static_cast<long>(seen.size());
}

namespace {

void check_table(const TableFn& t, const std::string& who) {
  int l = static_cast<int>(t.support.size());
  if (l > 20) throw InputError(who + ": table support exceeds 20 items");
  if (t.values.size() != (1u << l))
    throw InputError(who + ": table must list a value for every subset");
  if (!std::is_sorted(t.support.begin(), t.support.end()) ||
      std::adjacent_find(t.support.begin(), t.support.end()) !=
          t.support.end())
    throw InputError(who + ": table support must be distinct");
  if (t.values[0] != 0)
    throw InputError(who + ": empty bundle must have value 0");
  for (const auto& v : t.values)
    if (v < 0) throw InputError(who + ": negative table value");
  // Monotone over single removals implies monotone over set inclusion.
  for (uint32_t mask = 1; mask < (1u << l); ++mask)
    for (int p = 0; p < l; ++p)
      if ((mask >> p) & 1)
        if (t.values[mask & ~(1u << p)] > t.values[mask])
          throw InputError(who + ": table is not monotone");
}

}  // namespace

void Instance::validate(bool trust_relevance) const {
  if (agents.empty()) throw InputError("instance needs at least one agent");
  {
    std::set<std::string> ids(agents.begin(), agents.end());
    if (static_cast<int>(ids.size()) != n())
      throw InputError("duplicate agent id");
    std::set<std::string> item_ids(items.begin(), items.end());
    if (static_cast<int>(item_ids.size()) != m())
      throw InputError("duplicate item id");
  }
  if (static_cast<int>(relevance.size()) != n())
    throw InputError("relevance must cover every agent");
  for (const auto& rel : relevance)
    if (rel.universe() != m()) throw InputError("relevance set out of range");
  if (static_cast<int>(agent_list.size()) != m())
    throw InputError("agent lists must cover every item");
  for (int a = 0; a < m(); ++a) {
    if (agent_list[a].empty())
      throw InputError("item '" + items[a] + "' is relevant to no agent");
    for (int i : agent_list[a])
      if (i < 0 || i >= n() || !relevance[i].contains(a))
        throw InputError("agent list inconsistent with relevance");
  }
  for (int i = 0; i < n(); ++i)
    for (int a = 0; a < m(); ++a)
      if (relevance[i].contains(a) &&
          !std::binary_search(agent_list[a].begin(), agent_list[a].end(), i))
        throw InputError("agent list inconsistent with relevance");

  switch (profile) {
    case ProfileKind::Additive:
      if (static_cast<int>(weights.size()) != n())
        throw InputError("additive profile needs one weight row per agent");
      for (const auto& row : weights) {
        if (static_cast<int>(row.size()) != m())
          throw InputError("weight row length mismatch");
        for (const auto& w : row)
          if (w < 0) throw InputError("negative weight");
      }
      break;
    case ProfileKind::IdenticalAdditive:
      if (weights.size() != 1 || static_cast<int>(weights[0].size()) != m())
        throw InputError("identical profile needs one shared weight row");
      for (const auto& w : weights[0])
        if (w < 0) throw InputError("negative weight");
      break;
    case ProfileKind::Table:
      if (static_cast<int>(tables.size()) != n())
        throw InputError("table profile needs one table per agent");
      for (int i = 0; i < n(); ++i) {
        check_table(tables[i], "agent '" + agents[i] + "'");
        ItemSet sup(m());
        for (int a : tables[i].support) {
          if (a < 0 || a >= m()) throw InputError("table support out of range");
          sup.add(a);
        }
        if (sup != relevance[i])
          throw InputError("agent '" + agents[i] +
                           "': table support must equal the relevant set");
      }
      break;
    case ProfileKind::IdenticalTable: {
      if (tables.size() != 1)
        throw InputError("identical table profile needs one shared table");
      check_table(tables[0], "shared table");
      ItemSet sup(m());
      for (int a : tables[0].support) {
        if (a < 0 || a >= m()) throw InputError("table support out of range");
        sup.add(a);
      }
      for (int i = 0; i < n(); ++i)
        if (!relevance[i].subset_of(sup))
          throw InputError("shared table must cover every relevant set");
      break;
    }
  }

  if (kind == InstanceKind::Graph || kind == InstanceKind::Multigraph) {
    if (static_cast<int>(edges.size()) != m())
      throw InputError("edge list and item list disagree");
    std::set<std::pair<int, int>> seen;
    for (const auto& e : edges) {
      if (e.u < 0 || e.u >= n() || e.v < 0 || e.v >= n())
        throw InputError("edge endpoint out of range");
      if (e.u == e.v) throw InputError("self-loops are not allowed");
      if (e.wu < 0 || e.wv < 0) throw InputError("negative edge weight");
      auto key = std::minmax(e.u, e.v);
      if (!seen.insert({key.first, key.second}).second &&
          kind != InstanceKind::Multigraph)
        throw InputError("parallel edges need the multigraph kind");
    }
  }
  if (kind == InstanceKind::PlanarFaces) validate_planar_payload(*this);

  if (!trust_relevance && kind == InstanceKind::General) {
    for (int i = 0; i < n(); ++i)
      if (derived_relevance(i) != relevance[i])
        throw InputError(
            "agent '" + agents[i] +
            "': declared relevance disagrees with the valuation");
  }
}

Allocation Instance::empty_allocation() const {
  Allocation out;
  out.bundles.assign(n(), ItemSet(m()));
  out.unallocated = full_item_set();
  return out;
}

ItemSet Instance::full_item_set() const {
  ItemSet out(m());
  for (int a = 0; a < m(); ++a) out.add(a);
  return out;
}

namespace {

std::vector<std::vector<int>> agent_lists_from(
    const std::vector<ItemSet>& relevance, int m) {
  std::vector<std::vector<int>> out(m);
  for (size_t i = 0; i < relevance.size(); ++i)
    for (int a = 0; a < m; ++a)
      if (relevance[i].contains(a)) out[a].push_back(static_cast<int>(i));
  return out;
}

}  // namespace

Instance make_general_instance(std::vector<std::string> agents,
                               std::vector<std::string> items,
                               std::vector<std::vector<int>> relevance,
                               ProfileKind profile,
                               std::vector<std::vector<Rational>> weights,
                               std::vector<TableFn> tables,
                               bool trust_relevance) {
  Instance inst;
  inst.kind = InstanceKind::General;
  inst.agents = std::move(agents);
  inst.items = std::move(items);
  inst.profile = profile;
  inst.weights = std::move(weights);
  inst.tables = std::move(tables);
  int m = inst.m();
  inst.relevance.reserve(relevance.size());
  for (const auto& rel : relevance) {
    ItemSet s(m);
    for (int a : rel) {
      if (a < 0 || a >= m) throw InputError("relevance set out of range");
      s.add(a);
    }
    inst.relevance.push_back(s);
  }
  inst.agent_list = agent_lists_from(inst.relevance, m);
  inst.validate(trust_relevance);
  return inst;
}

Instance make_graph_instance(InstanceKind kind,
                             std::vector<std::string> vertices,
                             std::vector<GraphEdge> edges,
                             std::vector<TableFn> vertex_tables) {
  if (kind != InstanceKind::Graph && kind != InstanceKind::Multigraph)
    throw InputError("graph builder needs a graph kind");
  Instance inst;
  inst.kind = kind;
  inst.multi = kind == InstanceKind::Multigraph;
  inst.agents = std::move(vertices);
  inst.edges = std::move(edges);
  int n = inst.n();
  int m = static_cast<int>(inst.edges.size());
  inst.items.reserve(m);
  for (const auto& e : inst.edges) inst.items.push_back(e.id);
  inst.relevance.assign(n, ItemSet(m));
  for (int a = 0; a < m; ++a) {
    inst.relevance[inst.edges[a].u].add(a);
    inst.relevance[inst.edges[a].v].add(a);
  }
  inst.agent_list = agent_lists_from(inst.relevance, m);
  if (vertex_tables.empty()) {
    inst.profile = ProfileKind::Additive;
    inst.weights.assign(n, std::vector<Rational>(m, Rational(0)));
    for (int a = 0; a < m; ++a) {
      inst.weights[inst.edges[a].u][a] = inst.edges[a].wu;
      inst.weights[inst.edges[a].v][a] = inst.edges[a].wv;
    }
  } else {
    inst.profile = ProfileKind::Table;
    inst.tables = std::move(vertex_tables);
  }
  inst.validate(true);
  return inst;
}

Instance make_planar_instance(std::vector<std::string> vertices,
                              std::vector<std::array<int, 3>> faces,
                              std::vector<int> outer_boundary,
                              ProfileKind profile,
                              std::vector<std::vector<Rational>> weights,
                              std::vector<TableFn> tables) {
  Instance inst;
  inst.kind = InstanceKind::PlanarFaces;
  inst.agents = std::move(vertices);
  inst.faces = std::move(faces);
  inst.outer_boundary = std::move(outer_boundary);
  inst.profile = profile;
  inst.weights = std::move(weights);
  inst.tables = std::move(tables);
  int n = inst.n();
  int f = static_cast<int>(inst.faces.size());
  inst.items.reserve(f);
  for (int a = 0; a < f; ++a) inst.items.push_back("f" + std::to_string(a));
  inst.relevance.assign(n, ItemSet(f));
  for (int a = 0; a < f; ++a)
    for (int corner : inst.faces[a]) {
      if (corner < 0 || corner >= n)
        throw InputError("face corner out of range");
      inst.relevance[corner].add(a);
    }
  inst.agent_list = agent_lists_from(inst.relevance, f);
  inst.validate(true);
  return inst;
}

Instance restrict_instance(const Instance& inst,
                           const std::vector<int>& keep_agents,
                           const std::vector<int>& keep_items) {
  std::vector<int> item_pos(inst.m(), -1);
  for (size_t p = 0; p < keep_items.size(); ++p) item_pos[keep_items[p]] = p;

  std::vector<std::string> agents, items;
  for (int i : keep_agents) agents.push_back(inst.agents[i]);
  for (int a : keep_items) items.push_back(inst.items[a]);

  std::vector<std::vector<int>> relevance;
  for (int i : keep_agents) {
    std::vector<int> rel;
    for (int a : keep_items)
      if (inst.relevance[i].contains(a)) rel.push_back(item_pos[a]);
    relevance.push_back(rel);
  }

  auto restrict_table = [&](const TableFn& t,
                            const ItemSet* rel) -> TableFn {
    TableFn out;
    std::vector<int> old_pos;  // position in t.support per new support entry
    for (size_t p = 0; p < t.support.size(); ++p) {
      int a = t.support[p];
      if (item_pos[a] >= 0 && (!rel || rel->contains(a))) {
        out.support.push_back(item_pos[a]);
        old_pos.push_back(static_cast<int>(p));
      }
    }
    // Keep out.support sorted by new index; keep_items is ascending by old
    // index, but a table's support order must follow the new numbering.
    std::vector<size_t> order(out.support.size());
    for (size_t q = 0; q < order.size(); ++q) order[q] = q;
    std::sort(order.begin(), order.end(), [&](size_t x, size_t y) {
      return out.support[x] < out.support[y];
    });
    TableFn sorted;
    std::vector<int> old_sorted;
    for (size_t q : order) {
      sorted.support.push_back(out.support[q]);
      old_sorted.push_back(old_pos[q]);
    }
    int l = static_cast<int>(sorted.support.size());
    sorted.values.resize(1u << l);
    for (uint32_t mask = 0; mask < (1u << l); ++mask) {
      uint32_t old_mask = 0;
      for (int q = 0; q < l; ++q)
        if ((mask >> q) & 1) old_mask |= 1u << old_sorted[q];
      sorted.values[mask] = t.values[old_mask];
    }
    return sorted;
  };

  ProfileKind profile = inst.profile;
  std::vector<std::vector<Rational>> weights;
  std::vector<TableFn> tables;
  switch (inst.profile) {
    case ProfileKind::Additive:
      for (int i : keep_agents) {
        std::vector<Rational> row;
        for (int a : keep_items) row.push_back(inst.weights[i][a]);
        weights.push_back(std::move(row));
      }
      break;
    case ProfileKind::IdenticalAdditive: {
      std::vector<Rational> row;
      for (int a : keep_items) row.push_back(inst.weights[0][a]);
      weights.push_back(std::move(row));
      break;
    }
    case ProfileKind::Table:
      for (int i : keep_agents)
        tables.push_back(restrict_table(inst.tables[i], nullptr));
      break;
    case ProfileKind::IdenticalTable:
      tables.push_back(restrict_table(inst.tables[0], nullptr));
      break;
  }
  // Graph-kind profiles lower to additive or table, so the restriction is
  // always expressible as a general instance.
  return make_general_instance(std::move(agents), std::move(items),
                               std::move(relevance), profile,
                               std::move(weights), std::move(tables),
                               /*trust_relevance=*/true);
}

}  // namespace fairorient
