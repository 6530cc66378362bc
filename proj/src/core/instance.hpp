#pragma once

#include <array>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "core/itemset.hpp"
#include "core/rational.hpp"

namespace fairorient {

enum class InstanceKind { General, Graph, Multigraph, PlanarFaces };
enum class ProfileKind { Additive, Table, IdenticalAdditive, IdenticalTable };

std::string kind_name(InstanceKind k);

// Explicit bundle->value map over a small support of item indices. Every
// subset must be present; values are indexed by a bitmask over positions in
// `support` (which is sorted ascending by item index).
struct TableFn {
  std::vector<int> support;
  std::vector<Rational> values;  // size 1 << support.size()

  int position_of(int item) const;  // -1 when item not in support
  // Value of an arbitrary item set: the table value of bundle ∩ support.
  const Rational& value(const ItemSet& bundle) const;
  const Rational& value_mask(uint32_t mask) const { return values[mask]; }
  uint32_t mask_of(const ItemSet& bundle) const;
};

struct GraphEdge {
  int u = 0, v = 0;
  std::string id;
  Rational wu, wv;  // value of the edge-item to each endpoint
};

struct Allocation {
  std::vector<ItemSet> bundles;  // per agent
  ItemSet unallocated;
};

// One data model backs all four instance kinds. Graph kinds keep their edge
// list and planar kinds their face list, and both lower to agents/items/
// relevance/valuations at construction so the oracles and verifiers are
// uniform.
class Instance {
 public:
  InstanceKind kind = InstanceKind::General;
  std::vector<std::string> agents;
  std::vector<std::string> items;
  std::vector<ItemSet> relevance;            // A_i per agent
  std::vector<std::vector<int>> agent_list;  // N_a per item, ascending

  ProfileKind profile = ProfileKind::Additive;
  // Additive: weights[i][a]. IdenticalAdditive: weights[0][a] shared.
  std::vector<std::vector<Rational>> weights;
  // Table: tables[i]. IdenticalTable: tables[0] shared over the union support.
  std::vector<TableFn> tables;

  // Graph payload (kind Graph / Multigraph): agents are vertices, items are
  // edges in declaration order.
  std::vector<GraphEdge> edges;
  bool multi = false;

  // Planar payload (kind PlanarFaces): items are inner faces.
  std::vector<std::array<int, 3>> faces;   // vertex indices, one per face
  std::vector<int> outer_boundary;         // vertex cycle

  int n() const { return static_cast<int>(agents.size()); }
  int m() const { return static_cast<int>(items.size()); }

  int agent_index(const std::string& id) const;  // -1 when unknown
  int item_index(const std::string& id) const;

  Rational value_of(int agent, const ItemSet& bundle) const;

  // Relevance derived from the valuation alone (positive weight for additive
  // profiles, existence of a bundle whose value drops on removal for tables).
  // Graph and planar kinds are structural: incidence decides.
  ItemSet derived_relevance(int agent) const;

  // Distinct values the agent's valuation attains over subsets of A_i.
  // nullopt when the count exceeds `cap` (cap <= 0 means unlimited) or A_i is
  // too large to enumerate.
  std::optional<long> range_size(int agent, long cap = 0) const;

  bool value_monotone_supported() const { return true; }

  // Throws InputError on any inconsistency. `trust_relevance` skips the
  // declared-vs-derived cross-check (used for internally built restrictions
  // whose tables may lose their witnesses outside the kept item set).
  void validate(bool trust_relevance = false) const;

  Allocation empty_allocation() const;
  ItemSet full_item_set() const;
};

// Structural checks for the planar-faces payload: triangulated inner faces,
// a simple outer boundary whose edges each lie on exactly one inner face,
// interior edges on exactly two, Euler count, 2-connectivity, and a coherent
// face fan around every vertex. Throws InputError.
void validate_planar_payload(const Instance& inst);

// Builders; each lowers to the uniform model and validates.
Instance make_general_instance(std::vector<std::string> agents,
                               std::vector<std::string> items,
                               std::vector<std::vector<int>> relevance,
                               ProfileKind profile,
                               std::vector<std::vector<Rational>> weights,
                               std::vector<TableFn> tables,
                               bool trust_relevance = false);

// vertex_tables empty means valuations come from edge weights; otherwise one
// table per vertex over its incident edge indices (monotone vertex oracles).
Instance make_graph_instance(InstanceKind kind,
                             std::vector<std::string> vertices,
                             std::vector<GraphEdge> edges,
                             std::vector<TableFn> vertex_tables = {});

Instance make_planar_instance(std::vector<std::string> vertices,
                              std::vector<std::array<int, 3>> faces,
                              std::vector<int> outer_boundary,
                              ProfileKind profile,
                              std::vector<std::vector<Rational>> weights,
                              std::vector<TableFn> tables);

// Sub-instance on a subset of agents and items, with valuations restricted by
// fixing everything outside `keep_items` to "absent". Relevance is the
// restriction of the declared sets; it is trusted rather than re-derived.
Instance restrict_instance(const Instance& inst,
                           const std::vector<int>& keep_agents,
                           const std::vector<int>& keep_items);

}  // namespace fairorient
