#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "core/instance.hpp"
#include "core/json_io.hpp"
#include "verify/verify.hpp"

namespace fairorient {

enum class ItemOrder { Declaration, Laminar, Custom };

struct Ef1Policy {
  ItemOrder item_order = ItemOrder::Declaration;
  std::vector<int> custom_order;  // permutation of item indices
  // Raise an internal error if the envy graph ever acquires a cycle. Used by
  // the identical-valuations path, where cycles are provably impossible.
  bool forbid_cycles = false;
};

struct TraceEvent {
  enum class Kind { Assign, CycleShift };
  Kind kind = Kind::Assign;
  int item = -1;   // Assign
  int agent = -1;  // Assign
  std::vector<int> cycle;     // CycleShift: agents, each envying the next
  std::vector<int> returned;  // CycleShift: items sent back to the pool
  std::vector<Rational> potential;  // own-bundle values after the event
};

struct Ef1Result {
  Allocation alloc;
  std::vector<TraceEvent> trace;
  int cycle_shifts = 0;
  int pool_returns = 0;
};

// Envy-cycle elimination adapted to orientations: each item goes to a source
// of the envy graph induced on the agents allowed to take it, and cycle
// shifts intersect the inherited bundle with the receiver's relevant set.
Ef1Result solve_ef1(const Instance& inst, const Ef1Policy& policy = {});

// Identical-profile fast path; the envy graph stays acyclic throughout.
Ef1Result solve_ef1_identical(const Instance& inst);

// Lowest-index vertex of `g` restricted to `candidates` with no incoming arc
// from inside the restriction. Throws InternalError when none exists.
int pick_source(const EnvyGraph& g, const std::vector<int>& candidates);

struct LaminarOrder {
  bool laminar = false;
  std::vector<int> order;                // item indices, most agents first
  std::pair<int, int> witness{-1, -1};   // offending item pair when not
};

// Stable sort by decreasing agent-list size; verifies that any later list is
// nested in or disjoint from any earlier one.
LaminarOrder laminar_order(const Instance& inst);

Json trace_to_json(const Instance& inst, const std::vector<TraceEvent>& trace);

}  // namespace fairorient
