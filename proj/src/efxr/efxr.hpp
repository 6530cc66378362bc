#pragma once

#include <optional>
#include <utility>
#include <vector>

#include "core/instance.hpp"
#include "efx/brute.hpp"

namespace fairorient {

// Items sharing one exact agent list, in ascending item order.
struct ItemGroup {
  std::vector<int> agents;
  std::vector<int> items;
};

// Result of grouping by agent list. The instance decomposes when every pair
// of distinct groups shares at most one agent; otherwise `witness` names one
// item from each of two offending groups.
struct Decomposition {
  bool decomposable = true;
  std::vector<ItemGroup> groups;  // ordered by first item occurrence
  std::pair<int, int> witness{-1, -1};
};

Decomposition decompose_groups(const Instance& inst);

// Union of one allocation per group into a single allocation over `inst`.
// Each per-group allocation must span all agents of `inst` and place exactly
// that group's items. Groups must partition the items, each with one shared
// agent list, pairwise intersecting in at most one agent.
Allocation combine_group_allocations(const Instance& inst,
                                     const std::vector<ItemGroup>& groups,
                                     const std::vector<Allocation>& per_group);

// Re-embed an allocation computed on restrict_instance(inst, agents, items)
// back into the parent indexing. Agents outside `agents` get empty bundles.
Allocation lift_restricted_allocation(const Instance& inst,
                                      const std::vector<int>& agents,
                                      const std::vector<int>& items,
                                      const Allocation& sub);

// Per-group exhaustive remove-any-item-fair allocations, combined. The
// result is fair up to any relevant item; nullopt when some group admits no
// such allocation. Group sizes are bounded by the allocation-search caps.
std::optional<Allocation> decomposable_efxr(const Instance& inst);

// One edge class per endpoint pair, each split between its two endpoints by
// exhaustive two-agent search; the union is fair up to any relevant item.
// Accepts simple graphs as the degenerate single-edge-class case. Classes
// are capped at 20 parallel edges.
OrientationVector multigraph_efxr(const Instance& g);

}  // namespace fairorient
