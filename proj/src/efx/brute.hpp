#pragma once

#include <optional>
#include <vector>

#include "core/instance.hpp"

namespace fairorient {

// side[e] == 0 sends edge e to its declared u endpoint, 1 to v.
struct OrientationVector {
  std::vector<int> side;
};

Allocation orientation_to_allocation(const Instance& g,
                                     const OrientationVector& ov);

struct BruteOptions {
  int edge_cap = 24;
  // Branch-and-bound on the pair condition below. Switched off only by the
  // soundness tests that compare pruned against exhaustive counts.
  bool prune = true;
};

struct SearchStats {
  unsigned long long nodes = 0;
  unsigned long long pruned = 0;
  unsigned long long leaves = 0;
};

// Depth-first search over edge orientations. A branch dies when some ordered
// adjacent pair (u,w) can no longer become fair: the guaranteed leftover of
// w's bundle after the best single removal already exceeds everything u can
// still collect. Exact at the leaves, so a returned witness is fair and an
// empty answer is a proof of absence.
std::optional<OrientationVector> brute_force_efx_orientation(
    const Instance& g, const BruteOptions& opt = {},
    SearchStats* stats = nullptr);

long long count_efx_orientations(const Instance& g,
                                 const BruteOptions& opt = {},
                                 SearchStats* stats = nullptr);

// Exhaustive n^m search over full allocations (any instance kind).
// Capped at 4 agents and 10 items; two-agent instances may carry up to 20.
std::optional<Allocation> brute_force_efx_allocation(const Instance& inst);

}  // namespace fairorient
