#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "core/instance.hpp"

namespace fairorient {

// Multiset input for the subset-sum reductions. The target is half_sum(); an
// odd total is allowed (the instance is then a trivial NO) but every entry
// must stay strictly below the target and the target must exceed 2, since the
// blocking gadget only works in that regime.
struct PartitionInput {
  std::vector<long long> s;

  Rational half_sum() const;
};

// Weighted K4 with two disjoint heavy edges of weight b and four unit edges.
// For b >= 3 it has no fair orientation under the remove-any-item criterion.
Instance gadget_x(const Rational& b);

// Subset-sum instance embedded as a simple graph: selector vertices x_1..x_T
// doubly tied to collectors i and j, one blocking gadget wired to each
// collector. `cover` (when given) receives a vertex cover of constant size.
Instance partition_to_vc_graph(const PartitionInput& in,
                               std::vector<std::string>* cover = nullptr);

// Same reduction compressed onto 10 vertices with T parallel i-j edges.
Instance partition_to_multigraph(const PartitionInput& in);

struct RandomParams {
  int agents = 4;
  int items = 8;
  long long max_weight = 10;
  std::string profile = "additive";  // "additive" or "table"
  int vertices = 6;                  // graph and planar kinds
  int edges = 9;                     // graph kind
  bool multigraph = false;
  int groups = 3;                    // decomposable kind
};

// kind: general | graph | identical | laminar | decomposable | planar.
// Same seed and params always produce the same instance.
Instance random_instance(const std::string& kind, const RandomParams& params,
                         std::uint64_t seed);

}  // namespace fairorient
