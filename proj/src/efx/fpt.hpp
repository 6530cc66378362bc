#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "efx/brute.hpp"
#include "efx/layout.hpp"

namespace fairorient {

// Summary of one feasible way to orient the edges crossing a subtree.
// `sides` is aligned with layout.crossing[v] (0 sends the edge to its u
// endpoint, 1 to v, matching OrientationVector). `marks` lists boundary
// vertices that are allowed to be envied from inside the subtree; each mark
// commits the vertex to in-degree exactly one in the underlying partial
// orientation.
struct Record {
  std::vector<int8_t> sides;
  std::vector<int> marks;  // sorted subset of layout.boundary[v]

  bool operator<(const Record& o) const {
    return sides != o.sides ? sides < o.sides : marks < o.marks;
  }
  bool operator==(const Record& o) const { return sides == o.sides && marks == o.marks; }
};

// One surviving derivation per record: the record chosen at each child
// (aligned with layout.children[v], empty Record for detached children).
// Leaf records derive from nothing; their own sides already orient every
// incident edge.
struct Provenance {
  std::vector<Record> child_choice;
};

using RecordSet = std::map<Record, Provenance>;

RecordSet leaf_records(const Instance& g, const TreeLayout& t, int v);

// Merges the children's record sets into v's, branching over open-child
// records, orientations of v's own edges to vertices outside every child
// subtree, and fresh marks on those vertices. kid_sets must align with
// layout.children[v].
RecordSet combine_records(const Instance& g, const TreeLayout& t, int v,
                          const std::vector<const RecordSet*>& kid_sets);

struct EfxDecision {
  bool exists = false;
  std::optional<OrientationVector> witness;
};

// True iff the graph admits an orientation that is fair under the
// remove-any-item standard. The witness (when requested and one exists) is
// rebuilt by walking the stored derivations top-down and re-verified before
// being returned.
EfxDecision decide_efx(const Instance& g, const TreeLayout& t, bool want_witness = true);

}  // namespace fairorient
