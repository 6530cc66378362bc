#pragma once

#include <array>
#include <vector>

namespace fairorient {

class Instance;

// Bare combinatorial form of an embedded triangulated disk: inner faces as
// corner triples plus the outer boundary cycle. The face-orientation solver
// rebuilds these during its contraction recursion, so the checks live here
// rather than on Instance.
struct FaceGraph {
  int n = 0;
  std::vector<std::array<int, 3>> faces;
  std::vector<int> boundary;
};

// Throws InputError when the face data does not describe a 2-connected
// triangulated disk (edge multiplicities, Euler count, boundary shape,
// coherent face fan around every vertex).
void validate_face_graph(const FaceGraph& g);

void validate_planar_payload(const Instance& inst);

// Undirected edge set derived from the faces, as sorted (min,max) pairs.
std::vector<std::pair<int, int>> face_graph_edges(const FaceGraph& g);

// Neighbors of v in face-fan order. For a boundary vertex this is a path
// from one boundary neighbor to the other; for an interior vertex a cycle
// (starting point unspecified, successive entries share a face with v).
std::vector<int> vertex_fan(const FaceGraph& g, int v);

bool is_biconnected(int n, const std::vector<std::pair<int, int>>& edges);

}  // namespace fairorient
