#pragma once

#include <string>

#include "core/instance.hpp"

namespace fairorient {

// True when `alloc` gives every vertex at most two faces and, for every pair
// of vertices with common inner faces, at most one common face to each of
// them. `why` (when given) receives the first violation found.
bool is_proper(const Instance& p, const Allocation& alloc,
               std::string* why = nullptr);

// Allocates every inner face to one of its corners so that the two
// conditions above hold; such an allocation is fair up to any relevant item
// for arbitrary monotone face valuations. Inductive peeling of boundary
// vertices: degree-2 vertices drop with their unique face, higher-degree
// boundary vertices contract onto a boundary neighbor when that neighbor has
// no prior edges into the dropped fan (the image lift is only sound then),
// and a backtracking assignment search covers the remaining shapes.
Allocation planar_faces_orientation(const Instance& p);

}  // namespace fairorient
