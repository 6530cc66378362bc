#pragma once

#include <string>
#include <vector>

#include "core/instance.hpp"
#include "core/json_io.hpp"

namespace helpers {

using namespace fairorient;

// Two agents, three items; Y cares about b only.
inline Instance intro_instance() {
  return parse_instance(R"({
    "kind": "general",
    "agents": ["X", "Y"],
    "items": ["a", "b", "c"],
    "relevance": {"X": ["a", "b", "c"], "Y": ["b"]},
    "valuations": {
      "type": "additive",
      "weights": {
        "X": {"a": "1", "b": "1", "c": "1/5"},
        "Y": {"a": "0", "b": "1", "c": "0"}
      }
    }
  })");
}

inline ItemSet items_of(const Instance& inst,
                        const std::vector<std::string>& ids) {
  ItemSet s(inst.m());
  for (const auto& id : ids) s.add(inst.item_index(id));
  return s;
}

inline Allocation alloc_of(const Instance& inst,
                           const std::vector<std::vector<std::string>>& bundles) {
  Allocation out = inst.empty_allocation();
  for (size_t i = 0; i < bundles.size(); ++i) {
    out.bundles[i] = items_of(inst, bundles[i]);
    out.unallocated -= out.bundles[i];
  }
  return out;
}

inline GraphEdge edge(int u, int v, const std::string& id, Rational w) {
  GraphEdge e;
  e.u = u;
  e.v = v;
  e.id = id;
  e.wu = e.wv = w;
  return e;
}

inline Instance triangle(Rational w0 = 1, Rational w1 = 1, Rational w2 = 1) {
  return make_graph_instance(
      InstanceKind::Graph, {"v0", "v1", "v2"},
      {edge(0, 1, "e0", w0), edge(1, 2, "e1", w1), edge(0, 2, "e2", w2)});
}

inline Rational Q(long long p, long long q = 1) { return Rational(p) / q; }

}  // namespace helpers
