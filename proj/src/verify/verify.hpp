#pragma once

#include <optional>
#include <string>
#include <vector>

#include "core/instance.hpp"
#include "core/json_io.hpp"

namespace fairorient {

// One envy pair that survives the property's removal quantifier. `item` is
// the removal witness: for EFX/EFXr the item whose removal keeps the envy,
// for EF1 the best removal attempt (the one leaving the least value).
struct Violation {
  int envier = 0;
  int envied = 0;
  Rational own_value;
  Rational other_value;
  std::optional<int> item;
};

struct FairnessReport {
  std::string property;
  bool holds = true;
  std::vector<Violation> violations;
};

struct OrientationReport {
  bool holds = true;
  std::vector<std::pair<int, int>> offenders;  // (agent, item) pairs
};

struct EnvyGraph {
  int n = 0;
  std::vector<std::vector<char>> arc;  // arc[i][j]: i values j's bundle more

  bool has_arc(int i, int j) const { return arc[i][j] != 0; }
};

// True iff every bundle stays inside the owner's relevant set.
OrientationReport check_orientation(const Instance& inst,
                                    const Allocation& alloc);

FairnessReport check_ef(const Instance& inst, const Allocation& alloc);
FairnessReport check_ef1(const Instance& inst, const Allocation& alloc);
FairnessReport check_efx(const Instance& inst, const Allocation& alloc);
// Like EFX but the removal quantifier runs over π_j ∩ A_i only.
FairnessReport check_efxr(const Instance& inst, const Allocation& alloc);

// Dispatch by property name: "ef" | "ef1" | "efx" | "efxr" | "orientation".
FairnessReport check_named(const Instance& inst, const Allocation& alloc,
                           const std::string& property);

EnvyGraph envy_graph(const Instance& inst, const Allocation& alloc);

Json report_to_json(const Instance& inst, const FairnessReport& report);
Json orientation_report_to_json(const Instance& inst,
                                const OrientationReport& report);

}  // namespace fairorient
