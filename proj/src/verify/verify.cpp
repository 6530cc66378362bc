#include "verify/verify.hpp"

#include "core/errors.hpp"

namespace fairorient {

namespace {

std::vector<Rational> own_values(const Instance& inst,
                                 const Allocation& alloc) {
  std::vector<Rational> out;
  out.reserve(inst.n());
  for (int i = 0; i < inst.n(); ++i)
    out.push_back(inst.value_of(i, alloc.bundles[i]));
  return out;
}

void check_shape(const Instance& inst, const Allocation& alloc) {
  if (static_cast<int>(alloc.bundles.size()) != inst.n())
    throw InputError("allocation must have one bundle per agent");
  ItemSet used(inst.m());
  for (const auto& b : alloc.bundles) {
    if (b.universe() != inst.m())
      throw InputError("bundle universe mismatch");
    if (used.intersects(b)) throw InputError("bundles overlap");
    used |= b;
  }
}

}  // namespace

OrientationReport check_orientation(const Instance& inst,
                                    const Allocation& alloc) {
  check_shape(inst, alloc);
  OrientationReport out;
  for (int i = 0; i < inst.n(); ++i) {
    ItemSet stray = alloc.bundles[i] - inst.relevance[i];
    for (int a : stray.to_vector()) out.offenders.push_back({i, a});
  }
  out.holds = out.offenders.empty();
  return out;
}

FairnessReport check_ef(const Instance& inst, const Allocation& alloc) {
  check_shape(inst, alloc);
  FairnessReport out;
  out.property = "ef";
  auto own = own_values(inst, alloc);
  for (int i = 0; i < inst.n(); ++i)
    for (int j = 0; j < inst.n(); ++j) {
      if (i == j) continue;
      Rational other = inst.value_of(i, alloc.bundles[j]);
      if (other > own[i])
        out.violations.push_back({i, j, own[i], other, std::nullopt});
    }
  out.holds = out.violations.empty();
  return out;
}

FairnessReport check_ef1(const Instance& inst, const Allocation& alloc) {
  check_shape(inst, alloc);
  FairnessReport out;
  out.property = "ef1";
  auto own = own_values(inst, alloc);
  for (int i = 0; i < inst.n(); ++i)
    for (int j = 0; j < inst.n(); ++j) {
      if (i == j) continue;
      if (inst.value_of(i, alloc.bundles[j]) <= own[i]) continue;
      // Envy present, so the bundle is non-empty; look for one removal that
      // settles it, and keep the best attempt as the witness if none does.
      bool fixed = false;
      std::optional<int> best;
      Rational best_val;
      for (int a : alloc.bundles[j].to_vector()) {
        ItemSet rest = alloc.bundles[j];
        rest.remove(a);
        Rational val = inst.value_of(i, rest);
        if (val <= own[i]) {
          fixed = true;
          break;
        }
        if (!best || val < best_val) {
          best = a;
          best_val = val;
        }
      }
      if (!fixed) out.violations.push_back({i, j, own[i], best_val, best});
    }
  out.holds = out.violations.empty();
  return out;
}

namespace {

// Shared EFX/EFXr body; `restrict_to_relevant` switches the removal
// quantifier from all of π_j to π_j ∩ A_i.
FairnessReport check_efx_like(const Instance& inst, const Allocation& alloc,
                              bool restrict_to_relevant) {
  check_shape(inst, alloc);
  FairnessReport out;
  out.property = restrict_to_relevant ? "efxr" : "efx";
  auto own = own_values(inst, alloc);
  for (int i = 0; i < inst.n(); ++i)
    for (int j = 0; j < inst.n(); ++j) {
      if (i == j) continue;
      ItemSet removable = alloc.bundles[j];
      if (restrict_to_relevant) removable &= inst.relevance[i];
      if (removable.empty()) continue;
      if (inst.value_of(i, alloc.bundles[j]) <= own[i]) continue;
      for (int a : removable.to_vector()) {
        ItemSet rest = alloc.bundles[j];
        rest.remove(a);
        Rational val = inst.value_of(i, rest);
        if (val > own[i]) {
          out.violations.push_back({i, j, own[i], val, a});
          break;
        }
      }
    }
  out.holds = out.violations.empty();
  return out;
}

}  // namespace

FairnessReport check_efx(const Instance& inst, const Allocation& alloc) {
  return check_efx_like(inst, alloc, false);
}

FairnessReport check_efxr(const Instance& inst, const Allocation& alloc) {
  return check_efx_like(inst, alloc, true);
}

FairnessReport check_named(const Instance& inst, const Allocation& alloc,
                           const std::string& property) {
  if (property == "ef") return check_ef(inst, alloc);
  if (property == "ef1") return check_ef1(inst, alloc);
  if (property == "efx") return check_efx(inst, alloc);
  if (property == "efxr") return check_efxr(inst, alloc);
  if (property == "orientation") {
    auto rep = check_orientation(inst, alloc);
    FairnessReport out;
    out.property = "orientation";
    out.holds = rep.holds;
    for (auto [i, a] : rep.offenders)
      out.violations.push_back({i, i, Rational(0), Rational(0), a});
    return out;
  }
  throw InputError("unknown property '" + property + "'");
}

EnvyGraph envy_graph(const Instance& inst, const Allocation& alloc) {
  check_shape(inst, alloc);
  EnvyGraph g;
  g.n = inst.n();
  g.arc.assign(g.n, std::vector<char>(g.n, 0));
  auto own = own_values(inst, alloc);
  for (int i = 0; i < g.n; ++i)
    for (int j = 0; j < g.n; ++j) {
      if (i == j) continue;
      if (inst.value_of(i, alloc.bundles[j]) > own[i]) g.arc[i][j] = 1;
    }
  return g;
}

Json report_to_json(const Instance& inst, const FairnessReport& report) {
  Json out = Json::object();
  out["property"] = report.property;
  out["holds"] = report.holds;
  Json list = Json::array();
  for (const auto& v : report.violations) {
    Json item = Json::object();
    item["envier"] = inst.agents[v.envier];
    item["envied"] = inst.agents[v.envied];
    item["own_value"] = rational_to_json(v.own_value);
    item["other_value"] = rational_to_json(v.other_value);
    if (v.item) item["item"] = inst.items[*v.item];
    list.push_back(std::move(item));
  }
  out["violations"] = std::move(list);
  return out;
}

Json orientation_report_to_json(const Instance& inst,
                                const OrientationReport& report) {
  Json out = Json::object();
  out["property"] = "orientation";
  out["holds"] = report.holds;
  Json list = Json::array();
  for (auto [i, a] : report.offenders)
    list.push_back({{"agent", inst.agents[i]}, {"item", inst.items[a]}});
  out["violations"] = std::move(list);
  return out;
}

}  // namespace fairorient
