#include "efxr/efxr.hpp"

#include <algorithm>
#include <map>
#include <string>

#include "core/errors.hpp"
#include "verify/verify.hpp"

namespace fairorient {

namespace {

int shared_agents(const std::vector<int>& a, const std::vector<int>& b) {
  int count = 0;
  size_t x = 0, y = 0;
  while (x < a.size() && y < b.size()) {
    if (a[x] == b[y]) {
      ++count;
      ++x;
      ++y;
    } else if (a[x] < b[y]) {
      ++x;
    } else {
      ++y;
    }
  }
  return count;
}

}  // namespace

Decomposition decompose_groups(const Instance& inst) {
  Decomposition out;
  std::map<std::vector<int>, int> index_of;
  for (int a = 0; a < inst.m(); ++a) {
    auto [it, fresh] =
        index_of.try_emplace(inst.agent_list[a], out.groups.size());
    if (fresh) out.groups.push_back({inst.agent_list[a], {}});
    out.groups[it->second].items.push_back(a);
  }
  for (size_t g = 0; g < out.groups.size(); ++g)
    for (size_t h = g + 1; h < out.groups.size(); ++h)
      if (shared_agents(out.groups[g].agents, out.groups[h].agents) > 1) {
        out.decomposable = false;
        out.witness = {out.groups[g].items[0], out.groups[h].items[0]};
        return out;
      }
  return out;
}

Allocation combine_group_allocations(const Instance& inst,
                                     const std::vector<ItemGroup>& groups,
                                     const std::vector<Allocation>& per_group) {
  if (groups.size() != per_group.size())
    throw InputError("one allocation per group required");

  std::vector<int> group_of(inst.m(), -1);
  for (size_t g = 0; g < groups.size(); ++g) {
    if (groups[g].items.empty()) throw InputError("empty item group");
    for (int a : groups[g].items) {
      if (a < 0 || a >= inst.m()) throw InputError("group item out of range");
      if (group_of[a] != -1) throw InputError("groups must not overlap");
      group_of[a] = static_cast<int>(g);
      if (inst.agent_list[a] != groups[g].agents)
        throw InputError("group agent list does not match its items");
    }
  }
  for (int a = 0; a < inst.m(); ++a)
    if (group_of[a] == -1) throw InputError("groups must cover every item");
  for (size_t g = 0; g < groups.size(); ++g)
    for (size_t h = g + 1; h < groups.size(); ++h)
      if (shared_agents(groups[g].agents, groups[h].agents) > 1)
        throw InputError("groups share more than one agent");

  Allocation out;
  out.bundles.assign(inst.n(), ItemSet(inst.m()));
  out.unallocated = ItemSet(inst.m());
  std::vector<char> placed(inst.m(), 0);
  for (size_t g = 0; g < groups.size(); ++g) {
    const Allocation& part = per_group[g];
    if (static_cast<int>(part.bundles.size()) != inst.n())
      throw InputError("per-group allocation must span all agents");
    ItemSet seen(inst.m());
    for (int i = 0; i < inst.n(); ++i)
      for (int a : part.bundles[i].to_vector()) {
        if (group_of[a] != static_cast<int>(g))
          throw InputError("per-group allocation strays outside its group");
        if (seen.contains(a))
          throw InputError("per-group allocation assigns an item twice");
        seen.add(a);
        if (placed[a])
          throw InternalError("item placed by two groups");
        placed[a] = 1;
        out.bundles[i].add(a);
      }
    for (int a : part.unallocated.to_vector()) {
      if (group_of[a] != static_cast<int>(g))
        throw InputError("per-group allocation strays outside its group");
      if (seen.contains(a))
        throw InputError("per-group allocation assigns an item twice");
      seen.add(a);
      out.unallocated.add(a);
    }
    for (int a : groups[g].items)
      if (!seen.contains(a))
        throw InputError("per-group allocation misses an item of its group");
  }
  return out;
}

Allocation lift_restricted_allocation(const Instance& inst,
                                      const std::vector<int>& agents,
                                      const std::vector<int>& items,
                                      const Allocation& sub) {
  if (sub.bundles.size() != agents.size())
    throw InputError("restricted allocation does not match the agent list");
  Allocation out;
  out.bundles.assign(inst.n(), ItemSet(inst.m()));
  out.unallocated = ItemSet(inst.m());
  for (size_t j = 0; j < agents.size(); ++j)
    for (int t : sub.bundles[j].to_vector()) out.bundles[agents[j]].add(items[t]);
  for (int t : sub.unallocated.to_vector()) out.unallocated.add(items[t]);
  return out;
}

std::optional<Allocation> decomposable_efxr(const Instance& inst) {
  Decomposition dec = decompose_groups(inst);
  if (!dec.decomposable)
    throw InputError("instance is not decomposable: items '" +
                     inst.items[dec.witness.first] + "' and '" +
                     inst.items[dec.witness.second] +
                     "' share more than one agent");

  std::vector<Allocation> parts;
  for (const ItemGroup& grp : dec.groups) {
    Instance sub = restrict_instance(inst, grp.agents, grp.items);
    auto found = brute_force_efx_allocation(sub);
    if (!found) return std::nullopt;
    parts.push_back(
        lift_restricted_allocation(inst, grp.agents, grp.items, *found));
  }
  Allocation out = combine_group_allocations(inst, dec.groups, parts);

  if (!check_orientation(inst, out).holds)
    throw InternalError("combined allocation leaves a relevant set");
  if (!check_efxr(inst, out).holds)
    throw InternalError("combined allocation fails the relevant-item check");
  return out;
}

OrientationVector multigraph_efxr(const Instance& g) {
  if (g.kind != InstanceKind::Graph && g.kind != InstanceKind::Multigraph)
    throw InputError("multigraph solver requires a graph instance");

  std::map<std::pair<int, int>, std::vector<int>> classes;
  for (int e = 0; e < g.m(); ++e) {
    auto ends = std::minmax(g.edges[e].u, g.edges[e].v);
    classes[{ends.first, ends.second}].push_back(e);
  }

  OrientationVector ov;
  ov.side.assign(g.m(), 0);
  for (const auto& [ends, members] : classes) {
    if (members.size() > 20)
      throw LimitError("parallel class of " + std::to_string(members.size()) +
                       " edges exceeds the two-agent enumeration cap");
    Instance sub =
        restrict_instance(g, {ends.first, ends.second}, members);
    auto split = brute_force_efx_allocation(sub);
    if (!split)
      throw InternalError("two-agent split search came back empty");
    for (size_t t = 0; t < members.size(); ++t) {
      int e = members[t];
      int owner = split->bundles[0].contains(t) ? ends.first : ends.second;
      ov.side[e] = owner == g.edges[e].u ? 0 : 1;
    }
  }

  Allocation alloc = orientation_to_allocation(g, ov);
  if (!check_orientation(g, alloc).holds)
    throw InternalError("orientation leaves an incident set");
  if (!check_efxr(g, alloc).holds)
    throw InternalError("orientation fails the relevant-item check");
  return ov;
}

}  // namespace fairorient
