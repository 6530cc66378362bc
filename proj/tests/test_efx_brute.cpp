#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "core/errors.hpp"
#include "efx/brute.hpp"
#include "gen/generators.hpp"
#include "oracles.hpp"
#include "test_helpers.hpp"
#include "verify/verify.hpp"

using namespace fairorient;
using namespace helpers;

namespace {

void assert_fair_witness(const Instance& g, const OrientationVector& ov) {
  Allocation alloc = orientation_to_allocation(g, ov);
  CHECK(alloc.unallocated.count() == 0);
  CHECK(check_orientation(g, alloc).holds);
  CHECK(check_efx(g, alloc).holds);
}

void assert_matches_oracle(const Instance& g) {
  long long engine = count_efx_orientations(g);
  CHECK(engine == oracle::count_efx_orientations(g));
  auto witness = brute_force_efx_orientation(g);
  CHECK(witness.has_value() == (engine > 0));
  if (witness) assert_fair_witness(g, *witness);
}

Instance two_vertices(std::vector<std::pair<Rational, Rational>> ws,
                      bool multi = false) {
  std::vector<GraphEdge> es;
  for (size_t k = 0; k < ws.size(); ++k) {
    GraphEdge e;
    e.u = 0;
    e.v = 1;
    e.id = "e" + std::to_string(k);
    e.wu = ws[k].first;
    e.wv = ws[k].second;
    es.push_back(e);
  }
  return make_graph_instance(
      multi || ws.size() > 1 ? InstanceKind::Multigraph : InstanceKind::Graph,
      {"u", "w"}, es);
}

}  // namespace

TEST_CASE("single edge orients fairly both ways") {
  Instance g = two_vertices({{Q(2), Q(5)}});
  SearchStats stats;
  CHECK(count_efx_orientations(g, {}, &stats) == 2);
  CHECK(stats.nodes > 0);
  CHECK(stats.leaves == 2);
  auto witness = brute_force_efx_orientation(g);
  REQUIRE(witness);
  assert_fair_witness(g, *witness);
}

TEST_CASE("unit triangle admits exactly the two rotations") {
  Instance g = triangle();
  CHECK(count_efx_orientations(g) == 2);
  auto witness = brute_force_efx_orientation(g);
  REQUIRE(witness);
  assert_fair_witness(g, *witness);
  // Each vertex ends up with exactly one of its edges.
  Allocation alloc = orientation_to_allocation(g, *witness);
  for (int i = 0; i < 3; ++i) CHECK(alloc.bundles[i].count() == 1);
}

TEST_CASE("blocking gadget has no fair orientation") {
  for (long long b : {3, 7, 100}) {
    Instance g = gadget_x(Q(b));
    SearchStats stats;
    CHECK_FALSE(brute_force_efx_orientation(g, {}, &stats));
    CHECK(count_efx_orientations(g) == 0);
    // Pruned search never reaches a leaf when nothing is fair.
    CHECK(stats.leaves == 0);
    CHECK(stats.pruned > 0);
  }
}

TEST_CASE("pruning never changes the count") {
  std::vector<Instance> cases = {
      triangle(),
      triangle(Q(3), Q(1), Q(2)),
      two_vertices({{Q(1), Q(1)}, {Q(1), Q(1)}, {Q(1), Q(1)}}),
      two_vertices({{Q(3), Q(1)}, {Q(1), Q(3)}}),
      gadget_x(Q(3)),
  };
  RandomParams params;
  params.vertices = 5;
  params.edges = 5;
  params.max_weight = 4;
  for (uint64_t seed = 0; seed < 12; ++seed)
    cases.push_back(random_instance("graph", params, seed));
  for (const Instance& g : cases) {
    BruteOptions plain;
    plain.prune = false;
    CHECK(count_efx_orientations(g) == count_efx_orientations(g, plain));
  }
}

TEST_CASE("agrees with the exhaustive oracle on random graphs") {
  RandomParams params;
  params.max_weight = 5;
  for (uint64_t seed = 0; seed < 25; ++seed) {
    params.vertices = 4 + static_cast<int>(seed % 3);
    params.edges = params.vertices + static_cast<int>(seed % 4);
    params.multigraph = seed % 2 == 1;
    Instance g = random_instance("graph", params, seed);
    CAPTURE(seed);
    assert_matches_oracle(g);
  }
}

TEST_CASE("rational weights go through the exact path") {
  Instance g = triangle(Q(1, 3), Q(1, 7), Q(2, 21));
  assert_matches_oracle(g);
  // Denominator product past 2^31 forces the unscaled engine.
  Instance h = triangle(Q(1, 2147482951), Q(1, 2147482949), Q(1, 3));
  CHECK(count_efx_orientations(h) == 2);
}

TEST_CASE("zero-weight parallel copies stay exact") {
  Instance base = two_vertices({{Q(3), Q(1)}, {Q(1), Q(3)}});
  Instance dup = two_vertices({{Q(3), Q(1)}, {Q(1), Q(3)}, {Q(0), Q(0)}});
  assert_matches_oracle(base);
  assert_matches_oracle(dup);
  // Dropping a worthless copy never destroys a solution.
  if (brute_force_efx_orientation(dup)) CHECK(brute_force_efx_orientation(base));

  RandomParams params;
  params.vertices = 4;
  params.edges = 5;
  params.max_weight = 3;
  params.multigraph = true;
  for (uint64_t seed = 100; seed < 106; ++seed) {
    Instance g = random_instance("graph", params, seed);
    std::vector<GraphEdge> es = g.edges;
    GraphEdge copy = es[0];
    copy.id = "dup";
    copy.wu = copy.wv = Q(0);
    es.push_back(copy);
    Instance h = make_graph_instance(InstanceKind::Multigraph, g.agents, es);
    CAPTURE(seed);
    assert_matches_oracle(h);
    if (brute_force_efx_orientation(h)) CHECK(brute_force_efx_orientation(g));
  }
}

TEST_CASE("subset-sum reductions answer through the search") {
  PartitionInput yes{{2, 3, 3, 4}};
  PartitionInput no{{2, 2, 3, 5}};
  REQUIRE(oracle::subset_sum_partition(yes.s));
  REQUIRE_FALSE(oracle::subset_sum_partition(no.s));

  BruteOptions wide;
  wide.edge_cap = 46;
  for (bool multi : {false, true}) {
    auto build = [&](const PartitionInput& in) {
      return multi ? partition_to_multigraph(in) : partition_to_vc_graph(in);
    };
    CAPTURE(multi);
    auto found_yes = brute_force_efx_orientation(build(yes), wide);
    REQUIRE(found_yes);
    assert_fair_witness(build(yes), *found_yes);
    CHECK_FALSE(brute_force_efx_orientation(build(no), wide));
  }
}

TEST_CASE("small multigraph reduction matches the oracle") {
  // An odd total has no even split, so no orientation should exist. The
  // exhaustive scan independently confirms the absence the search reports.
  Instance no = partition_to_multigraph({{1, 2, 2}});
  CHECK_FALSE(brute_force_efx_orientation(no));
  BruteOptions plain;
  plain.prune = false;
  CHECK(count_efx_orientations(no, plain) == 0);
  CHECK_FALSE(oracle::exists_efx_orientation(no));

  Instance yes = partition_to_multigraph({{1, 2, 3, 4}});
  auto witness = brute_force_efx_orientation(yes);
  REQUIRE(witness);
  assert_fair_witness(yes, *witness);
}

TEST_CASE("edge cap and inputs are guarded") {
  std::vector<GraphEdge> path;
  for (int k = 0; k < 25; ++k) path.push_back(edge(k, k + 1, "p" + std::to_string(k), Q(1)));
  std::vector<std::string> names;
  for (int k = 0; k < 26; ++k) names.push_back("v" + std::to_string(k));
  Instance long_path = make_graph_instance(InstanceKind::Graph, names, path);
  CHECK_THROWS_AS(brute_force_efx_orientation(long_path), LimitError);
  BruteOptions wide;
  wide.edge_cap = 30;
  CHECK(brute_force_efx_orientation(long_path, wide));

  CHECK_THROWS_AS(brute_force_efx_orientation(intro_instance()), InputError);
  CHECK_THROWS_AS(count_efx_orientations(intro_instance()), InputError);

  OrientationVector bad;
  bad.side = {0};
  Instance tri = triangle();
  CHECK_THROWS_AS(orientation_to_allocation(tri, bad), InputError);
  bad.side = {0, 2, 1};
  CHECK_THROWS_AS(orientation_to_allocation(tri, bad), InputError);
  CHECK_THROWS_AS(orientation_to_allocation(intro_instance(), bad), InputError);
}

TEST_CASE("full allocation search on tiny instances") {
  Instance duo = make_general_instance(
      {"p", "q"}, {"s", "t"}, {{0, 1}, {0, 1}}, ProfileKind::Additive,
      {{Q(1), Q(1)}, {Q(3), Q(1)}}, {});
  auto alloc = brute_force_efx_allocation(duo);
  REQUIRE(alloc);
  CHECK(check_efx(duo, *alloc).holds);
  CHECK(alloc->unallocated.count() == 0);

  Instance solo = make_general_instance({"p"}, {"s", "t"}, {{0, 1}},
                                        ProfileKind::Additive,
                                        {{Q(2), Q(5)}}, {});
  auto all_mine = brute_force_efx_allocation(solo);
  REQUIRE(all_mine);
  CHECK(all_mine->bundles[0].count() == 2);

  Instance twins = make_general_instance(
      {"p", "q"}, {"s", "t", "r"}, {{0, 1, 2}, {0, 1, 2}},
      ProfileKind::IdenticalAdditive, {{Q(1), Q(1), Q(1)}}, {});
  auto split = brute_force_efx_allocation(twins);
  REQUIRE(split);
  CHECK(check_efx(twins, *split).holds);
}

TEST_CASE("allocation search agrees with the oracle") {
  RandomParams params;
  params.agents = 3;
  params.items = 5;
  params.max_weight = 4;
  for (uint64_t seed = 0; seed < 10; ++seed) {
    Instance g = random_instance("general", params, seed);
    CAPTURE(seed);
    auto alloc = brute_force_efx_allocation(g);
    CHECK(alloc.has_value() == oracle::exists_efx_allocation(g));
    if (alloc) CHECK(check_efx(g, *alloc).holds);
  }
  params.profile = "table";
  params.items = 4;
  for (uint64_t seed = 20; seed < 26; ++seed) {
    Instance g = random_instance("general", params, seed);
    CAPTURE(seed);
    auto alloc = brute_force_efx_allocation(g);
    CHECK(alloc.has_value() == oracle::exists_efx_allocation(g));
    if (alloc) CHECK(check_efx(g, *alloc).holds);
  }
}

TEST_CASE("allocation search caps") {
  Instance five = make_general_instance(
      {"a", "b", "c", "d", "e"}, {"s"}, {{0}, {0}, {0}, {0}, {0}},
      ProfileKind::IdenticalAdditive, {{Q(1)}}, {});
  CHECK_THROWS_AS(brute_force_efx_allocation(five), LimitError);

  std::vector<std::string> items;
  std::vector<int> every;
  std::vector<Rational> row;
  for (int k = 0; k < 21; ++k) {
    items.push_back("i" + std::to_string(k));
    every.push_back(k);
    row.push_back(Q(1));
  }
  Instance wide = make_general_instance({"p", "q"}, items, {every, every},
                                        ProfileKind::IdenticalAdditive, {row}, {});
  CHECK_THROWS_AS(brute_force_efx_allocation(wide), LimitError);

  auto drop = [&](int count) {
    items.resize(count);
    every.resize(count);
    row.resize(count);
  };
  drop(11);
  Instance eleven_wide = make_general_instance(
      {"p", "q"}, items, {every, every}, ProfileKind::IdenticalAdditive, {row},
      {});
  CHECK(brute_force_efx_allocation(eleven_wide).has_value());
  Instance eleven_tri = make_general_instance(
      {"p", "q", "r"}, items, {every, every, every},
      ProfileKind::IdenticalAdditive, {row}, {});
  CHECK_THROWS_AS(brute_force_efx_allocation(eleven_tri), LimitError);
}
