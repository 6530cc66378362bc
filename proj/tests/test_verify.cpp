#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "core/errors.hpp"
#include "core/json_io.hpp"
#include "test_helpers.hpp"
#include "verify/verify.hpp"

using namespace fairorient;
using helpers::Q;

TEST_CASE("orientation predicate") {
  Instance inst = helpers::intro_instance();

  auto bad = helpers::alloc_of(inst, {{"a"}, {"b", "c"}});
  auto rep = check_orientation(inst, bad);
  CHECK(!rep.holds);
  REQUIRE(rep.offenders.size() == 1);
  CHECK(rep.offenders[0] ==
        std::pair<int, int>{inst.agent_index("Y"), inst.item_index("c")});

  CHECK(check_orientation(inst, helpers::alloc_of(inst, {{"a", "c"}, {"b"}}))
            .holds);
  CHECK(check_orientation(inst, inst.empty_allocation()).holds);
}

TEST_CASE("ef1 on the intro instance") {
  Instance inst = helpers::intro_instance();
  CHECK(check_ef1(inst, helpers::alloc_of(inst, {{"a"}, {"b", "c"}})).holds);

  auto rep = check_ef1(inst, helpers::alloc_of(inst, {{}, {"a", "b", "c"}}));
  CHECK(!rep.holds);
  REQUIRE(rep.violations.size() == 1);
  const auto& v = rep.violations[0];
  CHECK(v.envier == inst.agent_index("X"));
  CHECK(v.envied == inst.agent_index("Y"));
  CHECK(v.own_value == 0);
  CHECK(v.other_value == Q(6, 5));  // best removal still leaves 6/5
  CHECK(v.item == inst.item_index("a"));
}

TEST_CASE("one agent owns everything") {
  Instance inst = parse_instance(R"({
    "agents": ["solo"], "items": ["a", "b"],
    "relevance": {"solo": ["a", "b"]},
    "valuations": {"type": "additive",
                   "weights": {"solo": {"a": "1", "b": "2"}}}
  })");
  Allocation alloc = inst.empty_allocation();
  alloc.bundles[0] = inst.full_item_set();
  alloc.unallocated = ItemSet(inst.m());
  CHECK(check_ef1(inst, alloc).holds);
  CHECK(check_efx(inst, alloc).holds);
  CHECK(check_ef(inst, alloc).holds);
}

TEST_CASE("efx on the intro instance") {
  Instance inst = helpers::intro_instance();
  CHECK(check_efx(inst, helpers::alloc_of(inst, {{"a"}, {"b", "c"}})).holds);
  CHECK(check_efxr(inst, helpers::alloc_of(inst, {{"a"}, {"b", "c"}})).holds);

  // Give X nothing: removing c from Y's bundle still leaves X envious.
  auto rep = check_efx(inst, helpers::alloc_of(inst, {{}, {"a", "b", "c"}}));
  CHECK(!rep.holds);
  REQUIRE(!rep.violations.empty());
  CHECK(rep.violations[0].item == inst.item_index("a"));
}

TEST_CASE("single shared item to one side") {
  Instance inst = parse_instance(R"({
    "agents": ["1", "2"], "items": ["g"],
    "relevance": {"1": ["g"], "2": ["g"]},
    "valuations": {"type": "identical", "weights": {"g": "1"}}
  })");
  auto alloc = helpers::alloc_of(inst, {{"g"}, {}});
  CHECK(check_efx(inst, alloc).holds);
  CHECK(!check_ef(inst, alloc).holds);
}

TEST_CASE("efxr restricts removals to the envier's relevant items") {
  Instance inst = parse_instance(R"({
    "agents": ["i", "j"], "items": ["r", "x", "own"],
    "relevance": {"i": ["r", "own"], "j": ["r", "x"]},
    "valuations": {"type": "additive", "weights": {
      "i": {"r": "5", "x": "0", "own": "1"},
      "j": {"r": "1", "x": "1", "own": "0"}}}
  })");
  auto alloc = helpers::alloc_of(inst, {{"own"}, {"r", "x"}});
  auto efx = check_efx(inst, alloc);
  CHECK(!efx.holds);
  REQUIRE(efx.violations.size() == 1);
  CHECK(efx.violations[0].item == inst.item_index("x"));
  CHECK(efx.violations[0].other_value == 5);

  CHECK(check_efxr(inst, alloc).holds);
}

TEST_CASE("unit triangle cycle orientation is efxr") {
  Instance tri = helpers::triangle();
  // v0 gets e0, v1 gets e1, v2 gets e2: a directed 3-cycle of envy-free-ish
  // single edges; each agent sees one relevant edge elsewhere.
  auto alloc = helpers::alloc_of(tri, {{"e0"}, {"e1"}, {"e2"}});
  CHECK(check_orientation(tri, alloc).holds);
  CHECK(check_efxr(tri, alloc).holds);
  CHECK(check_efx(tri, alloc).holds);
}

TEST_CASE("envy graph arcs") {
  Instance inst = helpers::intro_instance();
  int X = inst.agent_index("X"), Y = inst.agent_index("Y");

  // X strictly prefers {b,c} (6/5) to {a} (1), so the arc X->Y is there; the
  // allocation is still EFX since either removal settles it.
  auto g = envy_graph(inst, helpers::alloc_of(inst, {{"a"}, {"b", "c"}}));
  CHECK(g.has_arc(X, Y));
  CHECK(!g.has_arc(Y, X));

  g = envy_graph(inst, helpers::alloc_of(inst, {{}, {"b"}}));
  CHECK(g.has_arc(X, Y));
  CHECK(!g.has_arc(Y, X));

  g = envy_graph(inst, inst.empty_allocation());
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j) CHECK(!g.arc[i][j]);
}

TEST_CASE("implication chain ef to efx to ef1 and efxr") {
  Instance inst = helpers::intro_instance();
  std::vector<Allocation> allocs = {
      helpers::alloc_of(inst, {{"a"}, {"b", "c"}}),
      helpers::alloc_of(inst, {{"a", "c"}, {"b"}}),
      helpers::alloc_of(inst, {{}, {"a", "b", "c"}}),
      helpers::alloc_of(inst, {{"a", "b", "c"}, {}}),
      helpers::alloc_of(inst, {{"b"}, {"a", "c"}}),
      inst.empty_allocation(),
  };
  for (const auto& alloc : allocs) {
    if (check_ef(inst, alloc).holds) CHECK(check_efx(inst, alloc).holds);
    if (check_efx(inst, alloc).holds) {
      CHECK(check_ef1(inst, alloc).holds);
      CHECK(check_efxr(inst, alloc).holds);
    }
  }
}

TEST_CASE("scaling one agent's valuation changes nothing") {
  Instance base = helpers::intro_instance();
  Instance scaled = parse_instance(R"({
    "kind": "general",
    "agents": ["X", "Y"],
    "items": ["a", "b", "c"],
    "relevance": {"X": ["a", "b", "c"], "Y": ["b"]},
    "valuations": {
      "type": "additive",
      "weights": {
        "X": {"a": "7", "b": "7", "c": "7/5"},
        "Y": {"a": "0", "b": "1", "c": "0"}
      }
    }
  })");
  for (const auto& bundles :
       std::vector<std::vector<std::vector<std::string>>>{
           {{"a"}, {"b", "c"}}, {{}, {"a", "b", "c"}}, {{"b", "c"}, {}}}) {
    auto a1 = helpers::alloc_of(base, bundles);
    auto a2 = helpers::alloc_of(scaled, bundles);
    CHECK(check_ef1(base, a1).holds == check_ef1(scaled, a2).holds);
    CHECK(check_efx(base, a1).holds == check_efx(scaled, a2).holds);
    CHECK(check_efxr(base, a1).holds == check_efxr(scaled, a2).holds);
    CHECK(check_ef(base, a1).holds == check_ef(scaled, a2).holds);
  }
}

TEST_CASE("report json shape") {
  Instance inst = helpers::intro_instance();
  auto rep = check_ef1(inst, helpers::alloc_of(inst, {{}, {"a", "b", "c"}}));
  Json j = report_to_json(inst, rep);
  CHECK(j["property"] == "ef1");
  CHECK(j["holds"] == false);
  CHECK(j["violations"][0]["envier"] == "X");
  CHECK(j["violations"][0]["other_value"] == "6/5");
  CHECK(j["violations"][0]["item"] == "a");

  auto orep = check_orientation(inst, helpers::alloc_of(inst, {{"a"}, {"b", "c"}}));
  Json oj = orientation_report_to_json(inst, orep);
  CHECK(oj["holds"] == false);
  CHECK(oj["violations"][0]["agent"] == "Y");
  CHECK(oj["violations"][0]["item"] == "c");
}

TEST_CASE("overlapping bundles are rejected") {
  Instance inst = helpers::intro_instance();
  Allocation alloc = inst.empty_allocation();
  alloc.bundles[0].add(0);
  alloc.bundles[1].add(0);
  CHECK_THROWS_AS(check_ef1(inst, alloc), InputError);
}
