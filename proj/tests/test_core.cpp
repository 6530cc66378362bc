#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "core/errors.hpp"
#include "core/instance.hpp"
#include "core/json_io.hpp"
#include "test_helpers.hpp"

using namespace fairorient;
using helpers::Q;

TEST_CASE("rational parsing") {
  CHECK(*parse_rational("3/4") == Q(3, 4));
  CHECK(*parse_rational("1.25") == Q(5, 4));
  CHECK(*parse_rational("-2") == Q(-2));
  CHECK(*parse_rational("0.2") == Q(1, 5));
  CHECK(*parse_rational("007") == Q(7));
  CHECK(!parse_rational("1/0"));
  CHECK(!parse_rational("x"));
  CHECK(!parse_rational("1/ 2"));
  CHECK(!parse_rational(""));
  CHECK(format_rational(Q(6, 4)) == "3/2");
  CHECK(format_rational(Q(5)) == "5");
  CHECK(*parse_rational(format_rational(Q(-7, 3))) == Q(-7, 3));
}

TEST_CASE("rational json forms") {
  CHECK(rational_from_json(Json::parse("\"1/5\""), "t") == Q(1, 5));
  CHECK(rational_from_json(Json::parse("2"), "t") == Q(2));
  CHECK(rational_from_json(Json::parse("\"0.5\""), "t") == Q(1, 2));
  CHECK_THROWS_AS(rational_from_json(Json::parse("0.1"), "t"), InputError);
  CHECK_THROWS_AS(rational_from_json(Json::parse("true"), "t"), InputError);
}

TEST_CASE("item sets") {
  ItemSet s(70);
  s.add(0);
  s.add(68);
  CHECK(s.contains(68));
  CHECK(s.count() == 2);
  ItemSet t(70);
  t.add(68);
  CHECK(t.subset_of(s));
  CHECK((s - t).count() == 1);
  CHECK((s & t) == t);
  CHECK((s | t) == s);
  CHECK(s.to_vector() == std::vector<int>{0, 68});
}

TEST_CASE("intro instance model") {
  Instance inst = helpers::intro_instance();
  CHECK(inst.n() == 2);
  CHECK(inst.m() == 3);
  int X = inst.agent_index("X"), Y = inst.agent_index("Y");

  CHECK(inst.relevance[X] == helpers::items_of(inst, {"a", "b", "c"}));
  CHECK(inst.relevance[Y] == helpers::items_of(inst, {"b"}));

  CHECK(inst.value_of(X, helpers::items_of(inst, {"b", "c"})) == Q(6, 5));
  CHECK(inst.value_of(Y, ItemSet(inst.m())) == 0);
  CHECK(inst.value_of(Y, helpers::items_of(inst, {"a", "c"})) == 0);

  CHECK(inst.derived_relevance(Y) == inst.relevance[Y]);
  CHECK(inst.derived_relevance(X) == inst.relevance[X]);
}

TEST_CASE("empty item list is a valid instance") {
  Instance inst = parse_instance(R"({
    "agents": ["p", "q"], "items": [],
    "relevance": {"p": [], "q": []},
    "valuations": {"type": "additive", "weights": {"p": {}, "q": {}}}
  })");
  CHECK(inst.m() == 0);
  CHECK(inst.value_of(0, ItemSet(0)) == 0);
}

TEST_CASE("non-monotone table is rejected") {
  CHECK_THROWS_WITH_AS(
      parse_instance(R"({
        "agents": ["Z"], "items": ["a", "b"],
        "relevance": {"Z": ["a", "b"]},
        "valuations": {"type": "table", "tables": {"Z": {
          "support": ["a", "b"],
          "values": [
            {"bundle": ["a"], "value": "2"},
            {"bundle": ["b"], "value": "1"},
            {"bundle": ["a", "b"], "value": "1"}
          ]}}}
      })"),
      doctest::Contains("monotone"), InputError);
}

TEST_CASE("table relevance needs a removal witness somewhere") {
  // V({a}) = 0 yet a is relevant through S = {a,b}.
  Instance inst = parse_instance(R"({
    "agents": ["Z"], "items": ["a", "b"],
    "relevance": {"Z": ["a", "b"]},
    "valuations": {"type": "table", "tables": {"Z": {
      "support": ["a", "b"],
      "values": [
        {"bundle": ["a"], "value": "0"},
        {"bundle": ["b"], "value": "1"},
        {"bundle": ["a", "b"], "value": "2"}
      ]}}}
  })");
  CHECK(inst.derived_relevance(0) == helpers::items_of(inst, {"a", "b"}));

  // Without the witness the same declaration must fail: b alone carries it.
  CHECK_THROWS_WITH_AS(
      parse_instance(R"({
        "agents": ["Z"], "items": ["a", "b"],
        "relevance": {"Z": ["a", "b"]},
        "valuations": {"type": "table", "tables": {"Z": {
          "support": ["a", "b"],
          "values": [
            {"bundle": ["a"], "value": "0"},
            {"bundle": ["b"], "value": "1"},
            {"bundle": ["a", "b"], "value": "1"}
          ]}}}
      })"),
      doctest::Contains("relevance"), InputError);
}

TEST_CASE("declared relevance must match additive weights") {
  CHECK_THROWS_AS(parse_instance(R"({
    "agents": ["X"], "items": ["a", "b"],
    "relevance": {"X": ["a", "b"]},
    "valuations": {"type": "additive", "weights": {"X": {"a": "1"}}}
  })"),
                  InputError);
  CHECK_THROWS_AS(parse_instance(R"({
    "agents": ["X", "Y"], "items": ["a"],
    "relevance": {"X": ["a"], "Y": ["a"]},
    "valuations": {"type": "additive",
                   "weights": {"X": {"a": "1"}, "Y": {"a": "0"}}}
  })"),
                  InputError);
}

TEST_CASE("item relevant to nobody is rejected") {
  CHECK_THROWS_WITH_AS(
      parse_instance(R"({
        "agents": ["X"], "items": ["a", "b"],
        "relevance": {"X": ["a"]},
        "valuations": {"type": "additive", "weights": {"X": {"a": "1"}}}
      })"),
      doctest::Contains("relevant to no agent"), InputError);
}

TEST_CASE("range size") {
  Instance two = parse_instance(R"({
    "agents": ["X"], "items": ["a", "b"],
    "relevance": {"X": ["a", "b"]},
    "valuations": {"type": "additive", "weights": {"X": {"a": "1", "b": "1"}}}
  })");
  CHECK(*two.range_size(0) == 3);

  Instance none = parse_instance(R"({
    "agents": ["X", "Y"], "items": ["a"],
    "relevance": {"X": ["a"], "Y": []},
    "valuations": {"type": "additive",
                   "weights": {"X": {"a": "1"}, "Y": {}}}
  })");
  CHECK(*none.range_size(1) == 1);

  for (int l : {1, 3, 5, 7}) {
    std::vector<std::string> items;
    std::vector<int> rel;
    Json w = Json::object();
    for (int a = 0; a < l; ++a) {
      items.push_back("i" + std::to_string(a));
      rel.push_back(a);
      w[items.back()] = "1";
    }
    Json j = {{"agents", {"X"}},
              {"items", items},
              {"relevance", {{"X", items}}},
              {"valuations", {{"type", "additive"}, {"weights", {{"X", w}}}}}};
    Instance inst = instance_from_json(j);
    CHECK(*inst.range_size(0) == l + 1);
  }

  CHECK(!two.range_size(0, 2));  // cap exceeded
}

TEST_CASE("identical valuations take the shared function over A_i") {
  Instance inst = parse_instance(R"({
    "agents": ["1", "2"], "items": ["a", "b"],
    "relevance": {"1": ["a", "b"], "2": ["b"]},
    "valuations": {"type": "identical", "weights": {"a": "3", "b": "2"}}
  })");
  ItemSet all = inst.full_item_set();
  CHECK(inst.value_of(0, all) == 5);
  CHECK(inst.value_of(1, all) == 2);
  CHECK(inst.derived_relevance(1) == helpers::items_of(inst, {"b"}));
}

TEST_CASE("graph instances lower to incidence relevance") {
  Instance tri = helpers::triangle(Q(1), Q(2), Q(3));
  CHECK(tri.m() == 3);
  CHECK(tri.items == std::vector<std::string>{"e0", "e1", "e2"});
  CHECK(tri.relevance[0] == helpers::items_of(tri, {"e0", "e2"}));
  CHECK(tri.relevance[1] == helpers::items_of(tri, {"e0", "e1"}));
  CHECK(tri.derived_relevance(2) == tri.relevance[2]);
  CHECK(tri.value_of(0, tri.full_item_set()) == 4);

  // A zero-weight edge stays structurally relevant to both endpoints.
  Instance z = make_graph_instance(
      InstanceKind::Graph, {"u", "v"}, {helpers::edge(0, 1, "e0", Q(0))});
  CHECK(z.derived_relevance(0) == helpers::items_of(z, {"e0"}));
}

TEST_CASE("graph parsing guards") {
  CHECK_THROWS_WITH_AS(parse_instance(R"({
    "kind": "graph", "agents": ["u", "v"],
    "edges": [{"u": "u", "v": "v", "weight": "1"},
              {"u": "v", "v": "u", "weight": "2"}]
  })"),
                       doctest::Contains("multigraph"), InputError);
  CHECK_NOTHROW(parse_instance(R"({
    "kind": "multigraph", "agents": ["u", "v"],
    "edges": [{"u": "u", "v": "v", "weight": "1"},
              {"u": "v", "v": "u", "weight": "2"}]
  })"));
  CHECK_THROWS_WITH_AS(parse_instance(R"({
    "kind": "graph", "agents": ["u", "v"],
    "edges": [{"u": "u", "v": "u", "weight": "1"}]
  })"),
                       doctest::Contains("self-loop"), InputError);
  CHECK_THROWS_AS(parse_instance(R"({
    "kind": "graph", "agents": ["u", "v"],
    "edges": [{"u": "u", "v": "v", "weight": "-1"}]
  })"),
                  InputError);
}

TEST_CASE("asymmetric edge weights") {
  Instance inst = parse_instance(R"({
    "kind": "graph", "agents": ["u", "v"],
    "edges": [{"u": "u", "v": "v", "id": "e", "wu": "3", "wv": "1/2"}]
  })");
  CHECK(inst.value_of(0, inst.full_item_set()) == 3);
  CHECK(inst.value_of(1, inst.full_item_set()) == Q(1, 2));
}

TEST_CASE("planar face instances") {
  Instance tri = parse_instance(R"({
    "kind": "planar-faces",
    "agents": ["v0", "v1", "v2"],
    "faces": [[0, 1, 2]],
    "outer_boundary": [0, 1, 2],
    "valuations": {"type": "additive",
                   "weights": {"v0": {"f0": "1"}, "v1": {"f0": "2"},
                               "v2": {"f0": "0"}}}
  })");
  CHECK(tri.m() == 1);
  CHECK(tri.items[0] == "f0");
  CHECK(tri.relevance[2] == tri.full_item_set());

  // Two triangles glued along an edge.
  Instance two = parse_instance(R"({
    "kind": "planar-faces",
    "agents": ["p", "q", "r", "s"],
    "faces": [[0, 1, 2], [1, 2, 3]],
    "outer_boundary": [0, 1, 3, 2],
    "valuations": {"type": "identical", "weights": {"f0": "1", "f1": "1"}}
  })");
  CHECK(two.relevance[1] == two.full_item_set());
  CHECK(two.relevance[0] == helpers::items_of(two, {"f0"}));

  // Same faces, wrong boundary: (0,1,2) leaves edge (1,3) outside.
  CHECK_THROWS_AS(parse_instance(R"({
    "kind": "planar-faces",
    "agents": ["p", "q", "r", "s"],
    "faces": [[0, 1, 2], [1, 2, 3]],
    "outer_boundary": [0, 1, 2],
    "valuations": {"type": "identical", "weights": {"f0": "1", "f1": "1"}}
  })"),
                  InputError);

  // A weight on a face the vertex does not touch.
  CHECK_THROWS_AS(parse_instance(R"({
    "kind": "planar-faces",
    "agents": ["p", "q", "r", "s"],
    "faces": [[0, 1, 2], [1, 2, 3]],
    "outer_boundary": [0, 1, 3, 2],
    "valuations": {"type": "additive",
                   "weights": {"p": {"f1": "1"}, "q": {"f0": "1"},
                               "r": {"f0": "1"}, "s": {"f1": "1"}}}
  })"),
                  InputError);
}

TEST_CASE("round trips") {
  auto same_after_round_trip = [](const Instance& inst) {
    std::string text = serialize_instance(inst);
    Instance back = parse_instance(text);
    CHECK(serialize_instance(back) == text);
    CHECK(back.kind == inst.kind);
    CHECK(back.agents == inst.agents);
    CHECK(back.items == inst.items);
    CHECK(back.profile == inst.profile);
    for (int i = 0; i < inst.n(); ++i)
      CHECK(back.relevance[i] == inst.relevance[i]);
    CHECK(instance_digest(back) == instance_digest(inst));
  };
  same_after_round_trip(helpers::intro_instance());
  same_after_round_trip(helpers::triangle(Q(1), Q(1, 2), Q(3)));
  same_after_round_trip(parse_instance(R"({
    "kind": "multigraph", "agents": ["u", "v"],
    "edges": [{"u": "u", "v": "v", "wu": "1", "wv": "2"},
              {"u": "u", "v": "v", "weight": "3"}]
  })"));
  same_after_round_trip(parse_instance(R"({
    "kind": "planar-faces",
    "agents": ["p", "q", "r", "s"],
    "faces": [[0, 1, 2], [1, 2, 3]],
    "outer_boundary": [0, 1, 3, 2],
    "valuations": {"type": "identical", "weights": {"f0": "1", "f1": "2"}}
  })"));
  same_after_round_trip(parse_instance(R"({
    "agents": ["Z"], "items": ["a", "b"],
    "relevance": {"Z": ["a", "b"]},
    "valuations": {"type": "table", "tables": {"Z": {
      "support": ["a", "b"],
      "values": [
        {"bundle": ["a"], "value": "0"},
        {"bundle": ["b"], "value": "1"},
        {"bundle": ["a", "b"], "value": "2"}
      ]}}}
  })"));

  Instance intro = helpers::intro_instance();
  CHECK(instance_digest(intro) != instance_digest(helpers::triangle()));
}

TEST_CASE("allocation json") {
  Instance inst = helpers::intro_instance();
  Allocation alloc = allocation_from_json(inst, Json::parse(R"({
    "bundles": {"X": ["a"], "Y": ["b", "c"]}
  })"));
  CHECK(alloc.bundles[0] == helpers::items_of(inst, {"a"}));
  CHECK(alloc.unallocated.empty());

  Json out = allocation_to_json(inst, alloc);
  Allocation back = allocation_from_json(inst, out);
  CHECK(back.bundles[1] == alloc.bundles[1]);

  CHECK_THROWS_AS(allocation_from_json(inst, Json::parse(R"({
    "bundles": {"X": ["a"], "Y": ["a"]}
  })")),
                  InputError);
  CHECK_THROWS_AS(allocation_from_json(inst, Json::parse(R"({
    "bundles": {"X": ["a"]}, "unallocated": ["b"]
  })")),
                  InputError);
  Allocation partial = allocation_from_json(inst, Json::parse(R"({
    "bundles": {"X": ["a"]}, "unallocated": ["b", "c"]
  })"));
  CHECK(partial.unallocated == helpers::items_of(inst, {"b", "c"}));
}

TEST_CASE("restriction keeps values and trust") {
  Instance inst = helpers::intro_instance();
  Instance sub = restrict_instance(inst, {0}, {0, 2});  // X with {a, c}
  CHECK(sub.n() == 1);
  CHECK(sub.items == std::vector<std::string>{"a", "c"});
  CHECK(sub.value_of(0, sub.full_item_set()) == Q(6, 5));

  Instance tri = helpers::triangle(Q(1), Q(2), Q(3));
  Instance pair = restrict_instance(tri, {0, 1}, {0});
  CHECK(pair.kind == InstanceKind::General);
  CHECK(pair.value_of(0, pair.full_item_set()) == 1);
  CHECK(pair.value_of(1, pair.full_item_set()) == 1);
}

TEST_CASE("value_of is monotone under set growth") {
  Instance tab = parse_instance(R"({
    "agents": ["Z"], "items": ["a", "b", "c"],
    "relevance": {"Z": ["a", "b", "c"]},
    "valuations": {"type": "table", "tables": {"Z": {
      "support": ["a", "b", "c"],
      "values": [
        {"bundle": ["a"], "value": "1"},
        {"bundle": ["b"], "value": "1"},
        {"bundle": ["c"], "value": "2"},
        {"bundle": ["a", "b"], "value": "3"},
        {"bundle": ["a", "c"], "value": "2"},
        {"bundle": ["b", "c"], "value": "2"},
        {"bundle": ["a", "b", "c"], "value": "3"}
      ]}}}
  })");
  for (uint32_t sub = 0; sub < 8; ++sub)
    for (uint32_t super = sub; super < 8; ++super) {
      if ((sub & super) != sub) continue;
      ItemSet s(3), t(3);
      for (int a = 0; a < 3; ++a) {
        if ((sub >> a) & 1) s.add(a);
        if ((super >> a) & 1) t.add(a);
      }
      CHECK(tab.value_of(0, s) <= tab.value_of(0, t));
    }
}
