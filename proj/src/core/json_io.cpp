#include "core/json_io.hpp"

#include <algorithm>
#include <map>
#include <set>

#include "core/errors.hpp"

namespace fairorient {

namespace {

const Json& need(const Json& j, const char* key, const std::string& where) {
  auto it = j.find(key);
  if (it == j.end())
    throw InputError(where + ": missing \"" + std::string(key) + "\"");
  return *it;
}

std::string as_string(const Json& j, const std::string& where) {
  if (!j.is_string()) throw InputError(where + ": expected a string");
  return j.get<std::string>();
}

const Json& as_object(const Json& j, const std::string& where) {
  if (!j.is_object()) throw InputError(where + ": expected an object");
  return j;
}

const Json& as_array(const Json& j, const std::string& where) {
  if (!j.is_array()) throw InputError(where + ": expected an array");
  return j;
}

std::vector<std::string> string_list(const Json& j, const std::string& where) {
  std::vector<std::string> out;
  for (const auto& e : as_array(j, where)) out.push_back(as_string(e, where));
  return out;
}

// Lookup table from id to declaration index that rejects duplicates.
struct IdIndex {
  std::map<std::string, int> pos;

  IdIndex(const std::vector<std::string>& ids, const std::string& what) {
    for (size_t i = 0; i < ids.size(); ++i)
      if (!pos.emplace(ids[i], static_cast<int>(i)).second)
        throw InputError("duplicate " + what + " id '" + ids[i] + "'");
  }

  int at(const std::string& id, const std::string& what) const {
    auto it = pos.find(id);
    if (it == pos.end())
      throw InputError("unknown " + what + " id '" + id + "'");
    return it->second;
  }
};

// Vertices may be referenced by id string or by declaration index.
int vertex_ref(const Json& j, const IdIndex& agent_of, int n,
               const std::string& where) {
  if (j.is_string()) return agent_of.at(j.get<std::string>(), "agent");
  if (j.is_number_integer()) {
    long long v = j.get<long long>();
    if (v < 0 || v >= n) throw InputError(where + ": vertex index out of range");
    return static_cast<int>(v);
  }
  throw InputError(where + ": expected a vertex id or index");
}

TableFn table_from_json(const Json& j, const IdIndex& item_of,
                        const std::string& where) {
  as_object(j, where);
  TableFn t;
  for (const auto& id : string_list(need(j, "support", where), where))
    t.support.push_back(item_of.at(id, "item"));
  std::sort(t.support.begin(), t.support.end());
  if (std::adjacent_find(t.support.begin(), t.support.end()) !=
      t.support.end())
    throw InputError(where + ": duplicate item in table support");
  if (t.support.size() > 20)
    throw InputError(where + ": table support exceeds 20 items");
  int l = static_cast<int>(t.support.size());
  t.values.assign(1u << l, Rational(0));
  std::vector<char> seen(1u << l, 0);
  for (const auto& entry : as_array(need(j, "values", where), where)) {
    as_object(entry, where);
    uint32_t mask = 0;
    for (const auto& id : string_list(need(entry, "bundle", where), where)) {
      int p = t.position_of(item_of.at(id, "item"));
      if (p < 0)
        throw InputError(where + ": bundle item '" + id +
                         "' is outside the table support");
      if ((mask >> p) & 1)
        throw InputError(where + ": duplicate item in bundle");
      mask |= 1u << p;
    }
    if (seen[mask]) throw InputError(where + ": bundle listed twice");
    seen[mask] = 1;
    t.values[mask] = rational_from_json(need(entry, "value", where), where);
  }
  for (uint32_t mask = 1; mask < (1u << l); ++mask)
    if (!seen[mask])
      throw InputError(where + ": table must list a value for every subset");
  return t;
}

Json table_to_json(const Instance& inst, const TableFn& t) {
  Json out = Json::object();
  Json sup = Json::array();
  for (int a : t.support) sup.push_back(inst.items[a]);
  out["support"] = std::move(sup);
  Json vals = Json::array();
  for (uint32_t mask = 0; mask < t.values.size(); ++mask) {
    Json bundle = Json::array();
    for (size_t p = 0; p < t.support.size(); ++p)
      if ((mask >> p) & 1) bundle.push_back(inst.items[t.support[p]]);
    vals.push_back(
        {{"bundle", std::move(bundle)}, {"value", rational_to_json(t.values[mask])}});
  }
  out["values"] = std::move(vals);
  return out;
}

// {agent: [item ids]} -> per-agent index lists.
std::vector<std::vector<int>> relevance_from_json(
    const Json& j, const std::vector<std::string>& agents,
    const IdIndex& item_of) {
  as_object(j, "relevance");
  std::vector<std::vector<int>> out;
  std::set<std::string> keys;
  for (const auto& [key, value] : j.items()) keys.insert(key);
  for (const auto& agent : agents) {
    auto it = j.find(agent);
    if (it == j.end())
      throw InputError("relevance: missing agent '" + agent + "'");
    keys.erase(agent);
    std::vector<int> rel;
    for (const auto& id : string_list(*it, "relevance"))
      rel.push_back(item_of.at(id, "item"));
    out.push_back(std::move(rel));
  }
  if (!keys.empty())
    throw InputError("relevance: unknown agent '" + *keys.begin() + "'");
  return out;
}

Instance general_like_from_json(const Json& j, InstanceKind kind,
                                std::vector<std::string> agents) {
  // Covers the "general" kind and the planar one, whose items are faces.
  std::vector<std::string> items;
  std::vector<std::array<int, 3>> faces;
  std::vector<int> boundary;
  IdIndex agent_of(agents, "agent");
  int n = static_cast<int>(agents.size());

  if (kind == InstanceKind::PlanarFaces) {
    for (const auto& f : as_array(need(j, "faces", "instance"), "faces")) {
      as_array(f, "faces");
      if (f.size() != 3)
        throw InputError("faces: each face needs exactly three vertices");
      faces.push_back({vertex_ref(f[0], agent_of, n, "faces"),
                       vertex_ref(f[1], agent_of, n, "faces"),
                       vertex_ref(f[2], agent_of, n, "faces")});
    }
    for (const auto& v :
         as_array(need(j, "outer_boundary", "instance"), "outer_boundary"))
      boundary.push_back(vertex_ref(v, agent_of, n, "outer_boundary"));
    if (j.contains("items")) {
      items = string_list(j["items"], "items");
      if (items.size() != faces.size())
        throw InputError("items: need one face id per face");
    } else {
      for (size_t a = 0; a < faces.size(); ++a)
        items.push_back("f" + std::to_string(a));
    }
  } else {
    items = string_list(need(j, "items", "instance"), "items");
  }
  IdIndex item_of(items, "item");
  int m = static_cast<int>(items.size());

  const Json& val = as_object(need(j, "valuations", "instance"), "valuations");
  std::string type = as_string(need(val, "type", "valuations"), "valuations");
  ProfileKind profile;
  std::vector<std::vector<Rational>> weights;
  std::vector<TableFn> tables;
  if (type == "additive") {
    profile = ProfileKind::Additive;
    const Json& w = as_object(need(val, "weights", "valuations"), "weights");
    weights.assign(n, std::vector<Rational>(m, Rational(0)));
    for (const auto& agent : agents) {
      auto it = w.find(agent);
      if (it == w.end())
        throw InputError("weights: missing agent '" + agent + "'");
      int i = agent_of.at(agent, "agent");
      for (const auto& [id, v] : as_object(*it, "weights").items())
        weights[i][item_of.at(id, "item")] =
            rational_from_json(v, "weights of '" + agent + "'");
    }
    for (const auto& [key, value] : w.items())
      agent_of.at(key, "agent");
  } else if (type == "table") {
    profile = ProfileKind::Table;
    const Json& ts = as_object(need(val, "tables", "valuations"), "tables");
    for (const auto& agent : agents) {
      auto it = ts.find(agent);
      if (it == ts.end())
        throw InputError("tables: missing agent '" + agent + "'");
      tables.push_back(
          table_from_json(*it, item_of, "table of '" + agent + "'"));
    }
    for (const auto& [key, value] : ts.items())
      agent_of.at(key, "agent");
  } else if (type == "identical") {
    bool has_w = val.contains("weights"), has_t = val.contains("table");
    if (has_w == has_t)
      throw InputError(
          "identical valuations need exactly one of \"weights\" or \"table\"");
    if (has_w) {
      profile = ProfileKind::IdenticalAdditive;
      weights.assign(1, std::vector<Rational>(m, Rational(0)));
      for (const auto& [id, v] : as_object(val["weights"], "weights").items())
        weights[0][item_of.at(id, "item")] = rational_from_json(v, "weights");
    } else {
      profile = ProfileKind::IdenticalTable;
      tables.push_back(table_from_json(val["table"], item_of, "shared table"));
    }
  } else {
    throw InputError("valuations: unknown type '" + type + "'");
  }

  if (kind == InstanceKind::PlanarFaces) {
    // Relevance is the face incidence; a declared block must agree.
    Instance inst = make_planar_instance(std::move(agents), std::move(faces),
                                         std::move(boundary), profile,
                                         std::move(weights), std::move(tables));
    inst.items = std::move(items);
    if (profile == ProfileKind::Additive)
      for (int i = 0; i < inst.n(); ++i)
        for (int a = 0; a < inst.m(); ++a)
          if (inst.weights[i][a] != 0 && !inst.relevance[i].contains(a))
            throw InputError("weights: agent '" + inst.agents[i] +
                             "' weights a face it does not touch");
    if (j.contains("relevance")) {
      auto declared = relevance_from_json(j["relevance"], inst.agents, item_of);
      for (int i = 0; i < inst.n(); ++i) {
        ItemSet s(inst.m());
        for (int a : declared[i]) s.add(a);
        if (s != inst.relevance[i])
          throw InputError("relevance of '" + inst.agents[i] +
                           "' must match the faces it touches");
      }
    }
    return inst;
  }

  auto relevance = relevance_from_json(need(j, "relevance", "instance"),
                                       agents, item_of);
  return make_general_instance(std::move(agents), std::move(items),
                               std::move(relevance), profile,
                               std::move(weights), std::move(tables));
}

Instance graph_from_json(const Json& j, InstanceKind kind,
                         std::vector<std::string> agents) {
  IdIndex agent_of(agents, "agent");
  int n = static_cast<int>(agents.size());

  std::string type = "graph-symmetric";
  if (j.contains("valuations"))
    type = as_string(need(as_object(j["valuations"], "valuations"), "type",
                          "valuations"),
                     "valuations");
  bool tabled = type == "table";
  if (!tabled && type != "graph-symmetric")
    throw InputError("valuations: graph kinds take type \"graph-symmetric\" "
                     "or \"table\"");

  std::vector<GraphEdge> edges;
  for (const auto& ej : as_array(need(j, "edges", "instance"), "edges")) {
    as_object(ej, "edges");
    GraphEdge e;
    e.u = vertex_ref(need(ej, "u", "edges"), agent_of, n, "edges");
    e.v = vertex_ref(need(ej, "v", "edges"), agent_of, n, "edges");
    e.id = ej.contains("id") ? as_string(ej["id"], "edge id")
                             : "e" + std::to_string(edges.size());
    bool has_w = ej.contains("weight");
    bool has_uv = ej.contains("wu") || ej.contains("wv");
    if (tabled) {
      if (has_w || has_uv)
        throw InputError("edge '" + e.id +
                         "': table-valued graphs take no edge weights");
    } else if (has_w) {
      if (has_uv)
        throw InputError("edge '" + e.id +
                         "': give \"weight\" or \"wu\"/\"wv\", not both");
      e.wu = e.wv = rational_from_json(ej["weight"], "edge '" + e.id + "'");
    } else {
      if (!ej.contains("wu") || !ej.contains("wv"))
        throw InputError("edge '" + e.id +
                         "': needs \"weight\" or both \"wu\" and \"wv\"");
      e.wu = rational_from_json(ej["wu"], "edge '" + e.id + "'");
      e.wv = rational_from_json(ej["wv"], "edge '" + e.id + "'");
    }
    edges.push_back(std::move(e));
  }

  std::vector<std::string> edge_ids;
  for (const auto& e : edges) edge_ids.push_back(e.id);
  IdIndex item_of(edge_ids, "item");

  std::vector<TableFn> tables;
  if (tabled) {
    const Json& ts =
        as_object(need(j["valuations"], "tables", "valuations"), "tables");
    for (const auto& agent : agents) {
      auto it = ts.find(agent);
      if (it == ts.end())
        throw InputError("tables: missing vertex '" + agent + "'");
      tables.push_back(
          table_from_json(*it, item_of, "table of '" + agent + "'"));
    }
    for (const auto& [key, value] : ts.items())
      agent_of.at(key, "agent");
  }

  if (j.contains("items")) {
    auto listed = string_list(j["items"], "items");
    if (listed != edge_ids)
      throw InputError("items must match the edge ids in order");
  }
  Instance inst = make_graph_instance(kind, std::move(agents),
                                      std::move(edges), std::move(tables));
  if (j.contains("relevance")) {
    auto declared = relevance_from_json(j["relevance"], inst.agents, item_of);
    for (int i = 0; i < inst.n(); ++i) {
      ItemSet s(inst.m());
      for (int a : declared[i]) s.add(a);
      if (s != inst.relevance[i])
        throw InputError("relevance of '" + inst.agents[i] +
                         "' must match its incident edges");
    }
  }
  return inst;
}

Json relevance_to_json(const Instance& inst) {
  Json out = Json::object();
  for (int i = 0; i < inst.n(); ++i) {
    Json rel = Json::array();
    for (int a : inst.relevance[i].to_vector()) rel.push_back(inst.items[a]);
    out[inst.agents[i]] = std::move(rel);
  }
  return out;
}

Json valuations_to_json(const Instance& inst) {
  Json val = Json::object();
  switch (inst.profile) {
    case ProfileKind::Additive: {
      if (inst.kind == InstanceKind::Graph ||
          inst.kind == InstanceKind::Multigraph) {
        val["type"] = "graph-symmetric";
        break;
      }
      val["type"] = "additive";
      Json w = Json::object();
      for (int i = 0; i < inst.n(); ++i) {
        Json row = Json::object();
        for (int a = 0; a < inst.m(); ++a) {
          if (inst.kind == InstanceKind::PlanarFaces &&
              !inst.relevance[i].contains(a))
            continue;
          row[inst.items[a]] = rational_to_json(inst.weights[i][a]);
        }
        w[inst.agents[i]] = std::move(row);
      }
      val["weights"] = std::move(w);
      break;
    }
    case ProfileKind::Table: {
      val["type"] = "table";
      Json ts = Json::object();
      for (int i = 0; i < inst.n(); ++i)
        ts[inst.agents[i]] = table_to_json(inst, inst.tables[i]);
      val["tables"] = std::move(ts);
      break;
    }
    case ProfileKind::IdenticalAdditive: {
      val["type"] = "identical";
      Json w = Json::object();
      for (int a = 0; a < inst.m(); ++a)
        w[inst.items[a]] = rational_to_json(inst.weights[0][a]);
      val["weights"] = std::move(w);
      break;
    }
    case ProfileKind::IdenticalTable:
      val["type"] = "identical";
      val["table"] = table_to_json(inst, inst.tables[0]);
      break;
  }
  return val;
}

}  // namespace

Rational rational_from_json(const Json& j, const std::string& where) {
  if (j.is_string()) {
    auto r = parse_rational(j.get<std::string>());
    if (!r)
      throw InputError(where + ": '" + j.get<std::string>() +
                       "' is not a rational");
    return *r;
  }
  if (j.is_number_integer()) return Rational(j.get<long long>());
  if (j.is_number_unsigned()) return Rational(j.get<unsigned long long>());
  if (j.is_number_float())
    throw InputError(where +
                     ": write non-integer numbers as strings (\"p/q\" or "
                     "decimal) to keep them exact");
  throw InputError(where + ": expected a rational");
}

Json rational_to_json(const Rational& r) { return format_rational(r); }

Instance instance_from_json(const Json& j) {
  as_object(j, "instance");
  std::string kind_str = "general";
  if (j.contains("kind")) kind_str = as_string(j["kind"], "kind");
  InstanceKind kind;
  if (kind_str == "general") kind = InstanceKind::General;
  else if (kind_str == "graph") kind = InstanceKind::Graph;
  else if (kind_str == "multigraph") kind = InstanceKind::Multigraph;
  else if (kind_str == "planar-faces") kind = InstanceKind::PlanarFaces;
  else throw InputError("unknown instance kind '" + kind_str + "'");

  auto agents = string_list(need(j, "agents", "instance"), "agents");
  if (kind == InstanceKind::Graph || kind == InstanceKind::Multigraph)
    return graph_from_json(j, kind, std::move(agents));
  return general_like_from_json(j, kind, std::move(agents));
}

Json instance_to_json(const Instance& inst) {
  Json out = Json::object();
  out["kind"] = kind_name(inst.kind);
  out["agents"] = inst.agents;
  out["items"] = inst.items;
  out["relevance"] = relevance_to_json(inst);
  out["valuations"] = valuations_to_json(inst);
  if (inst.kind == InstanceKind::Graph ||
      inst.kind == InstanceKind::Multigraph) {
    Json edges = Json::array();
    for (const auto& e : inst.edges) {
      Json ej = Json::object();
      ej["u"] = inst.agents[e.u];
      ej["v"] = inst.agents[e.v];
      ej["id"] = e.id;
      if (inst.profile == ProfileKind::Additive) {
        if (e.wu == e.wv) {
          ej["weight"] = rational_to_json(e.wu);
        } else {
          ej["wu"] = rational_to_json(e.wu);
          ej["wv"] = rational_to_json(e.wv);
        }
      }
      edges.push_back(std::move(ej));
    }
    out["edges"] = std::move(edges);
  }
  if (inst.kind == InstanceKind::PlanarFaces) {
    Json faces = Json::array();
    for (const auto& f : inst.faces) faces.push_back({f[0], f[1], f[2]});
    out["faces"] = std::move(faces);
    out["outer_boundary"] = inst.outer_boundary;
  }
  return out;
}

Instance parse_instance(const std::string& text) {
  return instance_from_json(parse_json_text(text));
}

std::string serialize_instance(const Instance& inst) {
  return dump_json(instance_to_json(inst));
}

Allocation allocation_from_json(const Instance& inst, const Json& j) {
  as_object(j, "allocation");
  Allocation out = inst.empty_allocation();
  ItemSet used(inst.m());
  const Json& bundles = as_object(need(j, "bundles", "allocation"), "bundles");
  for (const auto& [agent, list] : bundles.items()) {
    int i = inst.agent_index(agent);
    if (i < 0) throw InputError("allocation: unknown agent '" + agent + "'");
    for (const auto& id : string_list(list, "bundle of '" + agent + "'")) {
      int a = inst.item_index(id);
      if (a < 0) throw InputError("allocation: unknown item '" + id + "'");
      if (used.contains(a))
        throw InputError("allocation: item '" + id + "' appears twice");
      used.add(a);
      out.bundles[i].add(a);
    }
  }
  out.unallocated = inst.full_item_set() - used;
  if (j.contains("unallocated")) {
    ItemSet claimed(inst.m());
    for (const auto& id : string_list(j["unallocated"], "unallocated")) {
      int a = inst.item_index(id);
      if (a < 0) throw InputError("allocation: unknown item '" + id + "'");
      if (used.contains(a))
        throw InputError("allocation: item '" + id +
                         "' is both allocated and unallocated");
      claimed.add(a);
    }
    if (claimed != out.unallocated)
      throw InputError(
          "allocation: \"unallocated\" must list exactly the leftover items");
  }
  return out;
}

Json allocation_to_json(const Instance& inst, const Allocation& alloc) {
  Json out = Json::object();
  Json bundles = Json::object();
  for (int i = 0; i < inst.n(); ++i) {
    Json list = Json::array();
    for (int a : alloc.bundles[i].to_vector()) list.push_back(inst.items[a]);
    bundles[inst.agents[i]] = std::move(list);
  }
  out["bundles"] = std::move(bundles);
  Json rest = Json::array();
  for (int a : alloc.unallocated.to_vector()) rest.push_back(inst.items[a]);
  out["unallocated"] = std::move(rest);
  return out;
}

std::pair<Instance, Allocation> parse_check_file(const std::string& text) {
  Json j = parse_json_text(text);
  as_object(j, "check file");
  Instance inst = instance_from_json(need(j, "instance", "check file"));
  Allocation alloc =
      allocation_from_json(inst, need(j, "allocation", "check file"));
  return {std::move(inst), std::move(alloc)};
}

Json parse_json_text(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw InputError(std::string("invalid JSON: ") + e.what());
  }
}

std::string dump_json(const Json& j) { return j.dump(2) + "\n"; }

std::string digest64(const std::string& bytes) {
  uint64_t h = 14695981039346656037ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 1099511628211ull;
  }
  static const char* hex = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 15; i >= 0; --i) {
    out[i] = hex[h & 0xf];
    h >>= 4;
  }
  return out;
}

std::string instance_digest(const Instance& inst) {
  return digest64(instance_to_json(inst).dump());
}

}  // namespace fairorient
