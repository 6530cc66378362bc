#include "efx/fpt.hpp"

#include <algorithm>
#include <functional>
#include <set>

#include "core/errors.hpp"
#include "core/instance.hpp"
#include "verify/verify.hpp"

namespace fairorient {

namespace {

int8_t side_toward(const Instance& g, int e, int receiver) {
  return g.edges[e].u == receiver ? 0 : 1;
}

int head_of(const Instance& g, int e, int8_t side) {
  return side == 0 ? g.edges[e].u : g.edges[e].v;
}

Rational edge_value(const Instance& g, int agent, int e) {
  ItemSet s(g.m());
  s.add(e);
  return g.value_of(agent, s);
}

const Instance& require_layout_fit(const Instance& g, const TreeLayout& t) {
  if (g.kind != InstanceKind::Graph || g.multi) {
    throw InputError("record propagation needs a simple graph instance");
  }
  bool fits = t.n() == g.n() && static_cast<int>(t.edge_ends.size()) == g.m();
  for (int e = 0; fits && e < g.m(); ++e) {
    fits = t.edge_ends[e] ==
           std::make_pair(std::min(g.edges[e].u, g.edges[e].v),
                          std::max(g.edges[e].u, g.edges[e].v));
  }
  if (!fits) throw InputError("layout does not match the instance");
  return g;
}

}  // namespace

RecordSet leaf_records(const Instance& g, const TreeLayout& t, int v) {
  require_layout_fit(g, t);
  if (!t.children[v].empty()) throw InputError("leaf_records needs a layout leaf");
  const auto& inc = t.crossing[v];
  const int d = static_cast<int>(inc.size());
  if (d > 25) throw LimitError("leaf degree exceeds the record enumeration cap");
  RecordSet out;
  for (int mask = 0; mask < (1 << d); ++mask) {
    Record rec;
    rec.sides.resize(d);
    ItemSet own(g.m());
    for (int i = 0; i < d; ++i) {
      int8_t to_v = side_toward(g, inc[i], v);
      bool keeps = (mask >> i) & 1;
      rec.sides[i] = keeps ? to_v : static_cast<int8_t>(1 - to_v);
      if (keeps) own.add(inc[i]);
    }
    Rational own_val = g.value_of(v, own);
    // A neighbor that received the shared edge has in-degree one and may be
    // marked; it must be marked when v envies it. Nothing else is markable,
    // except v itself when it received exactly one edge.
    std::vector<int> forced;
    std::vector<int> optional;
    for (int i = 0; i < d; ++i) {
      if ((mask >> i) & 1) continue;
      int w = g.edges[inc[i]].u == v ? g.edges[inc[i]].v : g.edges[inc[i]].u;
      if (edge_value(g, v, inc[i]) > own_val) {
        forced.push_back(w);
      } else {
        optional.push_back(w);
      }
    }
    if (own.count() == 1) optional.push_back(v);
    std::sort(optional.begin(), optional.end());
    const int opt_n = static_cast<int>(optional.size());
    for (int sub = 0; sub < (1 << opt_n); ++sub) {
      Record r = rec;
      r.marks = forced;
      for (int i = 0; i < opt_n; ++i) {
        if ((sub >> i) & 1) r.marks.push_back(optional[i]);
      }
      std::sort(r.marks.begin(), r.marks.end());
      out.emplace(std::move(r), Provenance{});
    }
  }
  return out;
}

namespace {

// A closed child can hold six records: with the shared edge oriented toward
// the child, only the child itself is markable (the parent never receives
// anything there); with the edge oriented toward the parent, the marks range
// over both endpoints, and deep subtrees really do produce the
// child-self-marked variants. The parent only ever needs to know whether the
// edge can come its way without the parent being envied, so the child-mark
// distinction collapses into the two pick helpers below.
struct ClosedChild {
  int pos = 0;
  int child = 0;
  int edge = 0;
  Rational val;
  Record r_tv_none, r_tv_markv, r_tv_markc, r_tv_both;  // edge toward v
  Record r_tc_none, r_tc_markc;                         // edge toward child
  bool tv_none = false, tv_markv = false, tv_markc = false, tv_both = false;
  bool tc_none = false, tc_markc = false;

  bool tv_v_unmarked() const { return tv_none || tv_markc; }
  bool tv_any() const { return tv_none || tv_markc || tv_markv || tv_both; }
  const Record& pick_tv_v_unmarked() const { return tv_none ? r_tv_none : r_tv_markc; }
  const Record& pick_tv() const {
    if (tv_none) return r_tv_none;
    if (tv_markc) return r_tv_markc;
    if (tv_markv) return r_tv_markv;
    return r_tv_both;
  }
};

}  // namespace

RecordSet combine_records(const Instance& g, const TreeLayout& t, int v,
                          const std::vector<const RecordSet*>& kid_sets) {
  require_layout_fit(g, t);
  const auto& kids = t.children[v];
  if (kids.empty()) throw InputError("combine_records needs an internal vertex");
  if (kid_sets.size() != kids.size()) throw InputError("child record sets misaligned");
  const int n = g.n();
  const int m = g.m();
  RecordSet out;

  const Record empty_rec;
  std::vector<int> open_pos;
  std::vector<ClosedChild> closed;
  std::set<int> closed_kids;
  for (size_t p = 0; p < kids.size(); ++p) {
    int c = kids[p];
    if (kid_sets[p]->empty()) return {};
    if (t.kind[c] == ChildKind::Detached) {
      if (!kid_sets[p]->count(empty_rec)) return {};
    } else if (t.kind[c] == ChildKind::Closed) {
      ClosedChild cc;
      cc.pos = static_cast<int>(p);
      cc.child = c;
      cc.edge = t.closed_edge[c];
      cc.val = edge_value(g, v, cc.edge);
      int8_t sv = side_toward(g, cc.edge, v);
      int8_t sc = static_cast<int8_t>(1 - sv);
      cc.r_tv_none = Record{{sv}, {}};
      cc.r_tv_markv = Record{{sv}, {v}};
      cc.r_tv_markc = Record{{sv}, {c}};
      cc.r_tv_both = Record{{sv}, {std::min(c, v), std::max(c, v)}};
      cc.r_tc_none = Record{{sc}, {}};
      cc.r_tc_markc = Record{{sc}, {c}};
      cc.tv_none = kid_sets[p]->count(cc.r_tv_none) != 0;
      cc.tv_markv = kid_sets[p]->count(cc.r_tv_markv) != 0;
      cc.tv_markc = kid_sets[p]->count(cc.r_tv_markc) != 0;
      cc.tv_both = kid_sets[p]->count(cc.r_tv_both) != 0;
      cc.tc_none = kid_sets[p]->count(cc.r_tc_none) != 0;
      cc.tc_markc = kid_sets[p]->count(cc.r_tc_markc) != 0;
      closed.push_back(cc);
      closed_kids.insert(c);
    } else {
      open_pos.push_back(static_cast<int>(p));
    }
  }

  std::vector<std::pair<int, int>> v_edges;  // (other endpoint, edge)
  for (int e = 0; e < m; ++e) {
    if (g.edges[e].u == v) v_edges.emplace_back(g.edges[e].v, e);
    if (g.edges[e].v == v) v_edges.emplace_back(g.edges[e].u, e);
  }
  std::vector<std::pair<int, int>> open_nbrs;  // neighbors except closed children
  for (auto [w, e] : v_edges) {
    if (!closed_kids.count(w)) open_nbrs.emplace_back(w, e);
  }

  std::vector<int> v0;
  for (int w : t.boundary[v]) {
    bool inside = false;
    for (int c : kids) {
      if (t.subtree[c].contains(w)) {
        inside = true;
        break;
      }
    }
    if (!inside) v0.push_back(w);
  }
  std::vector<std::pair<int, int>> v0_edges;  // (outside endpoint, edge)
  for (auto [w, e] : v_edges) {
    if (std::binary_search(v0.begin(), v0.end(), w)) v0_edges.emplace_back(w, e);
  }

  const bool v_on_boundary = t.in_boundary(v, v);
  std::vector<Rational> eval(m);  // v's value of each incident edge
  for (auto [w, e] : v_edges) eval[e] = edge_value(g, v, e);

  std::vector<int8_t> arc(m, -1);
  std::vector<char> marked(n, 0);
  std::vector<int> cur_marks;
  std::vector<const Record*> open_choice(open_pos.size(), nullptr);

  auto add_record = [&](Record&& rec, const Rational* s_case1,
                        const ClosedChild* provider, const Rational* s_case2,
                        const std::vector<char>* holder_flags) {
    // Builds the provenance that the per-case closed-children choices call
    // for, then stores the record if it is new.
    if (out.count(rec)) return;
    Provenance prov;
    prov.child_choice.assign(kids.size(), Record{});
    for (size_t d = 0; d < open_pos.size(); ++d) {
      prov.child_choice[open_pos[d]] = *open_choice[d];
    }
    for (size_t ci = 0; ci < closed.size(); ++ci) {
      const ClosedChild& cc = closed[ci];
      Record pick;
      if (provider && provider->child == cc.child) {
        pick = cc.tv_v_unmarked() ? cc.pick_tv_v_unmarked() : cc.pick_tv();
      } else if (s_case1) {
        pick = cc.val > *s_case1 ? cc.r_tc_markc : cc.r_tc_none;
      } else if (s_case2) {
        bool holds = holder_flags && (*holder_flags)[ci];
        if (holds) {
          pick = cc.pick_tv_v_unmarked();
        } else {
          pick = cc.val > *s_case2 ? cc.r_tc_markc : cc.r_tc_none;
        }
      } else {
        // no incoming value at v: envied closed children must be marked
        pick = cc.val > Rational(0) ? cc.r_tc_markc : cc.r_tc_none;
      }
      prov.child_choice[cc.pos] = std::move(pick);
    }
    out.emplace(std::move(rec), std::move(prov));
  };

  auto run_cases = [&]() {
    // R' is the set of decided arcs; compute in-degrees over it.
    std::vector<int> indeg(n, 0);
    std::vector<int> v_in_edges;
    for (int e = 0; e < m; ++e) {
      if (arc[e] >= 0) {
        int h = head_of(g, e, arc[e]);
        ++indeg[h];
        if (h == v) v_in_edges.push_back(e);
      }
    }
    for (int w : cur_marks) {
      if (indeg[w] >= 2) return;  // a marked vertex cannot receive twice
    }

    Record base;
    base.sides.resize(t.crossing[v].size());
    for (size_t i = 0; i < t.crossing[v].size(); ++i) {
      if (arc[t.crossing[v][i]] < 0) {
        throw InternalError("crossing edge left unoriented during record merge");
      }
      base.sides[i] = arc[t.crossing[v][i]];
    }

    std::vector<int> s0_cands;
    for (int u : v0) {
      if (u != v && !marked[u] && indeg[u] == 1) s0_cands.push_back(u);
    }
    const int s0_n = static_cast<int>(s0_cands.size());
    if (s0_n > 25) throw LimitError("record branching exceeds the enumeration cap");

    const int indeg_v = indeg[v];
    for (int s0 = 0; s0 < (1 << s0_n); ++s0) {
      std::vector<int> extra;
      for (int i = 0; i < s0_n; ++i) {
        if ((s0 >> i) & 1) extra.push_back(s0_cands[i]);
      }
      auto in_s = [&](int w) {
        return marked[w] || std::binary_search(extra.begin(), extra.end(), w);
      };
      std::vector<int> s_base;
      for (int w : t.boundary[v]) {
        if (w != v && in_s(w)) s_base.push_back(w);
      }
      const bool v_marked = marked[v];
      auto make = [&](bool with_v) {
        Record r = base;
        r.marks = s_base;
        if ((with_v || v_marked) && v_on_boundary) {
          r.marks.insert(std::lower_bound(r.marks.begin(), r.marks.end(), v), v);
        }
        return r;
      };

      if (indeg_v == 0) {
        // Case: v keeps nothing, so every positively valued neighbor and
        // closed child must end up marked.
        bool ok = true;
        for (const ClosedChild& cc : closed) {
          if (!(cc.val > Rational(0) ? cc.tc_markc : cc.tc_none)) ok = false;
        }
        for (auto [w, e] : open_nbrs) {
          if (ok && eval[e] > Rational(0) && !in_s(w)) ok = false;
        }
        if (ok) add_record(make(false), nullptr, nullptr, nullptr, nullptr);

        // Case: one closed child supplies v's single edge. Whether the child
        // marks itself is its own business; the unmarked result additionally
        // needs a derivation in which v is not envied from below.
        for (const ClosedChild& prov_cc : closed) {
          if (!prov_cc.tv_any()) continue;
          const Rational& si = prov_cc.val;
          bool fits = true;
          for (const ClosedChild& cc : closed) {
            if (cc.child == prov_cc.child) continue;
            if (!cc.tc_none) fits = false;
            if (cc.val > si && !cc.tc_markc) fits = false;
          }
          for (auto [w, e] : open_nbrs) {
            if (fits && !in_s(w) && eval[e] > si) fits = false;
          }
          if (!fits) continue;
          Rational si_copy = si;
          add_record(make(true), &si_copy, &prov_cc, nullptr, nullptr);
          if (prov_cc.tv_v_unmarked()) {
            add_record(make(false), &si_copy, &prov_cc, nullptr, nullptr);
          }
        }
      } else if (indeg_v == 1) {
        // Case: v's single edge arrives from the open side.
        bool ok = true;
        for (const ClosedChild& cc : closed) {
          if (!cc.tc_none) ok = false;
        }
        const Rational s1 = eval[v_in_edges[0]];
        if (ok) {
          for (const ClosedChild& cc : closed) {
            if (cc.val > s1 && !cc.tc_markc) ok = false;
          }
          for (auto [w, e] : open_nbrs) {
            if (ok && !in_s(w) && eval[e] > s1) ok = false;
          }
        }
        if (ok) {
          add_record(make(false), &s1, nullptr, nullptr, nullptr);
          add_record(make(true), &s1, nullptr, nullptr, nullptr);
        }
      }

      if (!v_marked) {
        // Case: v is never envied, so give it every edge it can still take
        // and check the rest against that bundle.
        bool ok = true;
        std::vector<char> holder(closed.size(), 0);
        ItemSet bundle(m);
        for (int e : v_in_edges) bundle.add(e);
        for (size_t ci = 0; ci < closed.size(); ++ci) {
          if (closed[ci].tv_v_unmarked()) {
            holder[ci] = 1;
            bundle.add(closed[ci].edge);
          } else if (!closed[ci].tc_none) {
            ok = false;
          }
        }
        if (ok) {
          const Rational s2 = g.value_of(v, bundle);
          for (const ClosedChild& cc : closed) {
            if (cc.val > s2 && !cc.tc_markc) ok = false;
          }
          for (auto [w, e] : open_nbrs) {
            if (ok && !in_s(w) && eval[e] > s2) ok = false;
          }
          if (ok) add_record(make(false), nullptr, nullptr, &s2, &holder);
        }
      }
    }
  };

  const int v0e_n = static_cast<int>(v0_edges.size());
  if (v0e_n > 25) throw LimitError("record branching exceeds the enumeration cap");
  std::function<void(size_t)> descend = [&](size_t d) {
    if (d == open_pos.size()) {
      for (int r0 = 0; r0 < (1 << v0e_n); ++r0) {
        std::vector<int> touched;
        for (size_t i = 0; i < v0_edges.size(); ++i) {
          auto [u, e] = v0_edges[i];
          arc[e] = ((r0 >> i) & 1) ? side_toward(g, e, v) : side_toward(g, e, u);
          touched.push_back(e);
        }
        run_cases();
        for (int e : touched) arc[e] = -1;
      }
      return;
    }
    int c = kids[open_pos[d]];
    const auto& cross = t.crossing[c];
    for (const auto& [crec, cprov] : *kid_sets[open_pos[d]]) {
      (void)cprov;
      bool ok = true;
      std::vector<int> touched_arcs;
      for (size_t i = 0; i < cross.size(); ++i) {
        int e = cross[i];
        if (arc[e] < 0) {
          arc[e] = crec.sides[i];
          touched_arcs.push_back(e);
        } else if (arc[e] != crec.sides[i]) {
          ok = false;
          break;
        }
      }
      std::vector<int> touched_marks;
      if (ok) {
        // marks already placed inside this child's subtree must be its own
        for (int w : cur_marks) {
          if (t.subtree[c].contains(w) &&
              !std::binary_search(crec.marks.begin(), crec.marks.end(), w)) {
            ok = false;
            break;
          }
        }
      }
      if (ok) {
        for (int w : crec.marks) {
          if (marked[w]) continue;
          // a fresh mark landing in an earlier sibling's subtree would have
          // had to be that sibling's own mark
          for (size_t d2 = 0; d2 < d && ok; ++d2) {
            if (t.subtree[kids[open_pos[d2]]].contains(w)) ok = false;
          }
          if (!ok) break;
          marked[w] = 1;
          cur_marks.push_back(w);
          touched_marks.push_back(w);
        }
      }
      if (ok) {
        open_choice[d] = &crec;
        descend(d + 1);
        open_choice[d] = nullptr;
      }
      for (int w : touched_marks) {
        marked[w] = 0;
        cur_marks.pop_back();
      }
      for (int e : touched_arcs) arc[e] = -1;
    }
  };
  descend(0);
  return out;
}

EfxDecision decide_efx(const Instance& g, const TreeLayout& t, bool want_witness) {
  require_layout_fit(g, t);
  const int n = g.n();
  std::vector<RecordSet> sets(n);
  for (int v : t.postorder) {
    if (t.children[v].empty()) {
      sets[v] = leaf_records(g, t, v);
    } else {
      std::vector<const RecordSet*> kid_sets;
      for (int c : t.children[v]) kid_sets.push_back(&sets[c]);
      sets[v] = combine_records(g, t, v, kid_sets);
    }
  }

  EfxDecision result;
  const Record empty_rec;
  result.exists = sets[t.root].count(empty_rec) != 0;
  if (!result.exists || !want_witness) return result;

  OrientationVector ov;
  ov.side.assign(g.m(), -1);
  std::function<void(int, const Record&)> walk = [&](int v, const Record& rec) {
    auto it = sets[v].find(rec);
    if (it == sets[v].end()) {
      throw InternalError("record derivation referenced a missing child record");
    }
    const auto& cross = t.crossing[v];
    for (size_t i = 0; i < cross.size(); ++i) {
      int e = cross[i];
      if (ov.side[e] == -1) {
        ov.side[e] = rec.sides[i];
      } else if (ov.side[e] != rec.sides[i]) {
        throw InternalError("record derivation oriented an edge both ways");
      }
    }
    for (size_t p = 0; p < t.children[v].size(); ++p) {
      walk(t.children[v][p], it->second.child_choice[p]);
    }
  };
  walk(t.root, empty_rec);
  for (int e = 0; e < g.m(); ++e) {
    if (ov.side[e] == -1) throw InternalError("record derivation left an edge unoriented");
  }

  Allocation alloc = orientation_to_allocation(g, ov);
  if (!check_orientation(g, alloc).holds || !check_efx(g, alloc).holds) {
    throw InternalError("record propagation produced an unfair orientation");
  }
  result.witness = std::move(ov);
  return result;
}

}  // namespace fairorient
