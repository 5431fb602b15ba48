#include "ccx/records.hpp"

namespace ccx::records {

std::string to_string(TriBool t) {
  switch (t) {
    case TriBool::yes: return "yes";
    case TriBool::no: return "no";
    default: return "undecided";
  }
}

std::string to_string(Finiteness f) {
  switch (f) {
    case Finiteness::h_finite: return "h-finite";
    case Finiteness::h_infinite_at_truncation: return "h-infinite-at-truncation";
    default: return "inconclusive";
  }
}

std::string to_string(OracleMode m) {
  return m == OracleMode::exact ? "exact" : "witness-bounded";
}

std::string to_string(EvidenceKind k) {
  switch (k) {
    case EvidenceKind::infinite_with_certificate: return "infinite-with-certificate";
    case EvidenceKind::infinite_with_witness: return "infinite-with-witness";
    case EvidenceKind::no_witness_up_to: return "no-witness-up-to";
    default: return "trivial-exact";
  }
}

std::string to_string(SplitOutcome o) {
  switch (o) {
    case SplitOutcome::splitting_exhibited: return "splitting-exhibited";
    case SplitOutcome::point_tree: return "point-tree";
    default: return "inconclusive-at-truncation";
  }
}

json word_list(const GroupSpec& G, const std::vector<Word>& words) {
  json out = json::array();
  for (const auto& w : words) out.push_back(G.format(w));
  return out;
}

json profile(const FinitenessProfile& p) {
  json out;
  out["counts"] = p.counts;
  out["class"] = to_string(p.cls);
  if (p.cls == Finiteness::h_finite) out["stable_count"] = p.stable_count;
  return out;
}

json evidence(const GroupSpec& G, const IntersectionEvidence& e) {
  json out;
  out["kind"] = to_string(e.kind);
  if (e.element) out["element"] = G.format(*e.element);
  if (e.kind == EvidenceKind::infinite_with_witness || e.kind == EvidenceKind::no_witness_up_to)
    out["searched_radius"] = e.searched_radius;
  return out;
}

json subgroup_graph(const GroupSpec& G, const SubgroupGraph& g) {
  json out;
  out["vertices"] = g.vertex_count();
  out["edges"] = g.edge_count();
  out["rank"] = g.cycle_rank();
  out["trivial"] = g.is_trivial();
  out["finite_index"] = g.is_complete();
  out["basis"] = word_list(G, g.free_basis());
  return out;
}

json intersection(const GroupSpec& G, const IntersectionReport& r) {
  json out;
  out["components"] = r.components.size();
  json comps = json::array();
  for (const auto& c : r.components) {
    json entry;
    entry["coset_rep"] = G.format(c.coset_rep);
    entry["basepoint"] = c.is_basepoint;
    entry["class"] = c.cls == ComponentClass::trivial ? "trivial" : "infinite-cyclic-or-bigger";
    entry["graph"] = subgroup_graph(G, c.graph);
    comps.push_back(std::move(entry));
  }
  out["component_list"] = std::move(comps);
  return out;
}

json ccomplex(const GroupSpec& G, const CComplex& c) {
  json out;
  out["mode"] = to_string(c.mode);
  out["radius"] = c.radius;
  out["dim_cap"] = c.dim_cap;
  out["vertices"] = c.vertices.size();
  out["edges"] = c.edges.size();
  json cosets = json::array();
  for (const auto& v : c.vertices) {
    json entry;
    entry["representative"] = G.format(v.representative);
    entry["ball_vertices"] = v.ball_vertices.size();
    cosets.push_back(std::move(entry));
  }
  out["cosets"] = std::move(cosets);
  json edges = json::array();
  for (const auto& e : c.edges) {
    json entry;
    entry["u"] = e.u;
    entry["v"] = e.v;
    entry["evidence"] = evidence(G, e.evidence);
    edges.push_back(std::move(entry));
  }
  out["edge_list"] = std::move(edges);
  json higher = json::array();
  for (std::size_t k = 0; k < c.higher_cells.size(); ++k)
    higher.push_back({{"dimension", k + 2}, {"cells", c.higher_cells[k].size()}});
  out["higher_cells"] = std::move(higher);
  return out;
}

json components(const ComponentReport& r) {
  json out;
  out["count"] = r.count;
  out["component_of"] = r.component_of;
  out["connected"] = r.is_connected;
  out["totally_disconnected"] = r.is_totally_disconnected;
  out["at_truncation"] = r.at_truncation;
  return out;
}

json boundary(const BoundaryReport& r) {
  json out;
  out["size"] = r.vertices.size();
  out["complete"] = r.complete;
  out["rim_incomplete"] = r.rim_incomplete.size();
  return out;
}

json nontriviality(const NontrivialityReport& r) {
  json out;
  out["invariant"] = to_string(r.invariant);
  out["boundary_profile"] = profile(r.boundary_profile);
  out["set_profile"] = profile(r.set_profile);
  out["complement_profile"] = profile(r.complement_profile);
  out["nontrivial"] = to_string(r.nontrivial);
  return out;
}

json corner_quad(const CornerQuad& q) {
  static const char* names[4] = {"X&Y", "X*&Y", "X&Y*", "X*&Y*"};
  json out = json::array();
  for (int i = 0; i < 4; ++i) {
    json entry;
    entry["corner"] = names[i];
    entry["size"] = q.corner[static_cast<std::size_t>(i)].count();
    entry["wrt_x"] = profile(q.wrt_x[static_cast<std::size_t>(i)]);
    entry["wrt_y"] = profile(q.wrt_y[static_cast<std::size_t>(i)]);
    out.push_back(std::move(entry));
  }
  return out;
}

json crossing(const CrossingReport& r) {
  json out;
  out["forward"] = to_string(r.forward);
  out["reverse"] = to_string(r.reverse);
  out["symmetry_consistent"] = r.symmetry_consistent;
  out["corners"] = corner_quad(r.quad);
  return out;
}

json coend(const CoendReport& r) {
  json out;
  out["invariant"] = to_string(r.invariant);
  out["set_profile"] = profile(r.set_profile);
  json comps = json::array();
  for (const auto& c : r.components) {
    json entry;
    entry["size"] = c.vertices.size();
    entry["profile"] = profile(c.profile);
    comps.push_back(std::move(entry));
  }
  out["components"] = std::move(comps);
  out["h_infinite_components"] = r.h_infinite_count;
  return out;
}

json condition_star(const ConditionStarReport& r) {
  json out;
  out["holds"] = to_string(r.holds);
  json violations = json::array();
  for (const auto& v : r.violations)
    violations.push_back({{"first", v.first},
                          {"second", v.second},
                          {"corner_a", v.corner_a},
                          {"corner_b", v.corner_b}});
  out["violations"] = std::move(violations);
  json undecided = json::array();
  for (const auto& [a, b] : r.undecided_pairs) undecided.push_back({{"first", a}, {"second", b}});
  out["undecided_pairs"] = std::move(undecided);
  return out;
}

json family(const TranslateFamily& F) {
  json out;
  out["translate_radius"] = F.translate_radius;
  out["window"] = F.window;
  out["bases"] = F.bases.size();
  out["members"] = F.member_count();
  out["elements"] = F.element_count();
  json members = json::array();
  for (int m = 0; m < F.member_count(); ++m) {
    json entry;
    entry["id"] = m;
    entry["element"] = F.describe(2 * m);
    entry["set_profile"] = profile(F.members[static_cast<std::size_t>(m)].set_profile);
    entry["complement_profile"] = profile(F.members[static_cast<std::size_t>(m)].co_profile);
    members.push_back(std::move(entry));
  }
  out["member_list"] = std::move(members);
  out["order_undecided"] = F.order_undecided.size();
  out["crossing_undecided"] = F.crossing_undecided.size();
  out["condition_star"] = condition_star(F.star);
  return out;
}

json crossing_graph(const CrossingGraph& g) {
  json out;
  out["nodes"] = g.nodes;
  json edges = json::array();
  for (const auto& [a, b] : g.edges) edges.push_back({{"a", a}, {"b", b}});
  out["edges"] = std::move(edges);
  return out;
}

json partition(const CCCPartition& p) {
  json out;
  out["count"] = p.count;
  out["component_of"] = p.component_of;
  out["classes"] = p.classes;
  return out;
}

json pretree_check(const PretreeCheck& c) {
  json out;
  out["ok"] = c.ok;
  if (!c.ok) {
    out["axiom"] = c.axiom;
    out["witness"] = c.witness;
  }
  out["discrete"] = c.discrete;
  return out;
}

json bipartite_tree(const BipartiteTree& t) {
  json out;
  out["points"] = t.points;
  out["stars"] = t.stars;
  json edges = json::array();
  for (const auto& [p, s] : t.edges) edges.push_back({{"point", p}, {"star", s}});
  out["edges"] = std::move(edges);
  out["is_point"] = t.is_point();
  return out;
}

json stabilizer(const GroupSpec& G, const StabilizerReport& r) {
  json out;
  out["found"] = word_list(G, r.found);
  out["basis"] = word_list(G, r.basis);
  if (G.family() == Family::free_abelian) {
    json vectors = json::array();
    for (const auto& w : r.basis) vectors.push_back(G.format_exponents(w));
    out["basis_exponents"] = std::move(vectors);
  }
  return out;
}

json dunwoody_check(const DunwoodyCheck& c) {
  json out;
  out["d1"] = c.d1;
  out["d3"] = c.d3;
  out["d4"] = c.d4;
  auto pairs = [](const std::vector<std::pair<int, int>>& v) {
    json arr = json::array();
    for (const auto& [a, b] : v) arr.push_back({{"a", a}, {"b", b}});
    return arr;
  };
  out["d1_violations"] = pairs(c.d1_violations);
  out["d3_violations"] = pairs(c.d3_violations);
  out["d4_violations"] = pairs(c.d4_violations);
  out["comparable_pairs"] = c.comparable_pairs;
  out["max_interval"] = c.max_interval;
  out["max_interval_double_cosets"] = c.max_interval_double_cosets;
  out["intervals_stable"] = c.intervals_stable;
  out["unstable_pairs"] = pairs(c.unstable_pairs);
  out["ok"] = c.ok();
  return out;
}

json quotient(const GroupSpec& G, const QuotientSkeleton& q) {
  json out;
  out["vertex_orbits"] = q.vertex_orbits;
  out["edge_orbits"] = q.edge_orbits;
  json edges = json::array();
  for (std::size_t i = 0; i < q.edges.size(); ++i) {
    json entry;
    entry["tail_orbit"] = q.edges[i].first;
    entry["head_orbit"] = q.edges[i].second;
    entry["representative_member"] = q.edge_rep[i];
    entry["stabilizer"] = stabilizer(G, q.edge_stabilizers[i]);
    edges.push_back(std::move(entry));
  }
  out["edges"] = std::move(edges);
  out["escapes"] = q.escapes;
  return out;
}

json dunwoody_tree(const DunwoodyTree& t) {
  json out;
  out["vertices"] = t.vertex_count;
  out["vertex_of"] = t.vertex_of;
  out["oriented_path_checked"] = t.oriented_path_checked;
  out["oriented_path_matches"] = t.oriented_path_matches;
  return out;
}

json split_report(const GroupSpec& G, const SplitReport& r) {
  json out;
  out["ambient_ends"] = ccx::to_string(r.ambient_ends);
  out["ends_override_used"] = r.ends_override_used;
  json checks = json::array();
  for (const auto& c : r.base_checks) checks.push_back(nontriviality(c));
  out["base_checks"] = std::move(checks);
  json comps = json::array();
  for (const auto& c : r.complex_components) comps.push_back(components(c));
  out["complex_components"] = std::move(comps);
  out["family"] = family(r.family);
  out["partition"] = partition(r.partition);
  out["ccc_stable"] = r.ccc_stable;
  out["tree"] = bipartite_tree(r.tree);
  out["dunwoody_ran"] = r.dunwoody_ran;
  if (r.dunwoody_ran) out["dunwoody"] = dunwoody_check(r.dunwoody);
  out["dtree_built"] = r.dtree_built;
  if (r.dtree_built) {
    out["dtree"] = dunwoody_tree(r.dtree);
    out["quotient"] = quotient(G, r.dtree.quotient);
  }
  json crosses = json::array();
  for (const auto& c : r.cross_checks)
    crosses.push_back({{"member_a", c.member_a},
                       {"member_b", c.member_b},
                       {"intersection_infinite", c.intersection_infinite},
                       {"same_component", c.same_component}});
  out["cross_checks"] = std::move(crosses);
  out["cross_checks_pass"] = r.cross_checks_pass;
  out["outcome"] = to_string(r.outcome);
  out["notes"] = r.notes;
  return out;
}

std::string dump(const json& record) { return record.dump(2) + "\n"; }

}  // namespace ccx::records
