#include "ccx/dot.hpp"

#include <sstream>

#include "ccx/records.hpp"

namespace ccx {

namespace {

std::string quoted(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"' || c == '\\') out += '\\';
    out += c;
  }
  out += '"';
  return out;
}

}  // namespace

std::string dot_subgroup_graph(const SubgroupGraph& g, const GroupSpec& G,
                               const std::string& name) {
  std::ostringstream out;
  out << "digraph " << quoted(name) << " {\n";
  out << "  rankdir=LR;\n";
  for (std::size_t v = 0; v < g.vertex_count(); ++v) {
    out << "  " << quoted(std::to_string(v)) << " [label=" << quoted(G.format(g.tree_word(static_cast<std::int32_t>(v))));
    if (v == 0) out << ", shape=doublecircle";
    out << "];\n";
  }
  for (std::size_t v = 0; v < g.vertex_count(); ++v)
    for (int s = 0; s < g.alphabet(); ++s) {
      std::int32_t w = g.succ(static_cast<std::int32_t>(v), static_cast<unsigned>(s));
      if (w == SubgroupGraph::kNone) continue;
      out << "  " << quoted(std::to_string(v)) << " -> " << quoted(std::to_string(w))
          << " [label=" << quoted(std::string(1, G.slot_char(static_cast<unsigned>(s)))) << "];\n";
    }
  out << "}\n";
  return out.str();
}

std::string dot_ccomplex(const CComplex& c, const GroupSpec& G, const std::string& name) {
  std::ostringstream out;
  out << "graph " << quoted(name) << " {\n";
  for (std::size_t i = 0; i < c.vertices.size(); ++i)
    out << "  " << quoted(std::to_string(i))
        << " [label=" << quoted(G.format(c.vertices[i].representative)) << "];\n";
  for (const auto& e : c.edges)
    out << "  " << quoted(std::to_string(e.u)) << " -- " << quoted(std::to_string(e.v))
        << " [label=" << quoted(records::to_string(e.evidence.kind)) << "];\n";
  out << "}\n";
  return out.str();
}

std::string dot_crossing_graph(const CrossingGraph& g, const TranslateFamily& F,
                               const std::string& name) {
  std::ostringstream out;
  out << "graph " << quoted(name) << " {\n";
  for (int m = 0; m < g.nodes; ++m)
    out << "  " << quoted(std::to_string(m)) << " [label=" << quoted(F.describe(2 * m)) << "];\n";
  for (const auto& [a, b] : g.edges)
    out << "  " << quoted(std::to_string(a)) << " -- " << quoted(std::to_string(b)) << ";\n";
  out << "}\n";
  return out.str();
}

std::string dot_bipartite_tree(const BipartiteTree& t, const std::string& name) {
  std::ostringstream out;
  out << "graph " << quoted(name) << " {\n";
  for (int p = 0; p < t.points; ++p)
    out << "  " << quoted("p" + std::to_string(p)) << " [label=" << quoted(std::to_string(p))
        << "];\n";
  for (std::size_t s = 0; s < t.stars.size(); ++s) {
    std::string label;
    for (std::size_t i = 0; i < t.stars[s].size(); ++i) {
      if (i) label += " ";
      label += std::to_string(t.stars[s][i]);
    }
    out << "  " << quoted("s" + std::to_string(s)) << " [label=" << quoted(label)
        << ", shape=box];\n";
  }
  for (const auto& [p, s] : t.edges)
    out << "  " << quoted("p" + std::to_string(p)) << " -- " << quoted("s" + std::to_string(s))
        << ";\n";
  out << "}\n";
  return out.str();
}

std::string dot_dunwoody_tree(const DunwoodyTree& t, const TranslateFamily& F,
                              const std::string& name) {
  std::ostringstream out;
  out << "graph " << quoted(name) << " {\n";
  for (int v = 0; v < t.vertex_count; ++v)
    out << "  " << quoted(std::to_string(v)) << ";\n";
  for (int m = 0; m < F.member_count(); ++m)
    out << "  " << quoted(std::to_string(t.vertex_of[static_cast<std::size_t>(2 * m)])) << " -- "
        << quoted(std::to_string(t.vertex_of[static_cast<std::size_t>(2 * m + 1)]))
        << " [label=" << quoted(F.describe(2 * m)) << "];\n";
  out << "}\n";
  return out.str();
}

std::string dot_quotient(const QuotientSkeleton& q, const TranslateFamily& F, const GroupSpec& G,
                         const std::string& name) {
  std::ostringstream out;
  out << "digraph " << quoted(name) << " {\n";
  for (int v = 0; v < q.vertex_orbits; ++v)
    out << "  " << quoted(std::to_string(v)) << ";\n";
  for (std::size_t i = 0; i < q.edges.size(); ++i) {
    std::string label = F.describe(2 * q.edge_rep[i]);
    const auto& basis = q.edge_stabilizers[i].basis;
    if (!basis.empty()) {
      label += " | stab:";
      for (const auto& w : basis) label += " " + G.format(w);
    }
    out << "  " << quoted(std::to_string(q.edges[i].first)) << " -> "
        << quoted(std::to_string(q.edges[i].second)) << " [label=" << quoted(label) << "];\n";
  }
  out << "}\n";
  return out.str();
}

}  // namespace ccx
