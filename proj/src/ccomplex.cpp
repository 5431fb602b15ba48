#include "ccx/ccomplex.hpp"

#include <algorithm>
#include <map>
#include <string>

#include "ccx/error.hpp"
#include "ccx/stallings.hpp"

namespace ccx {

namespace {

void require_surface_cap(const Subgroup& H, const CayleyBall& ball) {
  if (H.group().family() == Family::surface && H.element_cap() < 2 * ball.radius()) {
    throw InputError("surface subgroup element cap must be at least twice the ball radius");
  }
}

// Nontrivial element of the intersection of all gHg^-1 over the conjugators,
// searched in ShortLex order over the ball.
std::optional<Word> common_element(const Subgroup& H, const std::vector<Word>& conjugators,
                                   const CayleyBall& ball) {
  for (std::size_t v = 0; v < ball.size(); ++v) {
    const Word& h = ball.word(v);
    if (h.empty()) continue;
    bool in_all = true;
    for (const Word& g : conjugators) {
      if (!H.contains_conjugate(g, h)) {
        in_all = false;
        break;
      }
    }
    if (in_all) return h;
  }
  return std::nullopt;
}

// Folded graph of the intersection of all gHg^-1 (free ambients).
SubgroupGraph exact_intersection(const Subgroup& H, const std::vector<Word>& conjugators) {
  const GroupSpec& G = H.group();
  SubgroupGraph acc = conjugate_graph(H.graph(), conjugators.front(), G);
  for (std::size_t i = 1; i < conjugators.size(); ++i) {
    acc = intersect(acc, conjugate_graph(H.graph(), conjugators[i], G));
  }
  return acc;
}

IntersectionEvidence tuple_evidence(const Subgroup& H, const std::vector<Word>& conjugators,
                                    OracleMode mode, const CayleyBall& ball) {
  if (mode == OracleMode::exact) {
    SubgroupGraph meet = exact_intersection(H, conjugators);
    if (meet.is_infinite()) {
      return {EvidenceKind::infinite_with_certificate, meet.free_basis().front(), 0};
    }
    return {EvidenceKind::trivial_exact, std::nullopt, 0};
  }
  if (auto witness = common_element(H, conjugators, ball)) {
    return {EvidenceKind::infinite_with_witness, *witness, ball.radius()};
  }
  return {EvidenceKind::no_witness_up_to, std::nullopt, ball.radius()};
}

}  // namespace

std::vector<Coset> enumerate_cosets(const Subgroup& H, const CayleyBall& ball) {
  require_surface_cap(H, ball);
  std::vector<Coset> cosets;
  std::map<std::string, int> index_of;
  for (std::size_t v = 0; v < ball.size(); ++v) {
    std::string key = H.left_coset_key(ball.word(v));
    auto [it, fresh] = index_of.emplace(std::move(key), static_cast<int>(cosets.size()));
    if (fresh) cosets.push_back({ball.word(v), {}});
    cosets[it->second].ball_vertices.push_back(static_cast<std::uint32_t>(v));
  }
  return cosets;
}

IntersectionEvidence infinite_intersection(const Subgroup& H, const Word& g, const Word& k,
                                           OracleMode mode, const CayleyBall& ball) {
  require_surface_cap(H, ball);
  if (H.left_coset_key(g) == H.left_coset_key(k)) {
    throw PreconditionError("conjugators name the same coset; essential distinctness is required");
  }
  if (mode == OracleMode::exact && H.group().family() != Family::free_group) {
    throw UnsupportedFamilyError("exact intersection mode needs a free ambient");
  }
  return tuple_evidence(H, {H.group().normal_form(g), H.group().normal_form(k)}, mode, ball);
}

CComplex build_ccomplex(const Subgroup& H, const CayleyBall& ball, int dim_cap, OracleMode mode) {
  require_surface_cap(H, ball);
  if (dim_cap < 1 || dim_cap > 4) throw InputError("dim_cap must be between 1 and 4");
  if (mode == OracleMode::exact && H.group().family() != Family::free_group) {
    throw UnsupportedFamilyError("exact intersection mode needs a free ambient");
  }

  CComplex cx;
  cx.mode = mode;
  cx.radius = ball.radius();
  cx.dim_cap = dim_cap;
  cx.vertices = enumerate_cosets(H, ball);

  int n = static_cast<int>(cx.vertices.size());
  auto conjugator = [&](int i) { return cx.vertices[i].representative; };

  std::vector<std::vector<int>> prev;  // vertex tuples of the previous dimension
  std::vector<char> adjacent(static_cast<std::size_t>(n) * n, 0);
  for (int i = 0; i < n; ++i) {
    for (int j = i + 1; j < n; ++j) {
      IntersectionEvidence ev = tuple_evidence(H, {conjugator(i), conjugator(j)}, mode, ball);
      if (ev.kind == EvidenceKind::infinite_with_certificate ||
          ev.kind == EvidenceKind::infinite_with_witness) {
        cx.edges.push_back({i, j, std::move(ev)});
        adjacent[static_cast<std::size_t>(i) * n + j] = 1;
        prev.push_back({i, j});
      }
    }
  }

  for (int dim = 2; dim <= dim_cap && !prev.empty(); ++dim) {
    std::vector<CComplexCell> layer;
    std::vector<std::vector<int>> next;
    for (const auto& cell : prev) {
      for (int v = cell.back() + 1; v < n; ++v) {
        bool closed = true;
        for (int u : cell) {
          if (!adjacent[static_cast<std::size_t>(u) * n + v]) {
            closed = false;
            break;
          }
        }
        if (!closed) continue;
        std::vector<int> tuple = cell;
        tuple.push_back(v);
        std::vector<Word> conj;
        for (int u : tuple) conj.push_back(conjugator(u));
        IntersectionEvidence ev = tuple_evidence(H, conj, mode, ball);
        if (ev.kind == EvidenceKind::infinite_with_certificate ||
            ev.kind == EvidenceKind::infinite_with_witness) {
          layer.push_back({tuple, std::move(ev)});
          next.push_back(std::move(tuple));
        }
      }
    }
    cx.higher_cells.push_back(std::move(layer));
    prev = std::move(next);
  }

  return cx;
}

ComponentReport connected_components(const CComplex& complex) {
  int n = static_cast<int>(complex.vertices.size());
  std::vector<int> parent(n);
  for (int i = 0; i < n; ++i) parent[i] = i;
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (const auto& e : complex.edges) parent[find(e.u)] = find(e.v);

  ComponentReport report;
  report.component_of.assign(n, -1);
  for (int i = 0; i < n; ++i) {
    int root = find(i);
    if (report.component_of[root] == -1) report.component_of[root] = report.count++;
    report.component_of[i] = report.component_of[root];
  }
  report.is_connected = report.count <= 1;
  report.is_totally_disconnected = complex.edges.empty();
  report.at_truncation = complex.mode == OracleMode::witness_bounded;
  return report;
}

}  // namespace ccx
