#include "ccx/stallings.hpp"

#include <algorithm>
#include <array>
#include <cassert>
#include <map>
#include <numeric>

namespace ccx {

namespace {

struct UnionFind {
  std::vector<std::int32_t> parent;
  explicit UnionFind(std::size_t n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  std::int32_t find(std::int32_t x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      x = parent[static_cast<std::size_t>(x)];
    }
    return x;
  }
  bool unite(std::int32_t a, std::int32_t b) {
    a = find(a);
    b = find(b);
    if (a == b) return false;
    if (b < a) std::swap(a, b);
    parent[static_cast<std::size_t>(b)] = a;
    return true;
  }
};

Word reduced(std::vector<Letter> ls) { return Word(free_reduce(ls), true); }

Word free_inverse(const Word& w) {
  std::vector<Letter> ls(w.letters().rbegin(), w.letters().rend());
  for (Letter& l : ls) l = inverse_of(l);
  return Word(std::move(ls), w.normalized());
}

}  // namespace

// Mutable multigraph that folds, prunes to the based core, and canonicalizes by BFS.
struct RawGraph {
  int alphabet = 0;
  std::int32_t vertices = 0;
  std::int32_t base = 0;
  std::vector<std::array<std::int32_t, 3>> edges;  // (source, slot, target)

  std::int32_t add_vertex() { return vertices++; }
  void add_edge(std::int32_t u, unsigned slot, std::int32_t v) {
    edges.push_back({u, static_cast<std::int32_t>(slot), v});
  }

  void fold() {
    UnionFind uf(static_cast<std::size_t>(vertices));
    bool changed = true;
    while (changed) {
      changed = false;
      for (auto& e : edges) {
        e[0] = uf.find(e[0]);
        e[2] = uf.find(e[2]);
      }
      std::sort(edges.begin(), edges.end());
      edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
      // Two edges with the same source and label fold their targets together.
      for (std::size_t i = 0; i + 1 < edges.size(); ++i) {
        if (edges[i][0] == edges[i + 1][0] && edges[i][1] == edges[i + 1][1]) {
          changed |= uf.unite(edges[i][2], edges[i + 1][2]);
        }
      }
      if (changed) continue;
      // Same target and label fold the sources.
      auto by_target = edges;
      std::sort(by_target.begin(), by_target.end(), [](const auto& a, const auto& b) {
        return std::tie(a[2], a[1], a[0]) < std::tie(b[2], b[1], b[0]);
      });
      for (std::size_t i = 0; i + 1 < by_target.size(); ++i) {
        if (by_target[i][2] == by_target[i + 1][2] && by_target[i][1] == by_target[i + 1][1]) {
          changed |= uf.unite(by_target[i][0], by_target[i + 1][0]);
        }
      }
    }
    for (auto& e : edges) {
      e[0] = uf.find(e[0]);
      e[2] = uf.find(e[2]);
    }
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
    base = uf.find(base);
  }

  // Iteratively delete non-basepoint vertices of degree <= 1.
  void prune() {
    std::map<std::int32_t, int> degree;
    for (const auto& e : edges) {
      degree[e[0]]++;
      degree[e[2]]++;
    }
    bool changed = true;
    std::map<std::int32_t, bool> dead;
    while (changed) {
      changed = false;
      for (auto& [v, d] : degree) {
        if (v != base && !dead[v] && d <= 1) {
          dead[v] = true;
          changed = true;
        }
      }
      if (!changed) continue;
      std::vector<std::array<std::int32_t, 3>> kept;
      degree.clear();
      for (const auto& e : edges) {
        if (dead[e[0]] || dead[e[2]]) continue;
        kept.push_back(e);
        degree[e[0]]++;
        degree[e[2]]++;
      }
      edges = std::move(kept);
    }
  }

  SubgroupGraph finish() {
    fold();
    prune();

    // Dense relabel of surviving vertices.
    std::map<std::int32_t, std::int32_t> dense;
    dense[base] = 0;
    for (const auto& e : edges) {
      dense.emplace(e[0], 0);
      dense.emplace(e[2], 0);
    }
    {
      std::int32_t next = 1;
      for (auto& [old_id, new_id] : dense)
        if (old_id != base) new_id = next++;
      dense[base] = 0;
    }
    std::size_t n = dense.size();
    std::vector<std::vector<std::int32_t>> succ(n, std::vector<std::int32_t>(static_cast<std::size_t>(alphabet), SubgroupGraph::kNone));
    std::vector<std::vector<std::int32_t>> pred(n, std::vector<std::int32_t>(static_cast<std::size_t>(alphabet), SubgroupGraph::kNone));
    for (const auto& e : edges) {
      succ[static_cast<std::size_t>(dense[e[0]])][static_cast<std::size_t>(e[1])] = dense[e[2]];
      pred[static_cast<std::size_t>(dense[e[2]])][static_cast<std::size_t>(e[1])] = dense[e[0]];
    }

    // Canonical BFS renumbering from the basepoint; slot-ascending, out before in.
    std::vector<std::int32_t> order(n, SubgroupGraph::kNone);
    std::vector<std::int32_t> queue{0};
    order[0] = 0;
    std::int32_t next_id = 1;
    std::vector<std::pair<std::int32_t, unsigned>> tree_edges;  // (old source, slot) in old ids
    std::vector<Word> tree_words_old(n);
    for (std::size_t qi = 0; qi < queue.size(); ++qi) {
      std::int32_t v = queue[qi];
      for (int s = 0; s < alphabet; ++s) {
        std::int32_t w = succ[static_cast<std::size_t>(v)][static_cast<std::size_t>(s)];
        if (w != SubgroupGraph::kNone && order[static_cast<std::size_t>(w)] == SubgroupGraph::kNone) {
          order[static_cast<std::size_t>(w)] = next_id++;
          tree_edges.emplace_back(v, static_cast<unsigned>(s));
          auto ls = tree_words_old[static_cast<std::size_t>(v)].letters();
          ls.push_back(make_letter(static_cast<unsigned>(s), false));
          tree_words_old[static_cast<std::size_t>(w)] = Word(std::move(ls), true);
          queue.push_back(w);
        }
        std::int32_t u = pred[static_cast<std::size_t>(v)][static_cast<std::size_t>(s)];
        if (u != SubgroupGraph::kNone && order[static_cast<std::size_t>(u)] == SubgroupGraph::kNone) {
          order[static_cast<std::size_t>(u)] = next_id++;
          tree_edges.emplace_back(u, static_cast<unsigned>(s));
          auto ls = tree_words_old[static_cast<std::size_t>(v)].letters();
          ls.push_back(make_letter(static_cast<unsigned>(s), true));
          tree_words_old[static_cast<std::size_t>(u)] = Word(std::move(ls), true);
          queue.push_back(u);
        }
      }
    }
    // Core graphs are connected; anything unreached would signal an internal error.
    assert(static_cast<std::size_t>(next_id) == n);

    SubgroupGraph out;
    out.alphabet_ = alphabet;
    out.succ_.assign(n, std::vector<std::int32_t>(static_cast<std::size_t>(alphabet), SubgroupGraph::kNone));
    out.pred_.assign(n, std::vector<std::int32_t>(static_cast<std::size_t>(alphabet), SubgroupGraph::kNone));
    out.basis_out_.assign(n, std::vector<std::int32_t>(static_cast<std::size_t>(alphabet), SubgroupGraph::kNone));
    out.tree_words_.resize(n);
    std::vector<std::vector<bool>> is_tree(n, std::vector<bool>(static_cast<std::size_t>(alphabet), false));
    for (auto [u, s] : tree_edges) is_tree[static_cast<std::size_t>(order[static_cast<std::size_t>(u)])][s] = true;
    for (std::size_t v = 0; v < n; ++v) {
      out.tree_words_[static_cast<std::size_t>(order[v])] = tree_words_old[v];
      for (int s = 0; s < alphabet; ++s) {
        std::int32_t w = succ[v][static_cast<std::size_t>(s)];
        if (w != SubgroupGraph::kNone) {
          out.succ_[static_cast<std::size_t>(order[v])][static_cast<std::size_t>(s)] = order[static_cast<std::size_t>(w)];
          out.pred_[static_cast<std::size_t>(order[static_cast<std::size_t>(w)])][static_cast<std::size_t>(s)] = order[v];
          ++out.edges_;
        }
      }
    }
    std::int32_t basis_count = 0;
    for (std::size_t v = 0; v < n; ++v) {
      for (int s = 0; s < alphabet; ++s) {
        if (out.succ_[v][static_cast<std::size_t>(s)] != SubgroupGraph::kNone && !is_tree[v][static_cast<std::size_t>(s)])
          out.basis_out_[v][static_cast<std::size_t>(s)] = basis_count++;
      }
    }
    return out;
  }
};

SubgroupGraph SubgroupGraph::trivial_subgroup(int alphabet) {
  RawGraph raw;
  raw.alphabet = alphabet;
  raw.add_vertex();
  return raw.finish();
}

namespace {

SubgroupGraph fold_words(std::span<const Word> generators, int alphabet) {
  RawGraph raw;
  raw.alphabet = alphabet;
  raw.base = raw.add_vertex();
  for (const Word& g : generators) {
    auto ls = free_reduce(g.letters());
    if (ls.empty()) continue;
    std::int32_t cur = raw.base;
    for (std::size_t i = 0; i < ls.size(); ++i) {
      std::int32_t next = (i + 1 == ls.size()) ? raw.base : raw.add_vertex();
      Letter l = ls[i];
      if (is_inverse(l)) {
        raw.add_edge(next, slot_of(l), cur);
      } else {
        raw.add_edge(cur, slot_of(l), next);
      }
      cur = next;
    }
  }
  return raw.finish();
}

}  // namespace

SubgroupGraph SubgroupGraph::fold(std::span<const Word> generators, const GroupSpec& group) {
  if (group.family() != Family::free_group)
    throw UnsupportedFamilyError("Stallings folding requires a free-group ambient, got " + group.name());
  return fold_words(generators, group.rank());
}

SubgroupGraph SubgroupGraph::fold(std::initializer_list<Word> generators, const GroupSpec& group) {
  return fold(std::span<const Word>(generators.begin(), generators.size()), group);
}

std::int32_t SubgroupGraph::step(std::int32_t v, Letter l) const {
  return is_inverse(l) ? pred(v, slot_of(l)) : succ(v, slot_of(l));
}

bool SubgroupGraph::accepts(const Word& w) const {
  std::int32_t v = basepoint();
  for (Letter l : free_reduce(w.letters())) {
    v = step(v, l);
    if (v == kNone) return false;
  }
  return v == basepoint();
}

bool SubgroupGraph::is_complete() const {
  for (std::size_t v = 0; v < vertex_count(); ++v) {
    for (int s = 0; s < alphabet_; ++s) {
      if (succ_[v][static_cast<std::size_t>(s)] == kNone || pred_[v][static_cast<std::size_t>(s)] == kNone)
        return false;
    }
  }
  return true;
}

std::vector<Word> SubgroupGraph::free_basis() const {
  std::vector<std::pair<std::int32_t, Word>> items;
  for (std::size_t v = 0; v < vertex_count(); ++v) {
    for (int s = 0; s < alphabet_; ++s) {
      std::int32_t idx = basis_out_[v][static_cast<std::size_t>(s)];
      if (idx == kNone) continue;
      std::int32_t w = succ_[v][static_cast<std::size_t>(s)];
      auto ls = tree_words_[v].letters();
      ls.push_back(make_letter(static_cast<unsigned>(s), false));
      const auto& back = tree_words_[static_cast<std::size_t>(w)];
      for (auto it = back.letters().rbegin(); it != back.letters().rend(); ++it)
        ls.push_back(inverse_of(*it));
      items.emplace_back(idx, reduced(std::move(ls)));
    }
  }
  std::sort(items.begin(), items.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  std::vector<Word> out;
  out.reserve(items.size());
  for (auto& [idx, w] : items) out.push_back(std::move(w));
  return out;
}

Word SubgroupGraph::rewrite_in_basis(const Word& w) const {
  if (cycle_rank() > 127)
    throw SizeError("rewrite_in_basis supports at most 127 basis elements, got " +
                    std::to_string(cycle_rank()));
  std::vector<Letter> out;
  std::int32_t v = basepoint();
  for (Letter l : free_reduce(w.letters())) {
    unsigned s = slot_of(l);
    if (!is_inverse(l)) {
      std::int32_t idx = basis_out_[static_cast<std::size_t>(v)][s];
      std::int32_t next = succ_[static_cast<std::size_t>(v)][s];
      if (next == kNone) throw PreconditionError("rewrite_in_basis: word leaves the subgroup graph");
      if (idx != kNone) out.push_back(make_letter(static_cast<unsigned>(idx), false));
      v = next;
    } else {
      std::int32_t u = pred_[static_cast<std::size_t>(v)][s];
      if (u == kNone) throw PreconditionError("rewrite_in_basis: word leaves the subgroup graph");
      std::int32_t idx = basis_out_[static_cast<std::size_t>(u)][s];
      if (idx != kNone) out.push_back(make_letter(static_cast<unsigned>(idx), true));
      v = u;
    }
  }
  if (v != basepoint()) throw PreconditionError("rewrite_in_basis: word is not in the subgroup");
  return reduced(std::move(out));
}

IntersectionReport fiber_product(const SubgroupGraph& A, const SubgroupGraph& B) {
  if (A.alphabet() != B.alphabet())
    throw AmbientMismatchError("fiber product requires graphs over the same alphabet");
  const std::int32_t nb = static_cast<std::int32_t>(B.vertex_count());
  const std::int32_t total = static_cast<std::int32_t>(A.vertex_count()) * nb;
  auto pair_id = [nb](std::int32_t i, std::int32_t j) { return i * nb + j; };

  std::vector<std::array<std::int32_t, 3>> edges;  // (pair, slot, pair)
  UnionFind uf(static_cast<std::size_t>(total));
  for (std::int32_t i = 0; i < static_cast<std::int32_t>(A.vertex_count()); ++i) {
    for (std::int32_t j = 0; j < nb; ++j) {
      for (int s = 0; s < A.alphabet(); ++s) {
        std::int32_t a2 = A.succ(i, static_cast<unsigned>(s));
        std::int32_t b2 = B.succ(j, static_cast<unsigned>(s));
        if (a2 == SubgroupGraph::kNone || b2 == SubgroupGraph::kNone) continue;
        edges.push_back({pair_id(i, j), s, pair_id(a2, b2)});
        uf.unite(pair_id(i, j), pair_id(a2, b2));
      }
    }
  }

  std::map<std::int32_t, std::vector<std::int32_t>> comp_vertices;
  for (std::int32_t p = 0; p < total; ++p) comp_vertices[uf.find(p)].push_back(p);
  std::map<std::int32_t, std::vector<std::array<std::int32_t, 3>>> comp_edges;
  for (const auto& e : edges) comp_edges[uf.find(e[0])].push_back(e);

  std::vector<FiberComponent> comps;
  for (const auto& [root, verts] : comp_vertices) {
    FiberComponent fc;
    fc.is_basepoint = uf.find(0) == root;
    const auto& ce = comp_edges[root];
    fc.cls = ce.size() >= verts.size() ? ComponentClass::infinite_cyclic_or_bigger : ComponentClass::trivial;

    // ShortLex-least rep; ties broken by smallest pair id (vertices scan in id order).
    Word best;
    std::int32_t best_pair = -1;
    for (std::int32_t p : verts) {
      std::int32_t i = p / nb, j = p % nb;
      Word rep = reduced(concat(A.tree_word(i), free_inverse(B.tree_word(j))).letters());
      if (best_pair < 0 || shortlex_less(rep, best)) {
        best = rep;
        best_pair = p;
      }
    }
    fc.coset_rep = best;

    RawGraph raw;
    raw.alphabet = A.alphabet();
    std::map<std::int32_t, std::int32_t> local;
    auto local_id = [&](std::int32_t p) {
      auto it = local.find(p);
      if (it != local.end()) return it->second;
      std::int32_t id = raw.add_vertex();
      local.emplace(p, id);
      return id;
    };
    raw.base = local_id(best_pair);
    for (const auto& e : ce) raw.add_edge(local_id(e[0]), static_cast<unsigned>(e[1]), local_id(e[2]));
    fc.graph = raw.finish();
    comps.push_back(std::move(fc));
  }

  std::sort(comps.begin(), comps.end(), [](const FiberComponent& a, const FiberComponent& b) {
    if (a.is_basepoint != b.is_basepoint) return a.is_basepoint;
    return shortlex_less(a.coset_rep, b.coset_rep);
  });
  IntersectionReport report;
  report.components = std::move(comps);
  return report;
}

SubgroupGraph intersect(const SubgroupGraph& A, const SubgroupGraph& B) {
  return fiber_product(A, B).basepoint_component().graph;
}

SubgroupGraph conjugate_graph(const SubgroupGraph& A, const Word& g, const GroupSpec& group) {
  std::vector<Word> gens;
  for (const Word& b : A.free_basis()) gens.push_back(group.conjugate(g, b));
  return SubgroupGraph::fold(gens, group);
}

bool has_finite_index_in(const SubgroupGraph& sub, const SubgroupGraph& sup) {
  if (sub.is_trivial()) return sup.is_trivial();
  std::vector<Word> rewritten;
  for (const Word& b : sub.free_basis()) rewritten.push_back(sup.rewrite_in_basis(b));
  SubgroupGraph folded = fold_words(rewritten, sup.cycle_rank());
  return folded.is_complete();
}

bool commensurable(const SubgroupGraph& A, const SubgroupGraph& B) {
  SubgroupGraph u = intersect(A, B);
  return has_finite_index_in(u, A) && has_finite_index_in(u, B);
}

MalnormalityReport is_almost_malnormal(const SubgroupGraph& A, const GroupSpec& group) {
  if (!A.is_infinite())
    throw PreconditionError("almost-malnormality requires an infinite subgroup");
  IntersectionReport rep = fiber_product(A, A);
  MalnormalityReport out;
  out.almost_malnormal = true;
  for (const auto& comp : rep.components) {
    if (comp.is_basepoint || comp.cls != ComponentClass::infinite_cyclic_or_bigger) continue;
    Word g = comp.coset_rep;
    Word gi = group.inverse(g);
    Word w = shortlex_less(gi, g) ? gi : g;
    if (out.almost_malnormal || shortlex_less(w, *out.witness)) out.witness = w;
    out.almost_malnormal = false;
  }
  return out;
}

namespace {

struct HeightSearch {
  const SubgroupGraph& H;
  const GroupSpec& group;
  int max_n;
  int best = 1;
  bool exceeded = false;

  void run(const SubgroupGraph& C, std::vector<Word>& used, int depth) {
    if (exceeded) return;
    if (depth >= max_n) {
      exceeded = true;
      return;
    }
    IntersectionReport rep = fiber_product(C, H);
    for (const auto& comp : rep.components) {
      if (comp.is_basepoint || comp.cls != ComponentClass::infinite_cyclic_or_bigger) continue;
      const Word& g = comp.coset_rep;
      bool seen = false;
      for (const Word& u : used) {
        if (H.accepts(group.product(group.inverse(u), g))) {
          seen = true;
          break;
        }
      }
      if (seen) continue;
      SubgroupGraph next = intersect(C, conjugate_graph(H, g, group));
      if (!next.is_infinite()) continue;  // cannot happen for a cyclic component; defensive
      best = std::max(best, depth + 1);
      used.push_back(g);
      run(next, used, depth + 1);
      used.pop_back();
      if (exceeded) return;
    }
  }
};

}  // namespace

HeightResult height(const SubgroupGraph& A, int max_n, const GroupSpec& group) {
  if (max_n < 1 || max_n > 8)
    throw InputError("height bound " + std::to_string(max_n) + " outside supported range 1..8");
  if (!A.is_infinite()) return {false, 0};
  HeightSearch search{A, group, max_n};
  std::vector<Word> used{Word::identity()};
  if (max_n == 1) return {true, 1};
  search.run(A, used, 1);
  if (search.exceeded) return {true, search.best};
  return {false, search.best};
}

}  // namespace ccx
