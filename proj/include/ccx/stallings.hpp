#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <vector>

#include "ccx/group.hpp"

namespace ccx {

// Folded basepointed core graph of a finitely generated free-group subgroup, stored as
// a deterministic inverse automaton: succ[v][s] follows generator s, pred[v][s] follows
// s^-1. Construction canonicalizes by BFS from the basepoint (vertex 0), so two graphs
// of the same subgroup compare equal field by field.
class SubgroupGraph {
 public:
  static constexpr std::int32_t kNone = -1;

  // Fold the wedge of generator loops. Only free-group ambients are supported.
  static SubgroupGraph fold(std::span<const Word> generators, const GroupSpec& group);
  static SubgroupGraph fold(std::initializer_list<Word> generators, const GroupSpec& group);
  static SubgroupGraph trivial_subgroup(int alphabet);

  int alphabet() const { return alphabet_; }
  std::size_t vertex_count() const { return succ_.size(); }
  std::size_t edge_count() const { return edges_; }
  static constexpr std::int32_t basepoint() { return 0; }

  std::int32_t succ(std::int32_t v, unsigned slot) const { return succ_[static_cast<std::size_t>(v)][slot]; }
  std::int32_t pred(std::int32_t v, unsigned slot) const { return pred_[static_cast<std::size_t>(v)][slot]; }
  std::int32_t step(std::int32_t v, Letter l) const;

  // Membership test: does the freely reduced form of w label a loop at the basepoint?
  bool accepts(const Word& w) const;

  bool is_trivial() const { return edges_ == 0; }
  // Core graphs are connected, so a cycle exists iff edges >= vertices.
  bool is_infinite() const { return edge_count() >= vertex_count(); }
  int cycle_rank() const { return static_cast<int>(edge_count()) - static_cast<int>(vertex_count()) + 1; }

  // Every vertex carries every label in both directions; for a subgroup of the ambient
  // free group this is exactly the finite-index condition.
  bool is_complete() const;

  // BFS spanning-tree word from the basepoint to v; reduced.
  const Word& tree_word(std::int32_t v) const { return tree_words_[static_cast<std::size_t>(v)]; }
  // Free basis read off the non-tree edges, in canonical edge order.
  std::vector<Word> free_basis() const;

  // Rewrite a word of this subgroup over the free basis returned by free_basis();
  // letters in the result use basis slots. Precondition: accepts(w).
  Word rewrite_in_basis(const Word& w) const;

  friend bool operator==(const SubgroupGraph& a, const SubgroupGraph& b) {
    return a.alphabet_ == b.alphabet_ && a.succ_ == b.succ_ && a.pred_ == b.pred_;
  }

 private:
  friend struct RawGraph;

  int alphabet_ = 0;
  std::size_t edges_ = 0;
  std::vector<std::vector<std::int32_t>> succ_;
  std::vector<std::vector<std::int32_t>> pred_;
  std::vector<Word> tree_words_;
  // For non-tree edges, the index of the corresponding basis element; kNone otherwise.
  std::vector<std::vector<std::int32_t>> basis_out_;
};

enum class ComponentClass { trivial, infinite_cyclic_or_bigger };

struct FiberComponent {
  SubgroupGraph graph;      // based at the ShortLex representative vertex, pruned to core
  Word coset_rep;           // reduced u v^-1 over tree words, ShortLex-least in the component
  bool is_basepoint = false;
  ComponentClass cls = ComponentClass::trivial;
};

struct IntersectionReport {
  std::vector<FiberComponent> components;  // basepoint component first, then by coset_rep
  const FiberComponent& basepoint_component() const { return components.front(); }
};

// Pullback of the two immersions; components correspond to double cosets A g B.
IntersectionReport fiber_product(const SubgroupGraph& A, const SubgroupGraph& B);

// Exact graph of the subgroup A intersect B (the based component of the pullback).
SubgroupGraph intersect(const SubgroupGraph& A, const SubgroupGraph& B);

// Graph of g A g^-1, refolded from conjugated generators.
SubgroupGraph conjugate_graph(const SubgroupGraph& A, const Word& g, const GroupSpec& group);

// Finite index of sub in sup, both folded graphs with sub <= sup as subgroups.
bool has_finite_index_in(const SubgroupGraph& sub, const SubgroupGraph& sup);

// Commensurability: the intersection has finite index in both factors.
bool commensurable(const SubgroupGraph& A, const SubgroupGraph& B);

struct MalnormalityReport {
  bool almost_malnormal = false;
  std::optional<Word> witness;  // g not in H with H^g meeting H in an infinite subgroup
};

// For torsion-free ambients almost malnormal and malnormal coincide; decided by
// checking that every non-basepoint component of fiber_product(A, A) is a tree.
MalnormalityReport is_almost_malnormal(const SubgroupGraph& A, const GroupSpec& group);

struct HeightResult {
  bool exceeded_bound = false;
  int height = 0;  // meaningful when !exceeded_bound
};

// Largest n <= max_n such that n conjugates by pairwise distinct cosets g H have
// infinite common intersection; ExceededBound when some chain reaches max_n.
HeightResult height(const SubgroupGraph& A, int max_n, const GroupSpec& group);

}  // namespace ccx
