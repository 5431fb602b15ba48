#pragma once

#include <optional>
#include <string>
#include <unordered_set>
#include <vector>

#include "ccx/group.hpp"
#include "ccx/stallings.hpp"

namespace ccx {

// Cap on the bounded element enumeration for surface-group subgroups.
inline constexpr std::size_t kMaxSubgroupElements = 200'000;

// Finitely generated subgroup with family-appropriate membership machinery:
// a folded graph for free ambients (exact), an integer lattice in Hermite
// normal form for free-abelian ambients (exact), and a bounded element
// enumeration for surface ambients (exact up to the documented length cap).
class Subgroup {
 public:
  // surface_cap bounds the normal-form length of enumerated elements; it is
  // ignored for free and free-abelian ambients.
  Subgroup(GroupSpec group, std::vector<Word> generators, int surface_cap = 0);

  const GroupSpec& group() const { return group_; }
  // Nonidentity generators in normal form, as given (not reduced to a basis).
  const std::vector<Word>& generators() const { return generators_; }

  bool is_trivial() const { return trivial_; }
  // All supported ambients are torsion-free, so nontrivial means infinite.
  bool is_infinite() const { return !trivial_; }

  // Exact for free and free-abelian ambients. For surface ambients the answer
  // is exact whenever the normal form of w fits in the element cap and false
  // beyond it (membership is enumerated, not decided).
  bool contains(const Word& w) const;
  // Membership of w in the conjugate g H g^-1.
  bool contains_conjugate(const Word& g, const Word& w) const;

  // Canonical key of the right coset H g: equal keys iff equal cosets, with
  // the same surface caveat (exact when the cap covers |g| plus the length of
  // the ShortLex-least coset element).
  std::string right_coset_key(const Word& g) const;
  // Canonical key of the left coset g H.
  std::string left_coset_key(const Word& g) const;

  // Ends of the subgroup as an abstract group. Exact for free and abelian
  // ambients; for surface ambients only the commutative (hence cyclic) case
  // is decidable here, anything else raises UnsupportedFamilyError.
  Ends ends() const;

  // Family-specific views.
  const SubgroupGraph& graph() const;                                // free only
  int lattice_rank() const;                                          // abelian only
  const std::vector<std::vector<long long>>& lattice_basis() const;  // abelian only, HNF rows
  int element_cap() const { return surface_cap_; }
  const std::vector<Word>& bounded_elements() const;                 // surface only

 private:
  GroupSpec group_;
  std::vector<Word> generators_;
  bool trivial_ = true;

  std::optional<SubgroupGraph> graph_;

  std::vector<std::vector<long long>> hnf_;  // nonzero rows, pivot columns increasing
  std::vector<int> pivots_;

  int surface_cap_ = 0;
  std::vector<Word> elements_;  // ShortLex order, identity first
  std::unordered_set<std::string> element_keys_;
};

// Rank over Q of the intersection of the two generated lattices; requires a
// common free-abelian ambient. Zero iff the subgroups intersect trivially.
int abelian_intersection_rank(const Subgroup& A, const Subgroup& B);

}  // namespace ccx
