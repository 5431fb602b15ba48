#pragma once

#include <array>
#include <cstdint>
#include <memory>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "ccx/group.hpp"
#include "ccx/subgroup.hpp"

namespace ccx {

// Almost-invariant subsets of a group, truncated to a Cayley ball. A set is
// described by a membership rule that can be evaluated at any group element,
// so verdicts near the ball rim do not have to guess: products that leave the
// ball are decided by the rule itself. Sets produced by boolean combinations
// keep their rules (a conjunction of literals); sets read off from masks alone
// lose that ability and report rim uncertainty instead.

enum class RuleKind { half_space, prefix, extensional };

struct AISetRule {
  RuleKind kind = RuleKind::extensional;

  // half_space, free-abelian ambient: exponents(x) . normal >= threshold.
  std::vector<long long> normal;
  long long threshold = 0;

  // prefix, free ambient: after deleting the maximal leading power of the
  // axis generator, the word starts with `head`.
  int axis_slot = 0;
  Word head;

  // extensional: normal-form keys of the members.
  std::set<std::string> members;

  // Outer transforms, innermost first: x is a member iff the base test
  // accepts translate^-1 . x, flipped when complemented is set.
  Word translate;
  bool complemented = false;
};

// Checks the rule is well formed for the ambient family; throws InputError.
void validate_rule(const GroupSpec& G, const AISetRule& rule);

// Total membership evaluation at an arbitrary group element.
bool rule_member(const GroupSpec& G, const AISetRule& rule, const Word& w);

// Left-translated rule: the returned rule accepts x iff `rule` accepts
// g^-1 . x, so it describes g . (set of rule).
AISetRule translate_rule(const GroupSpec& G, const AISetRule& rule, const Word& g);

struct AISet {
  std::shared_ptr<const CayleyBall> ball;
  std::shared_ptr<const Subgroup> subgroup;
  // Finiteness profiles are taken w.r.t. conjugator . H . conjugator^-1,
  // the stabilizer of a translated set.
  Word conjugator;
  std::vector<char> mask;  // one flag per ball vertex
  // Conjunction of rules; empty when the set is mask-only.
  std::vector<AISetRule> literals;

  bool member(std::uint32_t v) const { return mask[v] != 0; }
  bool total() const { return !literals.empty(); }
  // Rule evaluation at any element; requires total().
  bool eval(const Word& w) const;
  std::size_t count() const;
  bool empty_set() const { return count() == 0; }
  // Deterministic fingerprint of the ball mask.
  std::string mask_key() const;
};

AISet materialize(const AISetRule& rule, std::shared_ptr<const CayleyBall> ball,
                  std::shared_ptr<const Subgroup> subgroup);

// Boolean algebra on sets over the same ball. Complement keeps the rule for
// single-literal sets and degrades to mask-only otherwise; intersection keeps
// the conjunction when both inputs are total. Subgroup and conjugator of the
// first argument are carried.
AISet complement_of(const AISet& X);
AISet intersect(const AISet& X, const AISet& Y);
AISet symmetric_difference(const AISet& X, const AISet& Y);

// g . X rebuilt from translated rules (requires X.total()); the subgroup is
// unchanged and the conjugator is left-multiplied by g, matching the fact
// that g X is (g H g^-1)-invariant when X is H-invariant.
AISet left_translate(const AISet& X, const Word& g);
// X . g as a mask-only set (requires X.total() to evaluate near the rim).
AISet right_translate(const AISet& X, const Word& g);

// Vertex boundary: members with at least one Cayley neighbor outside the
// set. For total sets, neighbors beyond the ball are decided by the rule and
// the result is exact. For mask-only sets, rim members whose in-ball
// neighbors all belong to the set are undetermined and listed separately.
struct BoundaryReport {
  std::vector<std::uint32_t> vertices;
  std::vector<std::uint32_t> rim_incomplete;
  bool complete = true;
};

BoundaryReport boundary(const AISet& X);
// The same vertices as a mask-only set, carrying X's subgroup and conjugator.
AISet boundary_set(const AISet& X);

// Everything within ball distance <= t of X (t = 0 returns X's vertices).
AISet thicken(const AISet& X, int t);

// Windowed H-finiteness at truncation. counts[r-1] is the number of distinct
// right cosets of conjugator . H . conjugator^-1 met by the set inside
// Ball(r). The last `window` entries decide the class: all equal means
// h_finite, strictly increasing means h_infinite_at_truncation, anything
// else is inconclusive. 1 <= window <= radius, otherwise InputError.
enum class Finiteness { h_finite, h_infinite_at_truncation, inconclusive };

struct FinitenessProfile {
  std::vector<long long> counts;
  Finiteness cls = Finiteness::inconclusive;
  long long stable_count = 0;  // meaningful when cls == h_finite
};

FinitenessProfile h_finiteness(const AISet& A, int window);
// Profile of the same vertex set w.r.t. a different subgroup or conjugator.
FinitenessProfile h_finiteness_wrt(const AISet& A, const Subgroup& H,
                                   const Word& conjugator, int window);
// The window rule alone, applied to an already accumulated count sequence.
Finiteness classify_counts(const std::vector<long long>& counts, int window);

enum class TriBool { yes, no, undecided };

// Invariance of the set under its (conjugated) subgroup: yes when every
// literal carries an algebraic certificate (half-space normals orthogonal to
// the generators, prefix axis containing the generators), no when some
// generator moves a ball element across the membership rule, undecided when
// only the ball-level check passed.
TriBool invariance(const AISet& X);

struct NontrivialityReport {
  TriBool invariant;
  FinitenessProfile boundary_profile;
  FinitenessProfile set_profile;
  FinitenessProfile complement_profile;
  TriBool nontrivial;
};

// Nontrivial almost-invariant set test: invariant, boundary h_finite, and
// both the set and its complement h_infinite at truncation.
NontrivialityReport is_nontrivial_ai_set(const AISet& X, int window);

// The four corners of a pair, in the order X&Y, X*&Y, X&Y*, X*&Y*, each
// profiled w.r.t. both sets' subgroups.
struct CornerQuad {
  std::array<AISet, 4> corner;
  std::array<FinitenessProfile, 4> wrt_x;
  std::array<FinitenessProfile, 4> wrt_y;
};

CornerQuad corners(const AISet& X, const AISet& Y, int window);

// X crosses Y when all four corners are h_infinite w.r.t. X's subgroup;
// any h_finite corner refutes it, inconclusive profiles leave it undecided.
// The reverse direction (w.r.t. Y's subgroup) is computed and compared:
// symmetry_consistent is false only when both directions are decided and
// disagree.
struct CrossingReport {
  TriBool forward;
  TriBool reverse;
  bool symmetry_consistent;
  CornerQuad quad;
};

CrossingReport crosses(const AISet& X, const AISet& Y, int window);

// X ~ Y when both off-diagonal corners X&Y* and X*&Y are h_finite.
TriBool equivalent(const AISet& X, const AISet& Y, int window);

// Partial order on almost-equality classes: U <= V iff the corner U&V* is
// empty, or is small (h_finite w.r.t. U's subgroup) while none of the other
// three corners is small.
TriBool leq(const AISet& U, const AISet& V, int window);

// Condition (*): whenever two corners of a pair are small, one of them is
// empty. Violations list the offending pair and corner indices; pairs with
// an inconclusive corner profile are reported as undecided.
struct ConditionStarReport {
  TriBool holds;
  struct Violation {
    std::size_t first, second;  // indices into the family
    int corner_a, corner_b;     // indices into the corner quad
  };
  std::vector<Violation> violations;
  std::vector<std::pair<std::size_t, std::size_t>> undecided_pairs;
};

ConditionStarReport check_condition_star(const std::vector<AISet>& family, int window);

// Number of ends of the pair (G, H) witnessed at truncation: components of
// the complement of an H-invariant, connected, H-finite set A, each profiled
// w.r.t. H. Preconditions (invariance not refuted, connectivity inside the
// ball, A h_finite) raise PreconditionError.
struct CoendReport {
  TriBool invariant;
  FinitenessProfile set_profile;
  struct Component {
    std::vector<std::uint32_t> vertices;
    FinitenessProfile profile;
  };
  std::vector<Component> components;
  int h_infinite_count = 0;
};

CoendReport coend_witness(const AISet& A, int window);

// Audit of the non-crossing criterion for a pair X (over H), Y (over K):
// when G, H, K are all one-ended and H meets K trivially, nontrivial
// almost-invariant sets over them cannot cross. Each hypothesis is measured
// at truncation, the thickened boundary overlap N_t(bd X) & N_t(bd Y) is
// profiled w.r.t. both subgroups, the boundary product rule and the
// containment bd(X&Y) inside (N_t(bd X)&N_t(Y)) | (N_t(X)&N_t(bd Y)) are
// checked on the ball, and the crossing verdict is compared against the
// hypotheses.
struct NocrossReport {
  int thickening;
  bool degenerate_pair;  // Y equals X or X* on the ball
  Ends ends_of_group;
  std::optional<Ends> ends_of_h;  // empty when not decidable for the family
  std::optional<Ends> ends_of_k;
  TriBool hk_intersection_trivial;
  TriBool x_nontrivial;
  TriBool y_nontrivial;
  TriBool hypotheses_hold;
  std::size_t thickened_boundary_overlap;
  FinitenessProfile overlap_wrt_h;
  FinitenessProfile overlap_wrt_k;
  // Per corner, in quad order: bd(corner) inside (bd X' & Y') | (X' & bd Y')
  // where X', Y' are the relevant set or complement.
  std::array<bool, 4> corner_bound_holds;
  bool product_rule_exact;  // equality for the X&Y corner across the ball
  CrossingReport crossing;
  bool consistent;  // hypotheses hold and crossing == yes never coincide
  // Translation-stability sanity check: when X is h_finite w.r.t. H, stable
  // under right translation by K's generators, and H has infinite index,
  // X is expected to be K-finite as well; the measured K-profile is attached.
  bool translation_flag;
  std::optional<Finiteness> translation_k_class;
};

NocrossReport nocross_report(const AISet& X, const AISet& Y, int thickening, int window);

}  // namespace ccx
