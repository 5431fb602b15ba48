#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ccx/aisets.hpp"
#include "ccx/ccomplex.hpp"
#include "ccx/group.hpp"
#include "ccx/subgroup.hpp"

namespace ccx {

// One unordered pair {S, S*} in a translate family. The canonical orientation
// is the first one encountered while enumerating translates, so it is always
// rule-backed; the complement may degrade to mask-only when the base set has
// more than one literal.
struct FamilyMember {
  AISet set;
  AISet co;
  int base = 0;
  Word translator;
  FinitenessProfile set_profile;  // wrt the member's own subgroup and conjugator
  FinitenessProfile co_profile;
};

// The finite slice of the orbit {g X_i} used in place of the full translate
// system: every base set translated by every element of the translating ball,
// closed under complement, deduplicated by ball-set equality. Oriented
// elements are indexed by E ids: member m contributes 2m (its set) and 2m+1
// (the complement); partner(e) flips orientation. The partial order, the
// crossing verdicts, and the good-position check are all computed at build
// time from cached coset tables, so lookups afterwards are O(1).
struct TranslateFamily {
  std::shared_ptr<const CayleyBall> ball;
  int translate_radius = 0;
  int window = 2;
  std::vector<AISet> bases;
  std::vector<FamilyMember> members;

  // Partial order on E ids, row-major: order[e * element_count() + f] holds
  // the verdict for "e is contained in f up to a small set".
  std::vector<TriBool> order;
  std::vector<std::pair<int, int>> order_undecided;  // E id pairs

  // Crossing verdicts on unordered members, row-major over member pairs.
  std::vector<TriBool> crossing;
  std::vector<std::pair<int, int>> crossing_undecided;  // member pairs

  // Good position: at most one small nonempty corner per member pair.
  ConditionStarReport star;

  int member_count() const { return static_cast<int>(members.size()); }
  int element_count() const { return 2 * member_count(); }
  static int partner(int e) { return e ^ 1; }
  const AISet& element(int e) const;
  TriBool order_leq(int e, int f) const;
  TriBool crossing_between(int i, int j) const;
  std::string describe(int e) const;  // "translator.B<base>" with * for complements
};

// Builds the family over the translating ball of the given radius. All bases
// must be rule-backed sets over the same ball; the translating radius must
// leave room in the ball (radius + 1 at most the ball radius, so that
// frontier-stability checks can enlarge it once). Translates whose set or
// complement misses the ball entirely are rejected.
TranslateFamily build_family(const std::vector<AISet>& bases, int translate_radius, int window);

// Graph on the unordered members whose edges are the pairs that cross.
// Throws InconclusiveError when any pairwise verdict is undecided at this
// truncation, listing the offending pairs.
struct CrossingGraph {
  int nodes = 0;
  std::vector<std::pair<int, int>> edges;
};
CrossingGraph build_crossing_graph(const TranslateFamily& F);

// Cross-connected components: connected components of the crossing graph.
// Classes are sorted and ordered by least member.
struct CCCPartition {
  int count = 0;
  std::vector<int> component_of;
  std::vector<std::vector<int>> classes;
};
CCCPartition cccs(const TranslateFamily& F);

// Whether component b lies strictly between components a and c: some oriented
// elements U, V, W of the three components satisfy U <= V <= W. Requires the
// three components to be distinct and the family to be in verified good
// position; undecided order verdicts among the candidates make the answer
// inconclusive rather than false.
bool betweenness(const TranslateFamily& F, const CCCPartition& P, int a, int b, int c);

// Points with a strict betweenness relation. rel is row-major over ordered
// triples (x, y, z) and holds when y is strictly between x and z.
struct Pretree {
  int points = 0;
  std::vector<char> rel;
  bool between(int x, int y, int z) const;
};
Pretree pretree_from_family(const TranslateFamily& F, const CCCPartition& P);

// Exhaustive check of the pretree axioms: betweenness forces distinct outer
// points, is symmetric, excludes its own reversal, and splits at any fourth
// point; discreteness is automatic on a finite point set but still recorded.
// On failure the report names the first violated axiom and the witness
// points.
struct PretreeCheck {
  bool ok = true;
  std::string axiom;
  std::vector<int> witness;
  bool discrete = true;
};
PretreeCheck verify_pretree(const Pretree& T);

// The bipartite tree of a discrete pretree: one side is the points, the
// other the stars (maximal sets of pairwise adjacent points, where adjacent
// means distinct with nothing strictly between). Edges join each point to
// the stars containing it. Construction verifies the axioms first and
// asserts the result is connected and acyclic.
struct BipartiteTree {
  int points = 0;
  std::vector<std::vector<int>> stars;
  std::vector<std::pair<int, int>> edges;  // (point, star index)
  bool is_point() const { return points <= 1; }
};
BipartiteTree build_tree(const Pretree& T);

// Generators found for the setwise stabilizer of a member inside the
// translating ball: every g there with gS equal to S as ball sets. The basis
// reduces the found generators through the subgroup machinery of the ambient
// family (folded basis for free groups, lattice basis for free-abelian
// ones); surface ambients keep the raw list. This is always a lower bound
// for the stabilizer, never a claim to have generated all of it.
struct StabilizerReport {
  std::vector<Word> found;
  std::vector<Word> basis;
};
StabilizerReport stabilizer_generators(const TranslateFamily& F, int member);

// Partial-order audit behind the tree-from-poset construction. D1 is
// order-reversal under the complement involution, D3 requires every pair to
// be comparable in at least one of its four orientations, D4 forbids an
// element lying below both orientations of another. The interval-finiteness
// axiom is witnessed at truncation: interval sizes are bounded and must not
// change when the translating ball grows by one step. A double-coset census
// over interval translators is surfaced alongside.
struct DunwoodyCheck {
  bool d1 = true, d3 = true, d4 = true;
  std::vector<std::pair<int, int>> d1_violations;  // E id pairs
  std::vector<std::pair<int, int>> d3_violations;
  std::vector<std::pair<int, int>> d4_violations;
  long long comparable_pairs = 0;
  long long max_interval = 0;
  long long max_interval_double_cosets = 0;
  bool intervals_stable = true;
  std::vector<std::pair<int, int>> unstable_pairs;
  bool ok() const { return d1 && d3 && d4 && intervals_stable; }
};
DunwoodyCheck verify_dunwoody(const TranslateFamily& F);
DunwoodyCheck verify_dunwoody(const TranslateFamily& F, const TranslateFamily& enlarged);

// Quotient of the tree under the partial action of the translating ball.
// Translates that leave the truncated family are counted as escapes, never
// silently dropped. Edge stabilizers are reported for the least member of
// each edge orbit.
struct QuotientSkeleton {
  std::vector<int> vertex_orbit;  // per tree vertex
  std::vector<int> edge_orbit;    // per member
  int vertex_orbits = 0;
  int edge_orbits = 0;
  std::vector<std::pair<int, int>> edges;  // per edge orbit, vertex orbit ids
  std::vector<int> edge_rep;               // least member per edge orbit
  std::vector<StabilizerReport> edge_stabilizers;
  int escapes = 0;
};

// The tree whose edge set is the family itself: vertices are classes of
// oriented elements glued when one follows immediately after the other's
// complement, and the geometric edge m joins the classes of 2m and 2m+1.
// When the family has at most 200 oriented elements the defining property is
// checked exhaustively: e <= f exactly when an oriented path starts with e
// and ends with f.
struct DunwoodyTree {
  std::vector<int> vertex_of;  // per E id
  int vertex_count = 0;
  bool oriented_path_checked = false;
  bool oriented_path_matches = true;
  QuotientSkeleton quotient;
};
DunwoodyTree dunwoody_tree(const TranslateFamily& F);
DunwoodyTree dunwoody_tree(const TranslateFamily& F, const DunwoodyCheck& check);

// One base of a splitting instance: a set rule together with the generators
// of the subgroup it is almost invariant under.
struct SplitBase {
  AISetRule rule;
  std::vector<Word> subgroup_generators;
};

struct SplitOptions {
  int ball_radius = 0;
  int translate_radius = 0;
  int window = 2;
  int dim_cap = 1;
  OracleMode mode = OracleMode::witness_bounded;
  bool assume_one_end = false;  // proceed when the ambient group has more than one end
};

enum class SplitOutcome { splitting_exhibited, point_tree, inconclusive_at_truncation };

// Consistency probe for crossing translates over the same base: a crossing
// pair must have conjugate subgroups with infinite intersection and cosets
// in one component of the coset complex.
struct CrossCheckRecord {
  int member_a = 0;
  int member_b = 0;
  bool intersection_infinite = false;
  bool same_component = false;
};

struct SplitReport {
  Ends ambient_ends = Ends::one;
  bool ends_override_used = false;
  std::vector<NontrivialityReport> base_checks;
  std::vector<ComponentReport> complex_components;  // per base subgroup
  TranslateFamily family;
  CCCPartition partition;
  bool ccc_stable = true;
  BipartiteTree tree;
  DunwoodyCheck dunwoody;
  bool dunwoody_ran = false;
  DunwoodyTree dtree;
  bool dtree_built = false;
  std::vector<CrossCheckRecord> cross_checks;
  bool cross_checks_pass = true;
  SplitOutcome outcome = SplitOutcome::inconclusive_at_truncation;
  std::vector<std::string> notes;
};

// End-to-end splitting search: audits the hypotheses, builds the coset
// complexes and the translate family, partitions it into cross-connected
// components, and either exhibits a splitting through the tree machinery,
// certifies a point tree, or reports honestly that the truncation cannot
// decide. Verdicts carry their evidence in the report; the verdict is only
// "splitting exhibited" when every verdict along the way is stable one step
// past the truncation used.
SplitReport split_pipeline(const GroupSpec& G, const std::vector<SplitBase>& bases,
                           const SplitOptions& opt);

}  // namespace ccx
