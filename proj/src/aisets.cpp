#include "ccx/aisets.hpp"

#include <algorithm>
#include <deque>
#include <set>

#include "ccx/error.hpp"
#include "ccx/stallings.hpp"

namespace ccx {

namespace {

long long dot(const std::vector<long long>& a, const std::vector<long long>& b) {
  long long s = 0;
  for (std::size_t i = 0; i < a.size() && i < b.size(); ++i) s += a[i] * b[i];
  return s;
}

void check_letters(const GroupSpec& G, const Word& w, const char* what) {
  for (Letter l : w.letters()) {
    if (static_cast<int>(l) >= G.alphabet_size()) {
      throw InputError(std::string(what) + " contains a letter outside the alphabet");
    }
  }
}

bool base_member(const GroupSpec& G, const AISetRule& rule, const Word& x) {
  switch (rule.kind) {
    case RuleKind::half_space:
      return dot(G.exponents(x), rule.normal) >= rule.threshold;
    case RuleKind::prefix: {
      const auto& ls = x.letters();
      std::size_t i = 0;
      while (i < ls.size() && slot_of(ls[i]) == static_cast<unsigned>(rule.axis_slot)) ++i;
      const auto& h = rule.head.letters();
      if (ls.size() - i < h.size()) return false;
      return std::equal(h.begin(), h.end(), ls.begin() + static_cast<std::ptrdiff_t>(i));
    }
    case RuleKind::extensional:
      return rule.members.count(x.key()) != 0;
  }
  return false;
}

void require_same_ball(const AISet& X, const AISet& Y) {
  if (X.ball == Y.ball) return;
  if (!X.ball || !Y.ball || !(X.ball->group() == Y.ball->group()) ||
      X.ball->radius() != Y.ball->radius()) {
    throw AmbientMismatchError("sets live on different balls");
  }
}

// All Cayley neighbors of the vertex, split into in-ball indices and
// out-of-ball words. Interior vertices have no out-of-ball neighbors.
void cayley_neighbors(const CayleyBall& B, std::uint32_t v,
                      std::vector<std::uint32_t>& in_ball, std::vector<Word>& outside) {
  in_ball.clear();
  outside.clear();
  const GroupSpec& G = B.group();
  for (int l = 0; l < G.alphabet_size(); ++l) {
    Word u = G.product(B.word(v), Word(std::vector<Letter>{static_cast<Letter>(l)}, true));
    if (auto idx = B.find(u)) {
      in_ball.push_back(*idx);
    } else {
      outside.push_back(u);
    }
  }
}

Finiteness classify_tail(const std::vector<long long>& counts, int window) {
  return classify_counts(counts, window);
}

AISet mask_only_like(const AISet& X) {
  AISet S;
  S.ball = X.ball;
  S.subgroup = X.subgroup;
  S.conjugator = X.conjugator;
  S.mask.assign(X.ball->size(), 0);
  return S;
}

}  // namespace

Finiteness classify_counts(const std::vector<long long>& counts, int window) {
  if (window < 1 || static_cast<std::size_t>(window) > counts.size()) {
    throw InputError("window must be between 1 and the number of count entries");
  }
  const std::size_t start = counts.size() - static_cast<std::size_t>(window);
  bool all_equal = true;
  bool strict = true;
  for (std::size_t i = start + 1; i < counts.size(); ++i) {
    if (counts[i] != counts[i - 1]) all_equal = false;
    if (counts[i] <= counts[i - 1]) strict = false;
  }
  if (window == 1 || all_equal) return Finiteness::h_finite;
  if (strict) return Finiteness::h_infinite_at_truncation;
  return Finiteness::inconclusive;
}

void validate_rule(const GroupSpec& G, const AISetRule& rule) {
  check_letters(G, rule.translate, "translate");
  if (G.normal_form(rule.translate) != rule.translate) {
    throw InputError("translate must be in normal form");
  }
  switch (rule.kind) {
    case RuleKind::half_space: {
      if (G.family() != Family::free_abelian) {
        throw InputError("half_space rules need a free-abelian ambient group");
      }
      if (rule.normal.size() != static_cast<std::size_t>(G.rank())) {
        throw InputError("half_space normal needs one entry per generator");
      }
      if (std::all_of(rule.normal.begin(), rule.normal.end(),
                      [](long long x) { return x == 0; })) {
        throw InputError("half_space normal must be nonzero");
      }
      break;
    }
    case RuleKind::prefix: {
      if (G.family() != Family::free_group) {
        throw InputError("prefix rules need a free ambient group");
      }
      if (rule.axis_slot < 0 || rule.axis_slot >= G.rank()) {
        throw InputError("prefix axis slot out of range");
      }
      check_letters(G, rule.head, "prefix head");
      if (rule.head.empty()) throw InputError("prefix head must be nonempty");
      if (G.normal_form(rule.head) != rule.head) {
        throw InputError("prefix head must be reduced");
      }
      if (slot_of(rule.head.letters().front()) == static_cast<unsigned>(rule.axis_slot)) {
        throw InputError("prefix head must not start with the axis generator");
      }
      break;
    }
    case RuleKind::extensional: {
      for (const auto& key : rule.members) {
        Word w(std::vector<Letter>(key.begin(), key.end()));
        check_letters(G, w, "extensional member");
        if (G.normal_form(w).key() != key) {
          throw InputError("extensional member keys must be normal forms");
        }
      }
      break;
    }
  }
}

bool rule_member(const GroupSpec& G, const AISetRule& rule, const Word& w) {
  Word x = G.normal_form(w);
  if (!rule.translate.empty()) x = G.product(G.inverse(rule.translate), x);
  bool m = base_member(G, rule, x);
  return rule.complemented ? !m : m;
}

AISetRule translate_rule(const GroupSpec& G, const AISetRule& rule, const Word& g) {
  AISetRule out = rule;
  out.translate = G.product(g, rule.translate);
  return out;
}

bool AISet::eval(const Word& w) const {
  if (!total()) throw PreconditionError("set has no rule to evaluate off the ball");
  const GroupSpec& G = ball->group();
  for (const auto& rule : literals) {
    if (!rule_member(G, rule, w)) return false;
  }
  return true;
}

std::size_t AISet::count() const {
  return static_cast<std::size_t>(std::count(mask.begin(), mask.end(), char(1)));
}

std::string AISet::mask_key() const {
  std::string k(mask.size(), '0');
  for (std::size_t i = 0; i < mask.size(); ++i) {
    if (mask[i]) k[i] = '1';
  }
  return k;
}

AISet materialize(const AISetRule& rule, std::shared_ptr<const CayleyBall> ball,
                  std::shared_ptr<const Subgroup> subgroup) {
  if (!ball || !subgroup) throw InputError("materialize needs a ball and a subgroup");
  if (!(subgroup->group() == ball->group())) {
    throw AmbientMismatchError("subgroup and ball ambient groups differ");
  }
  const GroupSpec& G = ball->group();
  validate_rule(G, rule);
  AISet S;
  S.ball = std::move(ball);
  S.subgroup = std::move(subgroup);
  S.conjugator = rule.translate;
  S.mask.assign(S.ball->size(), 0);
  for (std::uint32_t v = 0; v < S.ball->size(); ++v) {
    S.mask[v] = rule_member(G, rule, S.ball->word(v)) ? 1 : 0;
  }
  S.literals = {rule};
  return S;
}

AISet complement_of(const AISet& X) {
  AISet S = X;
  for (auto& b : S.mask) b = b ? 0 : 1;
  if (X.literals.size() == 1) {
    S.literals[0].complemented = !S.literals[0].complemented;
  } else {
    S.literals.clear();
  }
  return S;
}

AISet intersect(const AISet& X, const AISet& Y) {
  require_same_ball(X, Y);
  AISet S = X;
  for (std::size_t i = 0; i < S.mask.size(); ++i) {
    S.mask[i] = (X.mask[i] && Y.mask[i]) ? 1 : 0;
  }
  if (X.total() && Y.total()) {
    S.literals.insert(S.literals.end(), Y.literals.begin(), Y.literals.end());
  } else {
    S.literals.clear();
  }
  return S;
}

AISet symmetric_difference(const AISet& X, const AISet& Y) {
  require_same_ball(X, Y);
  AISet S = mask_only_like(X);
  for (std::size_t i = 0; i < S.mask.size(); ++i) {
    S.mask[i] = (X.mask[i] != Y.mask[i]) ? 1 : 0;
  }
  return S;
}

AISet left_translate(const AISet& X, const Word& g) {
  if (!X.total()) throw PreconditionError("left translation needs a rule-backed set");
  const GroupSpec& G = X.ball->group();
  AISet S = mask_only_like(X);
  for (const auto& rule : X.literals) S.literals.push_back(translate_rule(G, rule, g));
  S.conjugator = G.product(g, X.conjugator);
  for (std::uint32_t v = 0; v < S.ball->size(); ++v) {
    S.mask[v] = S.eval(S.ball->word(v)) ? 1 : 0;
  }
  return S;
}

AISet right_translate(const AISet& X, const Word& g) {
  if (!X.total()) throw PreconditionError("right translation needs a rule-backed set");
  const GroupSpec& G = X.ball->group();
  AISet S = mask_only_like(X);
  Word ginv = G.inverse(g);
  for (std::uint32_t v = 0; v < S.ball->size(); ++v) {
    S.mask[v] = X.eval(G.product(S.ball->word(v), ginv)) ? 1 : 0;
  }
  return S;
}

BoundaryReport boundary(const AISet& X) {
  const CayleyBall& B = *X.ball;
  BoundaryReport report;
  std::vector<std::uint32_t> in_ball;
  std::vector<Word> outside;
  for (std::uint32_t v = 0; v < B.size(); ++v) {
    if (!X.mask[v]) continue;
    cayley_neighbors(B, v, in_ball, outside);
    bool is_boundary = false;
    for (std::uint32_t u : in_ball) {
      if (!X.mask[u]) {
        is_boundary = true;
        break;
      }
    }
    if (!is_boundary && !outside.empty()) {
      if (X.total()) {
        for (const Word& u : outside) {
          if (!X.eval(u)) {
            is_boundary = true;
            break;
          }
        }
      } else {
        report.rim_incomplete.push_back(v);
        continue;
      }
    }
    if (is_boundary) report.vertices.push_back(v);
  }
  report.complete = report.rim_incomplete.empty();
  return report;
}

AISet boundary_set(const AISet& X) {
  BoundaryReport report = boundary(X);
  AISet S = mask_only_like(X);
  for (std::uint32_t v : report.vertices) S.mask[v] = 1;
  return S;
}

AISet thicken(const AISet& X, int t) {
  if (t < 0) throw InputError("thickening radius must be nonnegative");
  const CayleyBall& B = *X.ball;
  AISet S = mask_only_like(X);
  std::deque<std::pair<std::uint32_t, int>> queue;
  for (std::uint32_t v = 0; v < B.size(); ++v) {
    if (X.mask[v]) {
      S.mask[v] = 1;
      queue.emplace_back(v, 0);
    }
  }
  while (!queue.empty()) {
    auto [v, d] = queue.front();
    queue.pop_front();
    if (d == t) continue;
    for (std::uint32_t u : B.neighbors(v)) {
      if (!S.mask[u]) {
        S.mask[u] = 1;
        queue.emplace_back(u, d + 1);
      }
    }
  }
  return S;
}

FinitenessProfile h_finiteness_wrt(const AISet& A, const Subgroup& H,
                                   const Word& conjugator, int window) {
  const CayleyBall& B = *A.ball;
  const GroupSpec& G = B.group();
  const int R = B.radius();
  if (window < 1 || window > R) {
    throw InputError("window must be between 1 and the ball radius");
  }
  if (!(H.group() == G)) {
    throw AmbientMismatchError("profile subgroup lives in a different group");
  }
  std::vector<long long> fresh(static_cast<std::size_t>(R) + 1, 0);
  std::set<std::string> seen;
  Word cinv = conjugator.empty() ? Word::identity() : G.inverse(conjugator);
  for (std::uint32_t v = 0; v < B.size(); ++v) {
    if (!A.mask[v]) continue;
    Word g = cinv.empty() ? B.word(v) : G.product(cinv, B.word(v));
    if (seen.insert(H.right_coset_key(g)).second) {
      fresh[static_cast<std::size_t>(B.distance(v))]++;
    }
  }
  FinitenessProfile profile;
  profile.counts.resize(static_cast<std::size_t>(R));
  long long running = fresh[0];
  for (int r = 1; r <= R; ++r) {
    running += fresh[static_cast<std::size_t>(r)];
    profile.counts[static_cast<std::size_t>(r - 1)] = running;
  }
  profile.cls = classify_tail(profile.counts, window);
  profile.stable_count = profile.counts.empty() ? 0 : profile.counts.back();
  return profile;
}

FinitenessProfile h_finiteness(const AISet& A, int window) {
  return h_finiteness_wrt(A, *A.subgroup, A.conjugator, window);
}

TriBool invariance(const AISet& X) {
  const CayleyBall& B = *X.ball;
  const GroupSpec& G = B.group();
  const Subgroup& H = *X.subgroup;
  const Word& c = X.conjugator;

  std::vector<Word> conjugated;
  for (const Word& g : H.generators()) {
    Word h = c.empty() ? G.normal_form(g) : G.conjugate(c, g);
    if (!h.empty()) conjugated.push_back(h);
  }

  // Counterexample scan: a generator moving a ball element across the rule.
  // Off-ball products are checked by rule evaluation, except for sets with an
  // extensional literal: a truncated member list stands for the set clipped
  // to the ball, so membership beyond it is undetermined rather than false.
  const bool off_ball_decidable =
      X.total() && std::none_of(X.literals.begin(), X.literals.end(), [](const AISetRule& r) {
        return r.kind == RuleKind::extensional;
      });
  for (const Word& h : conjugated) {
    for (std::uint32_t v = 0; v < B.size(); ++v) {
      Word u = G.product(h, B.word(v));
      bool before = X.mask[v] != 0;
      if (auto idx = B.find(u)) {
        if ((X.mask[*idx] != 0) != before) return TriBool::no;
      } else if (off_ball_decidable) {
        if (X.eval(u) != before) return TriBool::no;
      }
    }
  }
  if (!X.total()) return TriBool::undecided;

  // Algebraic certificates per literal.
  for (const auto& rule : X.literals) {
    switch (rule.kind) {
      case RuleKind::half_space: {
        for (const Word& g : H.generators()) {
          if (dot(G.exponents(g), rule.normal) != 0) return TriBool::undecided;
        }
        break;
      }
      case RuleKind::prefix: {
        for (const Word& h : conjugated) {
          Word u = rule.translate.empty()
                       ? h
                       : G.product(G.product(G.inverse(rule.translate), h), rule.translate);
          for (Letter l : u.letters()) {
            if (slot_of(l) != static_cast<unsigned>(rule.axis_slot)) return TriBool::undecided;
          }
        }
        break;
      }
      case RuleKind::extensional:
        return TriBool::undecided;
    }
  }
  return TriBool::yes;
}

NontrivialityReport is_nontrivial_ai_set(const AISet& X, int window) {
  NontrivialityReport report;
  report.invariant = invariance(X);
  report.boundary_profile = h_finiteness(boundary_set(X), window);
  report.set_profile = h_finiteness(X, window);
  report.complement_profile = h_finiteness(complement_of(X), window);
  const bool any_no = report.invariant == TriBool::no ||
                      report.boundary_profile.cls == Finiteness::h_infinite_at_truncation ||
                      report.set_profile.cls == Finiteness::h_finite ||
                      report.complement_profile.cls == Finiteness::h_finite;
  const bool all_yes = report.invariant == TriBool::yes &&
                       report.boundary_profile.cls == Finiteness::h_finite &&
                       report.set_profile.cls == Finiteness::h_infinite_at_truncation &&
                       report.complement_profile.cls == Finiteness::h_infinite_at_truncation;
  report.nontrivial = any_no ? TriBool::no : (all_yes ? TriBool::yes : TriBool::undecided);
  return report;
}

CornerQuad corners(const AISet& X, const AISet& Y, int window) {
  require_same_ball(X, Y);
  AISet xc = complement_of(X);
  AISet yc = complement_of(Y);
  CornerQuad quad{{intersect(X, Y), intersect(xc, Y), intersect(X, yc), intersect(xc, yc)},
                  {},
                  {}};
  for (int i = 0; i < 4; ++i) {
    quad.wrt_x[static_cast<std::size_t>(i)] =
        h_finiteness_wrt(quad.corner[static_cast<std::size_t>(i)], *X.subgroup, X.conjugator,
                         window);
    quad.wrt_y[static_cast<std::size_t>(i)] =
        h_finiteness_wrt(quad.corner[static_cast<std::size_t>(i)], *Y.subgroup, Y.conjugator,
                         window);
  }
  return quad;
}

namespace {

TriBool crossing_verdict(const std::array<FinitenessProfile, 4>& profiles) {
  bool all_infinite = true;
  bool any_finite = false;
  for (const auto& p : profiles) {
    if (p.cls != Finiteness::h_infinite_at_truncation) all_infinite = false;
    if (p.cls == Finiteness::h_finite) any_finite = true;
  }
  if (any_finite) return TriBool::no;
  if (all_infinite) return TriBool::yes;
  return TriBool::undecided;
}

}  // namespace

CrossingReport crosses(const AISet& X, const AISet& Y, int window) {
  CrossingReport report{TriBool::undecided, TriBool::undecided, true, corners(X, Y, window)};
  report.forward = crossing_verdict(report.quad.wrt_x);
  report.reverse = crossing_verdict(report.quad.wrt_y);
  report.symmetry_consistent = !(report.forward != TriBool::undecided &&
                                 report.reverse != TriBool::undecided &&
                                 report.forward != report.reverse);
  return report;
}

TriBool equivalent(const AISet& X, const AISet& Y, int window) {
  CornerQuad quad = corners(X, Y, window);
  const auto& off_a = quad.wrt_x[1];  // X* & Y
  const auto& off_b = quad.wrt_x[2];  // X & Y*
  if (off_a.cls == Finiteness::h_infinite_at_truncation ||
      off_b.cls == Finiteness::h_infinite_at_truncation) {
    return TriBool::no;
  }
  if (off_a.cls == Finiteness::h_finite && off_b.cls == Finiteness::h_finite) {
    return TriBool::yes;
  }
  return TriBool::undecided;
}

TriBool leq(const AISet& U, const AISet& V, int window) {
  CornerQuad quad = corners(U, V, window);
  if (quad.corner[2].empty_set()) return TriBool::yes;
  switch (quad.wrt_x[2].cls) {
    case Finiteness::h_infinite_at_truncation:
      return TriBool::no;
    case Finiteness::inconclusive:
      return TriBool::undecided;
    case Finiteness::h_finite:
      break;
  }
  bool undecided = false;
  for (int i : {0, 1, 3}) {
    switch (quad.wrt_x[static_cast<std::size_t>(i)].cls) {
      case Finiteness::h_finite:
        return TriBool::no;  // U & V* is not the only small corner
      case Finiteness::inconclusive:
        undecided = true;
        break;
      case Finiteness::h_infinite_at_truncation:
        break;
    }
  }
  return undecided ? TriBool::undecided : TriBool::yes;
}

ConditionStarReport check_condition_star(const std::vector<AISet>& family, int window) {
  ConditionStarReport report;
  report.holds = TriBool::yes;
  for (std::size_t i = 0; i < family.size(); ++i) {
    for (std::size_t j = i + 1; j < family.size(); ++j) {
      CornerQuad quad = corners(family[i], family[j], window);
      bool pair_violates = false;
      bool pair_undecided = false;
      std::array<bool, 4> small{};
      std::array<bool, 4> empty{};
      for (int c = 0; c < 4; ++c) {
        const auto cls = quad.wrt_x[static_cast<std::size_t>(c)].cls;
        small[static_cast<std::size_t>(c)] = cls == Finiteness::h_finite;
        empty[static_cast<std::size_t>(c)] = quad.corner[static_cast<std::size_t>(c)].empty_set();
        if (cls == Finiteness::inconclusive) pair_undecided = true;
      }
      for (int a = 0; a < 4; ++a) {
        for (int b = a + 1; b < 4; ++b) {
          if (small[static_cast<std::size_t>(a)] && small[static_cast<std::size_t>(b)] &&
              !empty[static_cast<std::size_t>(a)] && !empty[static_cast<std::size_t>(b)]) {
            report.violations.push_back({i, j, a, b});
            pair_violates = true;
          }
        }
      }
      if (!pair_violates && pair_undecided) report.undecided_pairs.emplace_back(i, j);
    }
  }
  if (!report.violations.empty()) {
    report.holds = TriBool::no;
  } else if (!report.undecided_pairs.empty()) {
    report.holds = TriBool::undecided;
  }
  return report;
}

CoendReport coend_witness(const AISet& A, int window) {
  const CayleyBall& B = *A.ball;
  CoendReport report;
  report.invariant = invariance(A);
  if (report.invariant == TriBool::no) {
    throw PreconditionError("set is not invariant under its subgroup");
  }
  if (A.count() == 0) throw PreconditionError("empty set has no end structure");

  // Connectivity of A inside the ball.
  std::vector<char> seen(B.size(), 0);
  std::uint32_t start = 0;
  while (!A.mask[start]) ++start;
  std::deque<std::uint32_t> queue{start};
  seen[start] = 1;
  std::size_t reached = 0;
  while (!queue.empty()) {
    std::uint32_t v = queue.front();
    queue.pop_front();
    ++reached;
    for (std::uint32_t u : B.neighbors(v)) {
      if (A.mask[u] && !seen[u]) {
        seen[u] = 1;
        queue.push_back(u);
      }
    }
  }
  if (reached != A.count()) {
    throw PreconditionError("set is not connected inside the ball");
  }

  report.set_profile = h_finiteness(A, window);
  if (report.set_profile.cls != Finiteness::h_finite) {
    throw PreconditionError("set is not h-finite at truncation");
  }

  std::fill(seen.begin(), seen.end(), char(0));
  for (std::uint32_t v = 0; v < B.size(); ++v) {
    if (A.mask[v] || seen[v]) continue;
    AISet comp = mask_only_like(A);
    std::deque<std::uint32_t> frontier{v};
    seen[v] = 1;
    std::vector<std::uint32_t> vertices;
    while (!frontier.empty()) {
      std::uint32_t x = frontier.front();
      frontier.pop_front();
      vertices.push_back(x);
      comp.mask[x] = 1;
      for (std::uint32_t u : B.neighbors(x)) {
        if (!A.mask[u] && !seen[u]) {
          seen[u] = 1;
          frontier.push_back(u);
        }
      }
    }
    std::sort(vertices.begin(), vertices.end());
    CoendReport::Component component;
    component.vertices = std::move(vertices);
    component.profile = h_finiteness(comp, window);
    if (component.profile.cls == Finiteness::h_infinite_at_truncation) {
      report.h_infinite_count++;
    }
    report.components.push_back(std::move(component));
  }
  return report;
}

namespace {

TriBool intersection_trivial(const AISet& X, const AISet& Y) {
  const GroupSpec& G = X.ball->group();
  const Subgroup& H = *X.subgroup;
  const Subgroup& K = *Y.subgroup;
  if (H.is_trivial() || K.is_trivial()) return TriBool::yes;
  switch (G.family()) {
    case Family::free_group: {
      SubgroupGraph hg =
          X.conjugator.empty() ? H.graph() : conjugate_graph(H.graph(), X.conjugator, G);
      SubgroupGraph kg =
          Y.conjugator.empty() ? K.graph() : conjugate_graph(K.graph(), Y.conjugator, G);
      return intersect(hg, kg).is_trivial() ? TriBool::yes : TriBool::no;
    }
    case Family::free_abelian:
      return abelian_intersection_rank(H, K) == 0 ? TriBool::yes : TriBool::no;
    case Family::surface: {
      const CayleyBall& B = *X.ball;
      for (std::uint32_t v = 0; v < B.size(); ++v) {
        const Word& w = B.word(v);
        if (w.empty()) continue;
        bool in_h = X.conjugator.empty() ? H.contains(w) : H.contains_conjugate(X.conjugator, w);
        if (!in_h) continue;
        bool in_k = Y.conjugator.empty() ? K.contains(w) : K.contains_conjugate(Y.conjugator, w);
        if (in_k) return TriBool::no;
      }
      return TriBool::undecided;
    }
  }
  return TriBool::undecided;
}

std::optional<Ends> ends_or_unknown(const Subgroup& H) {
  try {
    return H.ends();
  } catch (const UnsupportedFamilyError&) {
    return std::nullopt;
  }
}

TriBool infinite_index(const Subgroup& H) {
  const GroupSpec& G = H.group();
  switch (G.family()) {
    case Family::free_group:
      return H.graph().is_complete() ? TriBool::no : TriBool::yes;
    case Family::free_abelian:
      return H.lattice_rank() < G.rank() ? TriBool::yes : TriBool::no;
    case Family::surface:
      return TriBool::undecided;
  }
  return TriBool::undecided;
}

bool masks_equal(const std::vector<char>& a, const std::vector<char>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if ((a[i] != 0) != (b[i] != 0)) return false;
  }
  return true;
}

}  // namespace

NocrossReport nocross_report(const AISet& X, const AISet& Y, int thickening, int window) {
  require_same_ball(X, Y);
  if (!X.total() || !Y.total()) {
    throw PreconditionError("the audit needs rule-backed sets on both sides");
  }
  if (thickening < 0) throw InputError("thickening radius must be nonnegative");
  const CayleyBall& B = *X.ball;
  const GroupSpec& G = B.group();

  NocrossReport report;
  report.thickening = thickening;
  report.degenerate_pair =
      masks_equal(X.mask, Y.mask) || masks_equal(complement_of(X).mask, Y.mask);
  report.ends_of_group = G.ends();
  report.ends_of_h = ends_or_unknown(*X.subgroup);
  report.ends_of_k = ends_or_unknown(*Y.subgroup);
  report.hk_intersection_trivial = intersection_trivial(X, Y);
  report.x_nontrivial = is_nontrivial_ai_set(X, window).nontrivial;
  report.y_nontrivial = is_nontrivial_ai_set(Y, window).nontrivial;

  auto ends_one = [](const std::optional<Ends>& e) {
    if (!e) return TriBool::undecided;
    return *e == Ends::one ? TriBool::yes : TriBool::no;
  };
  std::array<TriBool, 6> hypotheses = {
      G.ends() == Ends::one ? TriBool::yes : TriBool::no,
      ends_one(report.ends_of_h),
      ends_one(report.ends_of_k),
      report.hk_intersection_trivial,
      report.x_nontrivial,
      report.y_nontrivial,
  };
  report.hypotheses_hold = TriBool::yes;
  for (TriBool h : hypotheses) {
    if (h == TriBool::no) {
      report.hypotheses_hold = TriBool::no;
      break;
    }
    if (h == TriBool::undecided) report.hypotheses_hold = TriBool::undecided;
  }

  AISet xc = complement_of(X);
  AISet yc = complement_of(Y);
  AISet bd_x = boundary_set(X);
  AISet bd_xc = boundary_set(xc);
  AISet bd_y = boundary_set(Y);
  AISet bd_yc = boundary_set(yc);

  AISet overlap = intersect(thicken(bd_x, thickening), thicken(bd_y, thickening));
  report.thickened_boundary_overlap = overlap.count();
  report.overlap_wrt_h = h_finiteness_wrt(overlap, *X.subgroup, X.conjugator, window);
  report.overlap_wrt_k = h_finiteness_wrt(overlap, *Y.subgroup, Y.conjugator, window);

  // Per-corner product rule: bd(A & B) == (bd A & B) | (A & bd B); the audit
  // records containment per corner and exact equality for the X & Y corner.
  const std::array<std::pair<const AISet*, const AISet*>, 4> sides = {
      std::make_pair(&X, &Y), std::make_pair(&xc, &Y), std::make_pair(&X, &yc),
      std::make_pair(&xc, &yc)};
  const std::array<std::pair<const AISet*, const AISet*>, 4> bd_sides = {
      std::make_pair(&bd_x, &bd_y), std::make_pair(&bd_xc, &bd_y),
      std::make_pair(&bd_x, &bd_yc), std::make_pair(&bd_xc, &bd_yc)};
  report.product_rule_exact = true;
  for (int c = 0; c < 4; ++c) {
    const AISet& A = *sides[static_cast<std::size_t>(c)].first;
    const AISet& Bset = *sides[static_cast<std::size_t>(c)].second;
    AISet corner_set = intersect(A, Bset);
    AISet bd_corner = boundary_set(corner_set);
    const AISet& bd_a = *bd_sides[static_cast<std::size_t>(c)].first;
    const AISet& bd_b = *bd_sides[static_cast<std::size_t>(c)].second;
    bool contained = true;
    bool equal = true;
    for (std::uint32_t v = 0; v < B.size(); ++v) {
      bool lhs = bd_corner.mask[v] != 0;
      bool rhs = (bd_a.mask[v] && Bset.mask[v]) || (A.mask[v] && bd_b.mask[v]);
      if (lhs && !rhs) contained = false;
      if (lhs != rhs) equal = false;
    }
    report.corner_bound_holds[static_cast<std::size_t>(c)] = contained;
    if (c == 0) report.product_rule_exact = equal;
  }

  report.crossing = crosses(X, Y, window);
  report.consistent =
      !(report.hypotheses_hold == TriBool::yes && report.crossing.forward == TriBool::yes);

  report.translation_flag = false;
  FinitenessProfile own = h_finiteness(X, window);
  if (own.cls == Finiteness::h_finite && infinite_index(*X.subgroup) == TriBool::yes) {
    bool stable = true;
    for (const Word& g : Y.subgroup->generators()) {
      Word k = Y.conjugator.empty() ? G.normal_form(g) : G.conjugate(Y.conjugator, g);
      if (k.empty()) continue;
      AISet diff = symmetric_difference(X, right_translate(X, k));
      FinitenessProfile p = h_finiteness_wrt(diff, *Y.subgroup, Y.conjugator, window);
      if (p.cls != Finiteness::h_finite) {
        stable = false;
        break;
      }
    }
    if (stable) {
      report.translation_flag = true;
      report.translation_k_class =
          h_finiteness_wrt(X, *Y.subgroup, Y.conjugator, window).cls;
    }
  }
  return report;
}

}  // namespace ccx
