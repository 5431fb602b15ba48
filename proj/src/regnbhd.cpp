#include "ccx/regnbhd.hpp"

#include <algorithm>
#include <array>
#include <cstddef>
#include <deque>
#include <map>
#include <set>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "ccx/error.hpp"

namespace ccx {

namespace {

constexpr int kMaxFamilyMembers = 1000;

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(static_cast<std::size_t>(n)) {
    for (int i = 0; i < n; ++i) parent[static_cast<std::size_t>(i)] = i;
  }
  int find(int x) {
    while (parent[static_cast<std::size_t>(x)] != x) {
      parent[static_cast<std::size_t>(x)] = parent[static_cast<std::size_t>(parent[static_cast<std::size_t>(x)])];
      x = parent[static_cast<std::size_t>(x)];
    }
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a == b) return;
    if (a > b) std::swap(a, b);
    parent[static_cast<std::size_t>(b)] = a;
  }
};

// Labels classes 0..k-1 in order of least representative.
int compress_labels(UnionFind& uf, std::vector<int>& out) {
  const int n = static_cast<int>(out.size());
  std::vector<int> label(static_cast<std::size_t>(n), -1);
  int next = 0;
  for (int i = 0; i < n; ++i) {
    const int r = uf.find(i);
    if (label[static_cast<std::size_t>(r)] < 0) label[static_cast<std::size_t>(r)] = next++;
    out[static_cast<std::size_t>(i)] = label[static_cast<std::size_t>(r)];
  }
  return next;
}

// Right-coset labels of every ball vertex under conjugator^-1 . v, interned
// to small integers so corner profiles become single passes over the ball.
struct CosetTable {
  std::vector<std::int32_t> id;
  std::int32_t ids = 0;
};

CosetTable build_table(const CayleyBall& B, const Subgroup& H, const Word& conjugator) {
  const GroupSpec& G = B.group();
  CosetTable t;
  t.id.resize(B.size());
  std::map<std::string, std::int32_t> seen;
  const Word cinv = conjugator.empty() ? Word::identity() : G.inverse(conjugator);
  for (std::uint32_t v = 0; v < B.size(); ++v) {
    Word g = cinv.empty() ? B.word(v) : G.product(cinv, B.word(v));
    auto [it, fresh] = seen.emplace(H.right_coset_key(g), t.ids);
    if (fresh) ++t.ids;
    t.id[v] = it->second;
  }
  return t;
}

struct ProfileScratch {
  std::vector<std::int32_t> stamp;
  std::int32_t epoch = 0;
};

FinitenessProfile profile_of(const std::vector<char>& mask, const CosetTable& t,
                             ProfileScratch& scratch, const CayleyBall& B, int window) {
  const int R = B.radius();
  if (scratch.stamp.size() < static_cast<std::size_t>(t.ids)) {
    scratch.stamp.assign(static_cast<std::size_t>(t.ids), 0);
    scratch.epoch = 0;
  }
  ++scratch.epoch;
  std::vector<long long> fresh(static_cast<std::size_t>(R) + 1, 0);
  for (std::uint32_t v = 0; v < B.size(); ++v) {
    if (!mask[v]) continue;
    const std::int32_t c = t.id[v];
    if (scratch.stamp[static_cast<std::size_t>(c)] != scratch.epoch) {
      scratch.stamp[static_cast<std::size_t>(c)] = scratch.epoch;
      fresh[static_cast<std::size_t>(B.distance(v))]++;
    }
  }
  FinitenessProfile p;
  p.counts.resize(static_cast<std::size_t>(R));
  long long running = fresh[0];
  for (int r = 1; r <= R; ++r) {
    running += fresh[static_cast<std::size_t>(r)];
    p.counts[static_cast<std::size_t>(r - 1)] = running;
  }
  p.cls = classify_counts(p.counts, window);
  p.stable_count = p.counts.empty() ? 0 : p.counts.back();
  return p;
}

// Containment up to a small set, judged from the four corner profiles of the
// row element: the main corner must be empty or the only small corner.
TriBool leq_from(const std::array<FinitenessProfile, 4>& prof, const std::array<bool, 4>& empty,
                 int main_corner, const std::array<int, 3>& rest) {
  if (empty[static_cast<std::size_t>(main_corner)]) return TriBool::yes;
  const Finiteness main_cls = prof[static_cast<std::size_t>(main_corner)].cls;
  if (main_cls == Finiteness::h_infinite_at_truncation) return TriBool::no;
  if (main_cls == Finiteness::inconclusive) return TriBool::undecided;
  bool undecided = false;
  for (int c : rest) {
    const Finiteness cls = prof[static_cast<std::size_t>(c)].cls;
    if (cls == Finiteness::h_finite) return TriBool::no;
    if (cls == Finiteness::inconclusive) undecided = true;
  }
  return undecided ? TriBool::undecided : TriBool::yes;
}

TriBool crossing_side(const std::array<FinitenessProfile, 4>& prof) {
  bool all_infinite = true;
  for (const auto& p : prof) {
    if (p.cls == Finiteness::h_finite) return TriBool::no;
    if (p.cls != Finiteness::h_infinite_at_truncation) all_infinite = false;
  }
  return all_infinite ? TriBool::yes : TriBool::undecided;
}

void require_good_position(const TranslateFamily& F) {
  if (F.star.holds == TriBool::no) {
    const auto& v = F.star.violations.front();
    std::ostringstream os;
    os << "family is not in good position: members " << F.describe(2 * static_cast<int>(v.first))
       << " and " << F.describe(2 * static_cast<int>(v.second))
       << " have two small nonempty corners (" << v.corner_a << ", " << v.corner_b << ")";
    throw PreconditionError(os.str());
  }
  if (F.star.holds == TriBool::undecided) {
    throw InconclusiveError("good position is undecided at this truncation");
  }
}

void require_decided_order(const TranslateFamily& F) {
  if (F.order_undecided.empty()) return;
  std::ostringstream os;
  os << "order verdicts undecided at this truncation for " << F.order_undecided.size()
     << " pair(s):";
  int shown = 0;
  for (const auto& [e, f] : F.order_undecided) {
    os << " (" << F.describe(e) << " <= " << F.describe(f) << ")";
    if (++shown == 8) {
      os << " ...";
      break;
    }
  }
  throw InconclusiveError(os.str());
}

std::vector<int> component_elements(const CCCPartition& P, int comp) {
  std::vector<int> out;
  for (int m : P.classes[static_cast<std::size_t>(comp)]) {
    out.push_back(2 * m);
    out.push_back(2 * m + 1);
  }
  return out;
}

TriBool betweenness_search(const TranslateFamily& F, const std::vector<int>& ea,
                           const std::vector<int>& eb, const std::vector<int>& ec) {
  bool undecided_seen = false;
  for (int u : ea) {
    for (int v : eb) {
      const TriBool uv = F.order_leq(u, v);
      if (uv == TriBool::no) continue;
      for (int w : ec) {
        const TriBool vw = F.order_leq(v, w);
        if (vw == TriBool::no) continue;
        if (uv == TriBool::yes && vw == TriBool::yes) return TriBool::yes;
        undecided_seen = true;
      }
    }
  }
  return undecided_seen ? TriBool::undecided : TriBool::no;
}

std::vector<Word> reduce_generators(const GroupSpec& G, const std::vector<Word>& found) {
  if (found.empty()) return {};
  switch (G.family()) {
    case Family::free_group:
      return Subgroup(G, found).graph().free_basis();
    case Family::free_abelian: {
      const Subgroup span(G, found);
      std::vector<Word> basis;
      for (const auto& row : span.lattice_basis()) basis.push_back(G.from_exponents(row));
      return basis;
    }
    case Family::surface:
      return found;
  }
  return found;
}

// ShortLex-least key of h1 . t . h2 over the supplied subgroup slices; a
// bounded stand-in for the double coset of the translator.
std::string double_coset_key(const GroupSpec& G, const std::vector<Word>& left,
                             const std::vector<Word>& right, const Word& t) {
  bool have = false;
  std::size_t best_len = 0;
  std::string best;
  for (const Word& h1 : left) {
    const Word ht = G.product(h1, t);
    for (const Word& h2 : right) {
      const Word w = G.product(ht, h2);
      const std::string k = w.key();
      if (!have || w.length() < best_len || (w.length() == best_len && k < best)) {
        have = true;
        best_len = w.length();
        best = k;
      }
    }
  }
  return best;
}

}  // namespace

const AISet& TranslateFamily::element(int e) const {
  if (e < 0 || e >= element_count()) throw InputError("family element id out of range");
  const FamilyMember& m = members[static_cast<std::size_t>(e >> 1)];
  return (e & 1) ? m.co : m.set;
}

TriBool TranslateFamily::order_leq(int e, int f) const {
  if (e < 0 || f < 0 || e >= element_count() || f >= element_count()) {
    throw InputError("family element id out of range");
  }
  return order[static_cast<std::size_t>(e) * static_cast<std::size_t>(element_count()) +
               static_cast<std::size_t>(f)];
}

TriBool TranslateFamily::crossing_between(int i, int j) const {
  if (i < 0 || j < 0 || i >= member_count() || j >= member_count()) {
    throw InputError("family member index out of range");
  }
  return crossing[static_cast<std::size_t>(i) * static_cast<std::size_t>(member_count()) +
                  static_cast<std::size_t>(j)];
}

std::string TranslateFamily::describe(int e) const {
  if (e < 0 || e >= element_count()) throw InputError("family element id out of range");
  const FamilyMember& m = members[static_cast<std::size_t>(e >> 1)];
  std::string s = ball->group().format(m.translator);
  s += ".B";
  s += std::to_string(m.base);
  if (e & 1) s += "*";
  return s;
}

TranslateFamily build_family(const std::vector<AISet>& bases, int translate_radius, int window) {
  if (bases.empty()) throw InputError("translate family needs at least one base set");
  if (!bases[0].ball) throw InputError("base sets must be materialized over a ball");
  const auto ball = bases[0].ball;
  const CayleyBall& B = *ball;
  const int R = B.radius();
  if (window < 1 || window > R) {
    throw InputError("window must be between 1 and the ball radius");
  }
  if (translate_radius < 0) throw InputError("translate radius must be nonnegative");
  if (translate_radius + 1 > R) {
    throw InputError("translate radius + 1 must not exceed the ball radius");
  }
  for (const AISet& X : bases) {
    if (X.ball != ball) throw AmbientMismatchError("family bases live over different balls");
    if (!X.total()) throw PreconditionError("family bases must be rule-backed sets");
    if (X.count() == 0 || X.count() == B.size()) {
      throw InputError("family bases must be nonempty with nonempty complement");
    }
  }

  TranslateFamily F;
  F.ball = ball;
  F.translate_radius = translate_radius;
  F.window = window;
  F.bases = bases;

  std::vector<Word> translators;
  for (std::uint32_t v = 0; v < B.size() && B.distance(v) <= translate_radius; ++v) {
    translators.push_back(B.word(v));
  }

  std::map<std::string, int> seen_mask;
  for (std::size_t b = 0; b < bases.size(); ++b) {
    for (const Word& g : translators) {
      AISet S = g.empty() ? bases[b] : left_translate(bases[b], g);
      const std::string key = S.mask_key();
      if (seen_mask.count(key)) continue;
      AISet co = complement_of(S);
      if (seen_mask.count(co.mask_key())) continue;
      if (S.count() == 0 || co.count() == 0) {
        throw InputError("a translate misses the ball; raise the ball radius or lower the translating radius");
      }
      if (F.member_count() >= kMaxFamilyMembers) {
        throw SizeError("translate family exceeds " + std::to_string(kMaxFamilyMembers) +
                        " members");
      }
      FamilyMember M;
      M.set = std::move(S);
      M.co = std::move(co);
      M.base = static_cast<int>(b);
      M.translator = g;
      seen_mask.emplace(key, F.member_count());
      seen_mask.emplace(M.co.mask_key(), F.member_count());
      F.members.push_back(std::move(M));
    }
  }

  const int M = F.member_count();
  const int E = F.element_count();
  std::vector<CosetTable> tables(static_cast<std::size_t>(M));
  std::vector<ProfileScratch> scratch(static_cast<std::size_t>(M));
  for (int m = 0; m < M; ++m) {
    FamilyMember& fm = F.members[static_cast<std::size_t>(m)];
    tables[static_cast<std::size_t>(m)] = build_table(B, *fm.set.subgroup, fm.set.conjugator);
    fm.set_profile = profile_of(fm.set.mask, tables[static_cast<std::size_t>(m)],
                                scratch[static_cast<std::size_t>(m)], B, window);
    fm.co_profile = profile_of(fm.co.mask, tables[static_cast<std::size_t>(m)],
                               scratch[static_cast<std::size_t>(m)], B, window);
  }

  F.order.assign(static_cast<std::size_t>(E) * static_cast<std::size_t>(E), TriBool::undecided);
  F.crossing.assign(static_cast<std::size_t>(M) * static_cast<std::size_t>(M), TriBool::no);
  auto set_order = [&F, E](int e, int f, TriBool v) {
    F.order[static_cast<std::size_t>(e) * static_cast<std::size_t>(E) + static_cast<std::size_t>(f)] = v;
    if (v == TriBool::undecided) F.order_undecided.emplace_back(e, f);
  };

  for (int m = 0; m < M; ++m) {
    const FamilyMember& fm = F.members[static_cast<std::size_t>(m)];
    set_order(2 * m, 2 * m, TriBool::yes);
    set_order(2 * m + 1, 2 * m + 1, TriBool::yes);
    // Against its own complement the main corner is the element itself and
    // one of the remaining corners is empty, so the verdict is never yes.
    set_order(2 * m, 2 * m + 1,
              fm.set_profile.cls == Finiteness::inconclusive ? TriBool::undecided : TriBool::no);
    set_order(2 * m + 1, 2 * m,
              fm.co_profile.cls == Finiteness::inconclusive ? TriBool::undecided : TriBool::no);
  }

  std::array<std::vector<char>, 4> corner;
  for (auto& c : corner) c.assign(B.size(), 0);
  for (int i = 0; i < M; ++i) {
    for (int j = i + 1; j < M; ++j) {
      const auto& si = F.members[static_cast<std::size_t>(i)].set.mask;
      const auto& sj = F.members[static_cast<std::size_t>(j)].set.mask;
      std::array<long long, 4> cnt{};
      for (std::uint32_t v = 0; v < B.size(); ++v) {
        const int idx = (si[v] ? 0 : 1) + (sj[v] ? 0 : 2);
        for (int c = 0; c < 4; ++c) corner[static_cast<std::size_t>(c)][v] = 0;
        corner[static_cast<std::size_t>(idx)][v] = 1;
        ++cnt[static_cast<std::size_t>(idx)];
      }
      std::array<bool, 4> empty{};
      std::array<FinitenessProfile, 4> pi, pj;
      for (int c = 0; c < 4; ++c) {
        empty[static_cast<std::size_t>(c)] = cnt[static_cast<std::size_t>(c)] == 0;
        pi[static_cast<std::size_t>(c)] =
            profile_of(corner[static_cast<std::size_t>(c)], tables[static_cast<std::size_t>(i)],
                       scratch[static_cast<std::size_t>(i)], B, window);
        pj[static_cast<std::size_t>(c)] =
            profile_of(corner[static_cast<std::size_t>(c)], tables[static_cast<std::size_t>(j)],
                       scratch[static_cast<std::size_t>(j)], B, window);
      }

      bool pair_violates = false;
      bool pair_undecided = false;
      for (int c = 0; c < 4; ++c) {
        if (pi[static_cast<std::size_t>(c)].cls == Finiteness::inconclusive) pair_undecided = true;
      }
      for (int a = 0; a < 4; ++a) {
        for (int b2 = a + 1; b2 < 4; ++b2) {
          if (pi[static_cast<std::size_t>(a)].cls == Finiteness::h_finite &&
              pi[static_cast<std::size_t>(b2)].cls == Finiteness::h_finite &&
              !empty[static_cast<std::size_t>(a)] && !empty[static_cast<std::size_t>(b2)]) {
            F.star.violations.push_back({static_cast<std::size_t>(i), static_cast<std::size_t>(j), a, b2});
            pair_violates = true;
          }
        }
      }
      if (!pair_violates && pair_undecided) {
        F.star.undecided_pairs.emplace_back(static_cast<std::size_t>(i), static_cast<std::size_t>(j));
      }

      const TriBool fwd = crossing_side(pi);
      const TriBool rev = crossing_side(pj);
      TriBool cross =
          (fwd == TriBool::yes && rev == TriBool::yes)
              ? TriBool::yes
              : ((fwd == TriBool::no && rev == TriBool::no) ? TriBool::no : TriBool::undecided);
      F.crossing[static_cast<std::size_t>(i) * static_cast<std::size_t>(M) + static_cast<std::size_t>(j)] = cross;
      F.crossing[static_cast<std::size_t>(j) * static_cast<std::size_t>(M) + static_cast<std::size_t>(i)] = cross;
      if (cross == TriBool::undecided) F.crossing_undecided.emplace_back(i, j);

      for (int o = 0; o < 2; ++o) {
        for (int p = 0; p < 2; ++p) {
          const int e = 2 * i + o;
          const int f = 2 * j + p;
          set_order(e, f,
                    leq_from(pi, empty, o + 2 * (1 - p),
                             {o + 2 * p, (1 - o) + 2 * p, (1 - o) + 2 * (1 - p)}));
          set_order(f, e,
                    leq_from(pj, empty, (1 - o) + 2 * p,
                             {o + 2 * p, o + 2 * (1 - p), (1 - o) + 2 * (1 - p)}));
        }
      }
    }
  }

  F.star.holds = !F.star.violations.empty()
                     ? TriBool::no
                     : (!F.star.undecided_pairs.empty() ? TriBool::undecided : TriBool::yes);
  return F;
}

CrossingGraph build_crossing_graph(const TranslateFamily& F) {
  if (!F.crossing_undecided.empty()) {
    std::ostringstream os;
    os << "crossing verdicts undecided at this truncation for " << F.crossing_undecided.size()
       << " pair(s):";
    int shown = 0;
    for (const auto& [i, j] : F.crossing_undecided) {
      os << " {" << F.describe(2 * i) << ", " << F.describe(2 * j) << "}";
      if (++shown == 8) {
        os << " ...";
        break;
      }
    }
    throw InconclusiveError(os.str());
  }
  CrossingGraph g;
  g.nodes = F.member_count();
  for (int i = 0; i < g.nodes; ++i) {
    for (int j = i + 1; j < g.nodes; ++j) {
      if (F.crossing_between(i, j) == TriBool::yes) g.edges.emplace_back(i, j);
    }
  }
  return g;
}

CCCPartition cccs(const TranslateFamily& F) {
  const CrossingGraph g = build_crossing_graph(F);
  UnionFind uf(g.nodes);
  for (const auto& [i, j] : g.edges) uf.unite(i, j);
  CCCPartition P;
  P.component_of.resize(static_cast<std::size_t>(g.nodes));
  P.count = compress_labels(uf, P.component_of);
  P.classes.assign(static_cast<std::size_t>(P.count), {});
  for (int m = 0; m < g.nodes; ++m) {
    P.classes[static_cast<std::size_t>(P.component_of[static_cast<std::size_t>(m)])].push_back(m);
  }
  return P;
}

bool betweenness(const TranslateFamily& F, const CCCPartition& P, int a, int b, int c) {
  if (a < 0 || b < 0 || c < 0 || a >= P.count || b >= P.count || c >= P.count) {
    throw InputError("component index out of range");
  }
  if (a == b || b == c || a == c) {
    throw PreconditionError("betweenness needs three distinct components");
  }
  require_good_position(F);
  const TriBool r =
      betweenness_search(F, component_elements(P, a), component_elements(P, b), component_elements(P, c));
  if (r == TriBool::undecided) {
    std::ostringstream os;
    os << "betweenness of components " << a << ", " << b << ", " << c
       << " is undecided at this truncation";
    throw InconclusiveError(os.str());
  }
  return r == TriBool::yes;
}

bool Pretree::between(int x, int y, int z) const {
  if (x < 0 || y < 0 || z < 0 || x >= points || y >= points || z >= points) {
    throw InputError("pretree point out of range");
  }
  return rel[(static_cast<std::size_t>(x) * static_cast<std::size_t>(points) +
              static_cast<std::size_t>(y)) *
                 static_cast<std::size_t>(points) +
             static_cast<std::size_t>(z)] != 0;
}

Pretree pretree_from_family(const TranslateFamily& F, const CCCPartition& P) {
  require_good_position(F);
  Pretree T;
  T.points = P.count;
  const std::size_t n = static_cast<std::size_t>(P.count);
  T.rel.assign(n * n * n, 0);
  std::vector<std::vector<int>> elems(n);
  for (int cmp = 0; cmp < P.count; ++cmp) elems[static_cast<std::size_t>(cmp)] = component_elements(P, cmp);
  std::size_t undecided = 0;
  std::array<int, 3> first{};
  for (int x = 0; x < P.count; ++x) {
    for (int y = 0; y < P.count; ++y) {
      if (y == x) continue;
      for (int z = 0; z < P.count; ++z) {
        if (z == x || z == y) continue;
        const TriBool r = betweenness_search(F, elems[static_cast<std::size_t>(x)],
                                             elems[static_cast<std::size_t>(y)],
                                             elems[static_cast<std::size_t>(z)]);
        if (r == TriBool::yes) {
          T.rel[(static_cast<std::size_t>(x) * n + static_cast<std::size_t>(y)) * n +
                static_cast<std::size_t>(z)] = 1;
        } else if (r == TriBool::undecided) {
          if (undecided == 0) first = {x, y, z};
          ++undecided;
        }
      }
    }
  }
  if (undecided > 0) {
    std::ostringstream os;
    os << "betweenness undecided at this truncation for " << undecided
       << " component triple(s), first (" << first[0] << ", " << first[1] << ", " << first[2]
       << ")";
    throw InconclusiveError(os.str());
  }
  return T;
}

PretreeCheck verify_pretree(const Pretree& T) {
  PretreeCheck chk;
  const int P = T.points;
  for (int x = 0; x < P; ++x) {
    for (int y = 0; y < P; ++y) {
      for (int z = 0; z < P; ++z) {
        if (!T.between(x, y, z)) continue;
        if (x == z || y == x || y == z) {
          chk.ok = false;
          chk.axiom = "T0";
          chk.witness = {x, y, z};
          return chk;
        }
        if (!T.between(z, y, x)) {
          chk.ok = false;
          chk.axiom = "T1";
          chk.witness = {x, y, z};
          return chk;
        }
        if (T.between(x, z, y)) {
          chk.ok = false;
          chk.axiom = "T2";
          chk.witness = {x, y, z};
          return chk;
        }
        for (int w = 0; w < P; ++w) {
          if (w == y) continue;
          if (!T.between(x, y, w) && !T.between(w, y, z)) {
            chk.ok = false;
            chk.axiom = "T3";
            chk.witness = {x, y, z, w};
            return chk;
          }
        }
      }
    }
  }
  return chk;
}

namespace {

struct CliqueFinder {
  const std::vector<std::vector<char>>& adj;
  std::vector<std::vector<int>>& out;

  void run(std::vector<int>& base, std::vector<int> cand, std::vector<int> done) {
    if (cand.empty() && done.empty()) {
      out.push_back(base);
      return;
    }
    while (!cand.empty()) {
      const int v = cand.front();
      base.push_back(v);
      std::vector<int> next_cand, next_done;
      for (int u : cand) {
        if (adj[static_cast<std::size_t>(v)][static_cast<std::size_t>(u)]) next_cand.push_back(u);
      }
      for (int u : done) {
        if (adj[static_cast<std::size_t>(v)][static_cast<std::size_t>(u)]) next_done.push_back(u);
      }
      run(base, std::move(next_cand), std::move(next_done));
      base.pop_back();
      cand.erase(cand.begin());
      done.push_back(v);
    }
  }
};

}  // namespace

BipartiteTree build_tree(const Pretree& T) {
  const PretreeCheck chk = verify_pretree(T);
  if (!chk.ok) {
    std::ostringstream os;
    os << "pretree axiom " << chk.axiom << " fails at points";
    for (int p : chk.witness) os << " " << p;
    throw PreconditionError(os.str());
  }
  const int P = T.points;
  BipartiteTree tree;
  tree.points = P;
  std::vector<std::vector<char>> adj(static_cast<std::size_t>(P),
                                     std::vector<char>(static_cast<std::size_t>(P), 0));
  for (int x = 0; x < P; ++x) {
    for (int y = 0; y < P; ++y) {
      if (x == y) continue;
      bool blocked = false;
      for (int z = 0; z < P && !blocked; ++z) blocked = T.between(x, z, y);
      adj[static_cast<std::size_t>(x)][static_cast<std::size_t>(y)] = blocked ? 0 : 1;
    }
  }
  if (P > 0) {
    std::vector<int> base;
    std::vector<int> cand(static_cast<std::size_t>(P));
    for (int i = 0; i < P; ++i) cand[static_cast<std::size_t>(i)] = i;
    CliqueFinder finder{adj, tree.stars};
    finder.run(base, std::move(cand), {});
    std::sort(tree.stars.begin(), tree.stars.end());
  }
  for (std::size_t s = 0; s < tree.stars.size(); ++s) {
    for (int p : tree.stars[s]) tree.edges.emplace_back(p, static_cast<int>(s));
  }
  const int total = P + static_cast<int>(tree.stars.size());
  if (total > 0) {
    UnionFind uf(total);
    for (const auto& [p, s] : tree.edges) uf.unite(p, P + s);
    int comps = 0;
    for (int i = 0; i < total; ++i) {
      if (uf.find(i) == i) ++comps;
    }
    if (comps != 1 || tree.edges.size() != static_cast<std::size_t>(total - 1)) {
      throw Error("point-star graph is not a tree");
    }
  }
  return tree;
}

StabilizerReport stabilizer_generators(const TranslateFamily& F, int member) {
  if (member < 0 || member >= F.member_count()) {
    throw InputError("family member index out of range");
  }
  const CayleyBall& B = *F.ball;
  const AISet& X = F.members[static_cast<std::size_t>(member)].set;
  StabilizerReport rep;
  for (std::uint32_t v = 1; v < B.size() && B.distance(v) <= F.translate_radius; ++v) {
    const Word g = B.word(v);
    if (left_translate(X, g).mask == X.mask) rep.found.push_back(g);
  }
  rep.basis = reduce_generators(B.group(), rep.found);
  return rep;
}

DunwoodyCheck verify_dunwoody(const TranslateFamily& F) {
  return verify_dunwoody(F, build_family(F.bases, F.translate_radius + 1, F.window));
}

DunwoodyCheck verify_dunwoody(const TranslateFamily& F, const TranslateFamily& enlarged) {
  require_decided_order(F);
  const CayleyBall& B = *F.ball;
  const GroupSpec& G = B.group();
  const int E = F.element_count();
  auto is_leq = [&F](int e, int f) { return F.order_leq(e, f) == TriBool::yes; };

  DunwoodyCheck chk;
  for (int e = 0; e < E; ++e) {
    for (int f = 0; f < E; ++f) {
      const bool a = is_leq(e, f);
      if (a && !is_leq(f ^ 1, e ^ 1)) {
        chk.d1 = false;
        chk.d1_violations.emplace_back(e, f);
      }
      const bool b = is_leq(e ^ 1, f);
      const bool c = is_leq(e, f ^ 1);
      const bool d = is_leq(e ^ 1, f ^ 1);
      if (!(a || b || c || d)) {
        chk.d3 = false;
        chk.d3_violations.emplace_back(e, f);
      }
      if (a && c) {
        chk.d4 = false;
        chk.d4_violations.emplace_back(e, f);
      }
    }
  }

  std::map<std::string, int> big;
  for (int m = 0; m < enlarged.member_count(); ++m) {
    big.emplace(enlarged.members[static_cast<std::size_t>(m)].set.mask_key(), 2 * m);
    big.emplace(enlarged.members[static_cast<std::size_t>(m)].co.mask_key(), 2 * m + 1);
  }
  std::vector<int> lift(static_cast<std::size_t>(E));
  for (int m = 0; m < F.member_count(); ++m) {
    const auto it = big.find(F.members[static_cast<std::size_t>(m)].set.mask_key());
    if (it == big.end()) throw Error("enlarged family lost a member");
    lift[static_cast<std::size_t>(2 * m)] = it->second;
    lift[static_cast<std::size_t>(2 * m + 1)] = it->second ^ 1;
  }

  std::map<const Subgroup*, std::vector<Word>> slices;
  auto slice_of = [&](const Subgroup* H) -> const std::vector<Word>& {
    auto [it, fresh] = slices.try_emplace(H);
    if (fresh) {
      for (std::uint32_t v = 0; v < B.size(); ++v) {
        if (H->contains(B.word(v))) it->second.push_back(B.word(v));
      }
    }
    return it->second;
  };

  const int E1 = enlarged.element_count();
  for (int e = 0; e < E; ++e) {
    for (int f = 0; f < E; ++f) {
      if (e == f || !is_leq(e, f)) continue;
      ++chk.comparable_pairs;
      std::vector<int> interval;
      for (int g = 0; g < E; ++g) {
        if (is_leq(e, g) && is_leq(g, f)) interval.push_back(g);
      }
      chk.max_interval = std::max(chk.max_interval, static_cast<long long>(interval.size()));

      std::set<std::string> cosets;
      const std::vector<Word>& left = slice_of(F.element(e).subgroup.get());
      for (int g : interval) {
        cosets.insert(double_coset_key(G, left, slice_of(F.element(g).subgroup.get()),
                                       F.members[static_cast<std::size_t>(g >> 1)].translator));
      }
      chk.max_interval_double_cosets =
          std::max(chk.max_interval_double_cosets, static_cast<long long>(cosets.size()));

      const int e1 = lift[static_cast<std::size_t>(e)];
      const int f1 = lift[static_cast<std::size_t>(f)];
      long long grown = 0;
      bool unknown = false;
      for (int g1 = 0; g1 < E1; ++g1) {
        const TriBool x = enlarged.order_leq(e1, g1);
        if (x == TriBool::no) continue;
        const TriBool y = enlarged.order_leq(g1, f1);
        if (y == TriBool::no) continue;
        if (x == TriBool::yes && y == TriBool::yes) {
          ++grown;
        } else {
          unknown = true;
        }
      }
      if (unknown || grown != static_cast<long long>(interval.size())) {
        chk.intervals_stable = false;
        chk.unstable_pairs.emplace_back(e, f);
      }
    }
  }
  return chk;
}

DunwoodyTree dunwoody_tree(const TranslateFamily& F) {
  return dunwoody_tree(F, verify_dunwoody(F));
}

DunwoodyTree dunwoody_tree(const TranslateFamily& F, const DunwoodyCheck& check) {
  if (!check.ok()) {
    throw PreconditionError("the family order fails the tree criterion; see the audit report");
  }
  const int E = F.element_count();
  const int M = F.member_count();
  auto is_leq = [&F](int e, int f) { return F.order_leq(e, f) == TriBool::yes; };

  DunwoodyTree T;
  UnionFind uf(E);
  for (int e = 0; e < E; ++e) {
    const int pe = e ^ 1;
    for (int f = 0; f < E; ++f) {
      if (f == e || f == pe || !is_leq(pe, f)) continue;
      bool consecutive = true;
      for (int g = 0; g < E && consecutive; ++g) {
        if (g != pe && g != f && is_leq(pe, g) && is_leq(g, f)) consecutive = false;
      }
      if (consecutive) uf.unite(e, f);
    }
  }
  T.vertex_of.resize(static_cast<std::size_t>(E));
  T.vertex_count = compress_labels(uf, T.vertex_of);
  for (int e = 0; e < E; ++e) {
    if (T.vertex_of[static_cast<std::size_t>(e)] == T.vertex_of[static_cast<std::size_t>(e ^ 1)]) {
      throw Error("tree construction degenerated: an edge closes on itself");
    }
  }
  {
    UnionFind vf(T.vertex_count);
    for (int m = 0; m < M; ++m) {
      vf.unite(T.vertex_of[static_cast<std::size_t>(2 * m)],
               T.vertex_of[static_cast<std::size_t>(2 * m + 1)]);
    }
    int comps = 0;
    for (int v = 0; v < T.vertex_count; ++v) {
      if (vf.find(v) == v) ++comps;
    }
    if (comps != 1 || T.vertex_count != M + 1) {
      throw Error("edge classes do not assemble into a tree");
    }
  }

  if (E <= 200) {
    T.oriented_path_checked = true;
    for (int e = 0; e < E && T.oriented_path_matches; ++e) {
      std::vector<char> reach(static_cast<std::size_t>(E), 0);
      std::deque<int> queue{e};
      reach[static_cast<std::size_t>(e)] = 1;
      while (!queue.empty()) {
        const int x = queue.front();
        queue.pop_front();
        const int head = T.vertex_of[static_cast<std::size_t>(x ^ 1)];
        for (int g = 0; g < E; ++g) {
          if (!reach[static_cast<std::size_t>(g)] && g != (x ^ 1) &&
              T.vertex_of[static_cast<std::size_t>(g)] == head) {
            reach[static_cast<std::size_t>(g)] = 1;
            queue.push_back(g);
          }
        }
      }
      for (int f = 0; f < E; ++f) {
        if ((reach[static_cast<std::size_t>(f)] != 0) != is_leq(e, f)) {
          T.oriented_path_matches = false;
          break;
        }
      }
    }
  }

  QuotientSkeleton& Q = T.quotient;
  const CayleyBall& B = *F.ball;
  std::map<std::string, int> by_key;
  for (int m = 0; m < M; ++m) {
    by_key.emplace(F.members[static_cast<std::size_t>(m)].set.mask_key(), 2 * m);
    by_key.emplace(F.members[static_cast<std::size_t>(m)].co.mask_key(), 2 * m + 1);
  }
  UnionFind euf(M);
  UnionFind vuf(T.vertex_count);
  for (std::uint32_t v = 1; v < B.size() && B.distance(v) <= F.translate_radius; ++v) {
    const Word g = B.word(v);
    for (int m = 0; m < M; ++m) {
      const AISet img = left_translate(F.members[static_cast<std::size_t>(m)].set, g);
      const auto it = by_key.find(img.mask_key());
      if (it == by_key.end()) {
        ++Q.escapes;
        continue;
      }
      const int u = it->second;
      euf.unite(m, u >> 1);
      vuf.unite(T.vertex_of[static_cast<std::size_t>(2 * m)], T.vertex_of[static_cast<std::size_t>(u)]);
      vuf.unite(T.vertex_of[static_cast<std::size_t>(2 * m + 1)],
                T.vertex_of[static_cast<std::size_t>(u ^ 1)]);
    }
  }
  Q.edge_orbit.resize(static_cast<std::size_t>(M));
  Q.edge_orbits = compress_labels(euf, Q.edge_orbit);
  Q.vertex_orbit.resize(static_cast<std::size_t>(T.vertex_count));
  Q.vertex_orbits = compress_labels(vuf, Q.vertex_orbit);
  Q.edge_rep.assign(static_cast<std::size_t>(Q.edge_orbits), -1);
  for (int m = 0; m < M; ++m) {
    const int o = Q.edge_orbit[static_cast<std::size_t>(m)];
    if (Q.edge_rep[static_cast<std::size_t>(o)] < 0) Q.edge_rep[static_cast<std::size_t>(o)] = m;
  }
  for (int o = 0; o < Q.edge_orbits; ++o) {
    const int m = Q.edge_rep[static_cast<std::size_t>(o)];
    Q.edges.emplace_back(Q.vertex_orbit[static_cast<std::size_t>(T.vertex_of[static_cast<std::size_t>(2 * m)])],
                         Q.vertex_orbit[static_cast<std::size_t>(T.vertex_of[static_cast<std::size_t>(2 * m + 1)])]);
    Q.edge_stabilizers.push_back(stabilizer_generators(F, m));
  }
  return T;
}

SplitReport split_pipeline(const GroupSpec& G, const std::vector<SplitBase>& bases,
                           const SplitOptions& opt) {
  if (bases.empty()) throw InputError("splitting instance needs at least one base");
  SplitReport rep;
  rep.ambient_ends = G.ends();
  if (rep.ambient_ends != Ends::one) {
    if (!opt.assume_one_end) {
      throw PreconditionError("ambient group does not have one end; set assume_one_end to proceed");
    }
    rep.ends_override_used = true;
    rep.notes.push_back("one-end hypothesis overridden for this ambient group");
  }

  auto ball = std::make_shared<const CayleyBall>(build_ball(G, opt.ball_radius));
  std::vector<AISet> sets;
  std::vector<std::shared_ptr<const Subgroup>> subs;
  for (const SplitBase& base : bases) {
    auto H = std::make_shared<const Subgroup>(
        G, base.subgroup_generators, G.family() == Family::surface ? 2 * opt.ball_radius : 0);
    subs.push_back(H);
    sets.push_back(materialize(base.rule, ball, H));
  }

  bool undecided_base = false;
  for (std::size_t i = 0; i < sets.size(); ++i) {
    rep.base_checks.push_back(is_nontrivial_ai_set(sets[i], opt.window));
    const TriBool verdict = rep.base_checks.back().nontrivial;
    if (verdict == TriBool::no) {
      throw PreconditionError("base " + std::to_string(i) +
                              " is not a nontrivial almost invariant set");
    }
    if (verdict == TriBool::undecided) {
      undecided_base = true;
      rep.notes.push_back("nontriviality of base " + std::to_string(i) +
                          " is undecided at this truncation");
    }
  }
  if (undecided_base) return rep;

  std::vector<CComplex> complexes;
  for (std::size_t i = 0; i < subs.size(); ++i) {
    complexes.push_back(build_ccomplex(*subs[i], *ball, opt.dim_cap, opt.mode));
    rep.complex_components.push_back(connected_components(complexes.back()));
  }

  rep.family = build_family(sets, opt.translate_radius, opt.window);
  if (rep.family.star.holds == TriBool::no) require_good_position(rep.family);
  if (rep.family.star.holds == TriBool::undecided) {
    rep.notes.push_back("good position is undecided at this truncation");
    return rep;
  }

  CrossingGraph graph;
  try {
    graph = build_crossing_graph(rep.family);
  } catch (const InconclusiveError& err) {
    rep.notes.push_back(err.what());
    return rep;
  }
  rep.partition = cccs(rep.family);

  std::vector<std::map<std::string, int>> coset_index(subs.size());
  auto coset_of = [&](int b, const Word& t) {
    auto& index = coset_index[static_cast<std::size_t>(b)];
    if (index.empty()) {
      const auto& vs = complexes[static_cast<std::size_t>(b)].vertices;
      for (std::size_t k = 0; k < vs.size(); ++k) {
        index.emplace(subs[static_cast<std::size_t>(b)]->left_coset_key(vs[k].representative),
                      static_cast<int>(k));
      }
    }
    const auto it = index.find(subs[static_cast<std::size_t>(b)]->left_coset_key(t));
    return it == index.end() ? -1 : it->second;
  };
  for (const auto& [i, j] : graph.edges) {
    const FamilyMember& A = rep.family.members[static_cast<std::size_t>(i)];
    const FamilyMember& C = rep.family.members[static_cast<std::size_t>(j)];
    if (A.base != C.base) continue;
    CrossCheckRecord rec;
    rec.member_a = i;
    rec.member_b = j;
    const IntersectionEvidence ev =
        infinite_intersection(*subs[static_cast<std::size_t>(A.base)], A.translator, C.translator,
                              opt.mode, *ball);
    rec.intersection_infinite = ev.kind == EvidenceKind::infinite_with_certificate ||
                                ev.kind == EvidenceKind::infinite_with_witness;
    const int va = coset_of(A.base, A.translator);
    const int vb = coset_of(A.base, C.translator);
    const auto& comp = rep.complex_components[static_cast<std::size_t>(A.base)];
    rec.same_component = va >= 0 && vb >= 0 &&
                         comp.component_of[static_cast<std::size_t>(va)] ==
                             comp.component_of[static_cast<std::size_t>(vb)];
    if (!(rec.intersection_infinite && rec.same_component)) rep.cross_checks_pass = false;
    rep.cross_checks.push_back(rec);
  }
  if (!rep.cross_checks_pass) {
    rep.notes.push_back("a crossing pair fails the conjugate-intersection audit");
  }

  TranslateFamily enlarged = build_family(sets, opt.translate_radius + 1, opt.window);
  try {
    const CCCPartition after = cccs(enlarged);
    std::map<std::string, int> where;
    for (int m = 0; m < enlarged.member_count(); ++m) {
      where.emplace(enlarged.members[static_cast<std::size_t>(m)].set.mask_key(), m);
      where.emplace(enlarged.members[static_cast<std::size_t>(m)].co.mask_key(), m);
    }
    std::vector<int> lift(static_cast<std::size_t>(rep.family.member_count()));
    for (int m = 0; m < rep.family.member_count(); ++m) {
      const auto it = where.find(rep.family.members[static_cast<std::size_t>(m)].set.mask_key());
      if (it == where.end()) throw Error("enlarged family lost a member");
      lift[static_cast<std::size_t>(m)] = it->second;
    }
    for (int i = 0; i < rep.family.member_count() && rep.ccc_stable; ++i) {
      for (int j = i + 1; j < rep.family.member_count(); ++j) {
        const bool before = rep.partition.component_of[static_cast<std::size_t>(i)] ==
                            rep.partition.component_of[static_cast<std::size_t>(j)];
        const bool later =
            after.component_of[static_cast<std::size_t>(lift[static_cast<std::size_t>(i)])] ==
            after.component_of[static_cast<std::size_t>(lift[static_cast<std::size_t>(j)])];
        if (before != later) {
          rep.ccc_stable = false;
          rep.notes.push_back("cross-connected components of " + rep.family.describe(2 * i) +
                              " and " + rep.family.describe(2 * j) +
                              " change when the translating ball grows");
          break;
        }
      }
    }
  } catch (const InconclusiveError& err) {
    rep.ccc_stable = false;
    rep.notes.push_back(std::string("at the enlarged translating ball: ") + err.what());
  }
  if (!rep.ccc_stable) return rep;

  if (rep.partition.count <= 1) {
    Pretree point;
    point.points = rep.partition.count;
    point.rel.assign(static_cast<std::size_t>(std::max(1, rep.partition.count)), 0);
    rep.tree = build_tree(point);
    rep.outcome = SplitOutcome::point_tree;
    return rep;
  }

  Pretree pretree;
  try {
    pretree = pretree_from_family(rep.family, rep.partition);
  } catch (const InconclusiveError& err) {
    rep.notes.push_back(err.what());
    return rep;
  }
  const PretreeCheck axioms = verify_pretree(pretree);
  if (!axioms.ok) {
    rep.notes.push_back("pretree axiom " + axioms.axiom + " fails at this truncation");
    return rep;
  }
  rep.tree = build_tree(pretree);

  try {
    rep.dunwoody = verify_dunwoody(rep.family, enlarged);
    rep.dunwoody_ran = true;
  } catch (const InconclusiveError& err) {
    rep.notes.push_back(err.what());
    return rep;
  }
  if (!rep.dunwoody.ok()) {
    rep.notes.push_back("the family order fails the tree criterion at this truncation");
    return rep;
  }
  rep.dtree = dunwoody_tree(rep.family, rep.dunwoody);
  rep.dtree_built = true;
  if (rep.dtree.oriented_path_checked && !rep.dtree.oriented_path_matches) {
    rep.notes.push_back("oriented paths disagree with the order at this truncation");
    return rep;
  }
  if (!rep.cross_checks_pass) return rep;
  rep.outcome = SplitOutcome::splitting_exhibited;
  return rep;
}

}  // namespace ccx
