#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>

#include "ccx/stallings.hpp"
#include "oracles.hpp"

using namespace ccx;

namespace {

const GroupSpec F2 = GroupSpec::free_group(2);

std::vector<Word> parse_gens(const GroupSpec& G, std::initializer_list<const char*> texts) {
  std::vector<Word> out;
  for (const char* t : texts) out.push_back(G.parse_word(t));
  return out;
}

struct NamedSubgroup {
  const char* label;
  std::vector<Word> gens;
  SubgroupGraph graph;
};

// Shared test corpus: small named subgroups of F2 exercising tails, finite index,
// cyclic and non-cyclic ranks.
const std::vector<NamedSubgroup>& corpus() {
  static std::vector<NamedSubgroup> c = [] {
    std::vector<NamedSubgroup> out;
    auto add = [&](const char* label, std::initializer_list<const char*> texts) {
      std::vector<Word> gens = parse_gens(F2, texts);
      SubgroupGraph g = SubgroupGraph::fold(gens, F2);
      out.push_back({label, std::move(gens), std::move(g)});
    };
    add("<a>", {"a"});
    add("<b>", {"b"});
    add("<a^2>", {"a^2"});
    add("<ab>", {"ab"});
    add("<aba^-1>", {"abA"});
    add("<a^2 b^2>", {"aabb"});
    add("<[a,b]>", {"abAB"});
    add("<a^2, b>", {"a^2", "b"});
    add("<a^3, b>", {"a^3", "b"});
    add("<ab, ba>", {"ab", "ba"});
    add("<a^2, b^2, ab>", {"a^2", "b^2", "ab"});
    add("F2", {"a", "b"});
    return out;
  }();
  return c;
}

}  // namespace

TEST_CASE("membership agrees with the product oracle") {
  for (const auto& [label, gens, graph] : corpus()) {
    CAPTURE(label);
    auto members = oracles::subgroup_products(gens, 8);
    int window = oracles::stable_window(gens, 8, 1, 6);
    REQUIRE(window >= 5);  // otherwise the oracle is too weak to test anything
    for (const auto& ls : oracles::reduced_words_up_to(2, window)) {
      bool expected = members.count(oracles::key_of(ls)) > 0;
      CHECK(graph.accepts(Word(ls)) == expected);
    }
  }
}

TEST_CASE("folding is generator-order and inversion independent") {
  auto canon = [&](std::initializer_list<const char*> texts) {
    return SubgroupGraph::fold(parse_gens(F2, texts), F2);
  };
  CHECK(canon({"a^2", "b"}) == canon({"b", "a^2"}));
  CHECK(canon({"a^2", "b"}) == canon({"a^-2", "b"}));
  CHECK(canon({"ab", "ba"}) == canon({"BA", "ba"}));
  CHECK(canon({"a", "ab"}) == canon({"a", "b"}));
  CHECK(canon({"a^2", "a^3"}) == canon({"a"}));
  CHECK(canon({"abA", "abbA"}) == canon({"abA"}));
  CHECK(canon({"a", "b"}) == canon({"a", "b", "abab"}));
  CHECK_FALSE(canon({"a"}) == canon({"a^2"}));
}

TEST_CASE("graph shapes on known subgroups") {
  auto g1 = SubgroupGraph::fold({F2.parse_word("a")}, F2);
  CHECK(g1.vertex_count() == 1);
  CHECK(g1.edge_count() == 1);
  CHECK(g1.cycle_rank() == 1);
  CHECK(g1.is_infinite());
  CHECK_FALSE(g1.is_trivial());
  CHECK_FALSE(g1.is_complete());

  auto g2 = SubgroupGraph::fold(parse_gens(F2, {"a^2", "b"}), F2);
  CHECK(g2.vertex_count() == 2);
  CHECK(g2.edge_count() == 3);
  CHECK(g2.cycle_rank() == 2);

  auto even = SubgroupGraph::fold(parse_gens(F2, {"a^2", "b^2", "ab"}), F2);
  CHECK(even.vertex_count() == 2);
  CHECK(even.edge_count() == 4);
  CHECK(even.cycle_rank() == 3);
  CHECK(even.is_complete());

  auto whole = SubgroupGraph::fold(parse_gens(F2, {"a", "b"}), F2);
  CHECK(whole.vertex_count() == 1);
  CHECK(whole.is_complete());

  auto trivial = SubgroupGraph::trivial_subgroup(2);
  CHECK(trivial.is_trivial());
  CHECK(trivial.vertex_count() == 1);
  CHECK(trivial.accepts(Word::identity()));
  CHECK_FALSE(trivial.accepts(F2.parse_word("a")));
  CHECK(SubgroupGraph::fold(std::initializer_list<Word>{}, F2) == trivial);
  CHECK(SubgroupGraph::fold({F2.parse_word("aA")}, F2) == trivial);
}

TEST_CASE("tree words label geodesic paths from the basepoint") {
  for (const auto& [label, gens, graph] : corpus()) {
    CAPTURE(label);
    for (std::size_t v = 0; v < graph.vertex_count(); ++v) {
      std::int32_t cur = SubgroupGraph::basepoint();
      for (Letter l : graph.tree_word(static_cast<std::int32_t>(v)).letters()) {
        cur = graph.step(cur, l);
        REQUIRE(cur != SubgroupGraph::kNone);
      }
      CHECK(cur == static_cast<std::int32_t>(v));
    }
  }
}

TEST_CASE("free basis generates the same subgroup") {
  for (const auto& [label, gens, graph] : corpus()) {
    CAPTURE(label);
    auto basis = graph.free_basis();
    CHECK(static_cast<int>(basis.size()) == graph.cycle_rank());
    for (const Word& b : basis) CHECK(graph.accepts(b));
    CHECK(SubgroupGraph::fold(basis, F2) == graph);
  }
}

TEST_CASE("rewriting over the free basis") {
  for (const auto& [label, gens, graph] : corpus()) {
    CAPTURE(label);
    auto basis = graph.free_basis();
    for (std::size_t i = 0; i < basis.size(); ++i) {
      Word r = graph.rewrite_in_basis(basis[i]);
      REQUIRE(r.length() == 1);
      CHECK(r.letters()[0] == make_letter(static_cast<unsigned>(i), false));
    }
    // Round trip: rewrite a member word, substitute basis words back, compare.
    auto members = oracles::subgroup_products(gens, 4);
    int done = 0;
    for (const auto& key : members) {
      if (done++ > 200) break;
      Word w(std::vector<Letter>(key.begin(), key.end()));
      Word rewritten = graph.rewrite_in_basis(w);
      Word back = Word::identity();
      for (Letter l : rewritten.letters()) {
        const Word& factor = basis[slot_of(l)];
        back = F2.product(back, is_inverse(l) ? F2.inverse(factor) : factor);
      }
      CHECK(back == F2.normal_form(w));
    }
    Word outside = F2.parse_word("ababab^2a");
    if (!graph.accepts(outside))
      CHECK_THROWS_AS(graph.rewrite_in_basis(outside), PreconditionError);
  }
}

TEST_CASE("finite index detection") {
  auto fold1 = [&](std::initializer_list<const char*> texts) {
    return SubgroupGraph::fold(parse_gens(F2, texts), F2);
  };
  auto whole = fold1({"a", "b"});
  CHECK(has_finite_index_in(fold1({"a^2", "b^2", "ab"}), whole));
  CHECK(has_finite_index_in(whole, whole));
  CHECK_FALSE(has_finite_index_in(fold1({"a^2", "b"}), whole));
  CHECK_FALSE(has_finite_index_in(fold1({"a"}), whole));
  CHECK(has_finite_index_in(fold1({"a^4"}), fold1({"a^2"})));
  CHECK_FALSE(has_finite_index_in(fold1({"a^4", "b"}), fold1({"a^2", "b"})));

  // A base tail on the big subgroup must not fool the check: <ab^2A> has index 2
  // in <abA> even though the tail vertex degrees differ.
  CHECK(has_finite_index_in(fold1({"abbA"}), fold1({"abA"})));
  // Not a subgroup relation at all; the rewrite step reports the bad precondition.
  CHECK_THROWS_AS(has_finite_index_in(fold1({"abbA"}), fold1({"ab"})), PreconditionError);

  auto trivial = SubgroupGraph::trivial_subgroup(2);
  CHECK(has_finite_index_in(trivial, trivial));
  CHECK_FALSE(has_finite_index_in(trivial, fold1({"a"})));
}

TEST_CASE("intersections of cyclic subgroups") {
  auto a2 = SubgroupGraph::fold({F2.parse_word("a^2")}, F2);
  auto a3 = SubgroupGraph::fold({F2.parse_word("a^3")}, F2);
  auto a6 = SubgroupGraph::fold({F2.parse_word("a^6")}, F2);
  CHECK(intersect(a2, a3) == a6);

  auto a = SubgroupGraph::fold({F2.parse_word("a")}, F2);
  auto b = SubgroupGraph::fold({F2.parse_word("b")}, F2);
  CHECK(intersect(a, b).is_trivial());
  CHECK(intersect(a, a2) == a2);
}

TEST_CASE("intersection membership is the conjunction of memberships") {
  const auto& c = corpus();
  auto words = oracles::reduced_words_up_to(2, 5);
  for (std::size_t i = 0; i < c.size(); i += 2) {
    for (std::size_t j = 1; j < c.size(); j += 3) {
      CAPTURE(c[i].label);
      CAPTURE(c[j].label);
      SubgroupGraph meet = intersect(c[i].graph, c[j].graph);
      for (const auto& ls : words) {
        Word w(ls);
        CHECK(meet.accepts(w) == (c[i].graph.accepts(w) && c[j].graph.accepts(w)));
      }
    }
  }
}

TEST_CASE("fiber product components classify double cosets") {
  auto a2 = SubgroupGraph::fold({F2.parse_word("a^2")}, F2);
  auto report = fiber_product(a2, a2);
  REQUIRE(report.components.size() == 2);
  CHECK(report.components[0].is_basepoint);
  CHECK(report.components[0].coset_rep == Word::identity());
  CHECK(report.components[0].cls == ComponentClass::infinite_cyclic_or_bigger);
  CHECK_FALSE(report.components[1].is_basepoint);
  CHECK(F2.format(report.components[1].coset_rep) == "a");
  CHECK(report.components[1].cls == ComponentClass::infinite_cyclic_or_bigger);

  auto a = SubgroupGraph::fold({F2.parse_word("a")}, F2);
  auto b = SubgroupGraph::fold({F2.parse_word("b")}, F2);
  auto ab_report = fiber_product(a, b);
  REQUIRE(ab_report.components.size() == 1);
  CHECK(ab_report.components[0].is_basepoint);
  CHECK(ab_report.components[0].cls == ComponentClass::trivial);
}

TEST_CASE("fiber product reps really meet the conjugate") {
  const auto& c = corpus();
  for (std::size_t i = 0; i < c.size(); i += 3) {
    for (std::size_t j = 2; j < c.size(); j += 4) {
      CAPTURE(c[i].label);
      CAPTURE(c[j].label);
      auto report = fiber_product(c[i].graph, c[j].graph);
      std::set<std::string> reps;
      for (const auto& comp : report.components) {
        CHECK(reps.insert(comp.coset_rep.key()).second);  // distinct double cosets
        SubgroupGraph conj = conjugate_graph(c[j].graph, comp.coset_rep, F2);
        SubgroupGraph meet = intersect(c[i].graph, conj);
        bool infinite = comp.cls == ComponentClass::infinite_cyclic_or_bigger;
        CHECK(meet.is_infinite() == infinite);
        CHECK(comp.graph.is_infinite() == infinite);
      }
      CHECK(report.components[0].is_basepoint);
    }
  }
}

TEST_CASE("conjugate graphs") {
  auto ab = SubgroupGraph::fold({F2.parse_word("ab")}, F2);
  CHECK(conjugate_graph(ab, Word::identity(), F2) == ab);
  Word g = F2.parse_word("ba");
  auto conj = conjugate_graph(ab, g, F2);
  CHECK(conj.accepts(F2.conjugate(g, F2.parse_word("ab"))));
  CHECK(conjugate_graph(conj, F2.inverse(g), F2) == ab);
  for (const auto& ls : oracles::reduced_words_up_to(2, 4)) {
    Word w(ls);
    CHECK(conj.accepts(F2.conjugate(g, w)) == ab.accepts(w));
  }
}

TEST_CASE("commensurability") {
  auto fold1 = [&](std::initializer_list<const char*> texts) {
    return SubgroupGraph::fold(parse_gens(F2, texts), F2);
  };
  CHECK(commensurable(fold1({"a"}), fold1({"a^2"})));
  CHECK(commensurable(fold1({"a^3"}), fold1({"a^2"})));
  CHECK_FALSE(commensurable(fold1({"a"}), fold1({"b"})));
  CHECK_FALSE(commensurable(fold1({"a"}), fold1({"a", "b"})));
  CHECK(commensurable(fold1({"a^2", "b^2", "ab"}), fold1({"a", "b"})));
  CHECK(commensurable(fold1({"ab"}), fold1({"ba", "ab"})) ==
        commensurable(fold1({"ba", "ab"}), fold1({"ab"})));
}

TEST_CASE("malnormality verdicts on known subgroups") {
  auto fold1 = [&](std::initializer_list<const char*> texts) {
    return SubgroupGraph::fold(parse_gens(F2, texts), F2);
  };
  for (const char* label : {"a", "b", "ab", "abAB", "aabb", "abA"}) {
    CAPTURE(label);
    auto rep = is_almost_malnormal(fold1({label}), F2);
    CHECK(rep.almost_malnormal);
    CHECK_FALSE(rep.witness.has_value());
  }
  auto rep = is_almost_malnormal(fold1({"a^2"}), F2);
  CHECK_FALSE(rep.almost_malnormal);
  REQUIRE(rep.witness.has_value());
  CHECK(F2.format(*rep.witness) == "a");

  for (auto texts : {std::initializer_list<const char*>{"a^2", "b"},
                     std::initializer_list<const char*>{"a^2", "b^2", "ab"}}) {
    auto graph = fold1(texts);
    auto r = is_almost_malnormal(graph, F2);
    CHECK_FALSE(r.almost_malnormal);
    REQUIRE(r.witness.has_value());
    CHECK_FALSE(graph.accepts(*r.witness));
    CHECK(intersect(graph, conjugate_graph(graph, *r.witness, F2)).is_infinite());
  }

  CHECK_THROWS_AS(is_almost_malnormal(SubgroupGraph::trivial_subgroup(2), F2),
                  PreconditionError);
}

TEST_CASE("height of known subgroups") {
  auto fold1 = [&](std::initializer_list<const char*> texts) {
    return SubgroupGraph::fold(parse_gens(F2, texts), F2);
  };
  auto h = [&](std::initializer_list<const char*> texts, int max_n) {
    return height(fold1(texts), max_n, F2);
  };
  CHECK(h({"a"}, 4).height == 1);
  CHECK_FALSE(h({"a"}, 4).exceeded_bound);
  CHECK(h({"ab"}, 4).height == 1);
  CHECK(h({"abAB"}, 4).height == 1);
  CHECK(h({"a^2"}, 4).height == 2);
  CHECK_FALSE(h({"a^2"}, 4).exceeded_bound);
  CHECK(h({"a^4"}, 6).height == 4);
  CHECK(h({"a", "b"}, 4).height == 1);  // the whole group has one coset
  CHECK(h({"a^2", "b^2", "ab"}, 4).height == 2);  // equals the index
  // For <a^n, b> only the cosets H, aH, ..., a^(n-1)H extend a chain.
  CHECK(h({"a^2", "b"}, 4).height == 2);
  CHECK(h({"a^3", "b"}, 5).height == 3);

  CHECK(h({"a^2"}, 1).exceeded_bound);
  CHECK(height(SubgroupGraph::trivial_subgroup(2), 4, F2).height == 0);
  CHECK_THROWS_AS(h({"a"}, 0), InputError);
  CHECK_THROWS_AS(h({"a"}, 9), InputError);
}

TEST_CASE("height is stable once the bound is not hit") {
  for (const auto& [label, gens, graph] : corpus()) {
    if (graph.is_trivial() || !graph.is_infinite()) continue;
    CAPTURE(label);
    auto r4 = height(graph, 4, F2);
    if (!r4.exceeded_bound) {
      auto r5 = height(graph, 5, F2);
      CHECK_FALSE(r5.exceeded_bound);
      CHECK(r5.height == r4.height);
    }
    // Malnormal subgroups are exactly the height-1 ones among infinite subgroups.
    auto mal = is_almost_malnormal(graph, F2);
    auto r2 = height(graph, 3, F2);
    if (!r2.exceeded_bound) CHECK(mal.almost_malnormal == (r2.height == 1));
  }
}

TEST_CASE("ambient family is enforced") {
  auto Z2 = GroupSpec::free_abelian(2);
  CHECK_THROWS_AS(SubgroupGraph::fold({Z2.parse_word("x")}, Z2), UnsupportedFamilyError);
  auto a = SubgroupGraph::fold({F2.parse_word("a")}, F2);
  auto F3 = GroupSpec::free_group(3);
  auto c = SubgroupGraph::fold({F3.parse_word("c")}, F3);
  CHECK_THROWS_AS(fiber_product(a, c), AmbientMismatchError);
}
