#include "ctlgames/arenas.hpp"
#include "ctlgames/parser.hpp"
#include "ctlgames/translations.hpp"
#include "doctest.h"

using namespace ctlgames;

namespace {

TypePtr T(const char* s) { return parse_type(s); }

Family fam(std::vector<Arena> as) {
  Family f;
  for (auto& a : as) f.members.push_back(std::make_shared<Arena>(std::move(a)));
  return f;
}

Arena sigma0() { return lifted_sum(fam({})); }
Arena sigma1() { return lifted_sum(fam({Arena{}})); }

}  // namespace

TEST_CASE("basic constructions") {
  auto s0 = sigma0();
  CHECK(s0.size() == 1);
  CHECK(s0.roots().size() == 1);
  auto s1 = sigma1();
  REQUIRE(s1.size() == 2);
  CHECK(s1.nodes[1].parent == 0);
  CHECK_FALSE(s1.nodes[1].question);

  CHECK(arena_equal(function_space(Arena{}, s1), s1));
  auto g = function_space(s1, s1);
  REQUIRE(g.size() == 4);
  CHECK(g.nodes[2].parent == 0);  // the copy hangs below the root question
  CHECK(g.depth(2) == 1);         // so its root is a Player move
  CHECK(g.validate().empty());

  auto p = product(s0, s1);
  CHECK(p.roots().size() == 2);
  CHECK(product_offset({&s0, &s1}, 1) == 1);

  // Σ{A, B} with A = Σ1: root, a0, A's two nodes, a1.
  auto s = lifted_sum(fam({sigma1(), Arena{}}));
  CHECK(s.size() == 5);
  CHECK(sum_answer(fam({sigma1(), Arena{}}), 1) == 4);
  CHECK(s.nodes[sum_member_node(fam({sigma1(), Arena{}}), 0, 0)].parent == 1);
}

TEST_CASE("exception lifted sums and erasure") {
  auto e0 = exn_lifted_sum(fam({}));
  REQUIRE(e0.size() == 2);
  CHECK(e0.nodes[1].exn_answer);
  CHECK(e0.exn_answer_of(0) == 1);
  CHECK(e0.validate().empty());
  auto e1 = exn_lifted_sum(fam({Arena{}}));
  CHECK(e1.size() == 3);
  CHECK(arena_equal(erase_exception_answers(e0), sigma0()));
  CHECK(arena_equal(erase_exception_answers(e1), sigma1()));
  CHECK(arena_equal(forget_exn(e1), lifted_sum(fam({Arena{}, Arena{}}))));
  std::vector<int> map;
  erase_exception_answers(e1, &map);
  CHECK(map == std::vector<int>{0, 1, -1});
}

TEST_CASE("answers relabelled as questions") {
  auto u = relabel_answers_as_questions(sigma1());
  CHECK(arena_equal(u, function_space(sigma0(), sigma0())));
  CHECK(arena_equal(relabel_answers_as_questions(sigma0()), sigma0()));
}

TEST_CASE("denotations of types") {
  CHECK(denote_type(zero_type(), Mode::Plain).size() == 0);
  auto one = denote_type(one_type(), Mode::Plain);
  REQUIRE(one.size() == 1);
  CHECK(one.members[0]->size() == 0);
  auto b = denote_type(bool_type(), Mode::Plain);
  CHECK(b.size() == 2);

  auto f = denote_type(T("1 -> 0"), Mode::Plain);
  REQUIRE(f.size() == 1);
  CHECK(arena_equal(*f.members[0], sigma0()));

  auto e = denote_type(exn_type(), Mode::Control);
  REQUIRE(e.size() == 1);
  CHECK(arena_equal(*e.members[0], product(function_space(sigma0(), sigma1()), sigma0())));

  // Products of families multiply indices; sums add them.
  CHECK(denote_type(T("(1 + 1) * (1 + 1 + 1)"), Mode::Plain).size() == 6);
  CHECK(denote_type(T("(1 + 1) + 0"), Mode::Plain).size() == 2);
  CHECK(pair_index(b, b, 1, 0) == 2);
  CHECK(inj_index(b, 2, 1) == 3);

  // Bool-valued argument: one component per index.
  auto g = denote_type(T("1 + 1 -> 1"), Mode::Plain);
  CHECK(g.members[0]->roots().size() == 2);
  CHECK(g.members[0]->validate().empty());
}

TEST_CASE("dot dump") {
  auto d = arena_to_dot(exn_lifted_sum(fam({Arena{}})));
  CHECK(d == "* -> q Q\nq -> a0 A\nq -> e A E\n");
}

TEST_CASE("cps isomorphism examples") {
  auto unit = cps_iso(one_type());
  REQUIRE(unit.size() == 1);
  CHECK(unit[0].empty());

  auto phi = cps_iso(T("1 -> 1"));
  REQUIRE(phi.size() == 1);
  auto from = relabel_answers_as_questions(*denote_type(T("1 -> 1"), Mode::Plain).members[0]);
  auto to = *denote_type(T("(1 * (1 -> 0)) -> 0"), Mode::Plain).members[0];
  CHECK(validate_iso(from, to, phi[0]).empty());
  // The Σ1 answer becomes the continuation question below the root.
  CHECK(to.nodes[phi[0][1]].parent == phi[0][0]);
  CHECK(to.nodes[phi[0][1]].question);
  CHECK(from.roots().size() == to.roots().size());
}

TEST_CASE("type enumeration") {
  auto ts = enumerate_types(5);
  CHECK(ts.size() == 2 + 12 + 144);
  for (const auto& t : ts) CHECK(type_size(t) <= 5);
}

TEST_CASE("arena lemmas for all small types") {
  int checked = 0;
  for (const auto& t : enumerate_types(6)) {
    for (Mode m : {Mode::Plain, Mode::Control, Mode::Exception})
      for (const auto& a : denote_type(t, m).members) CHECK_MESSAGE(a->validate().empty(), type_to_string(t));

    auto ex = denote_type(t, Mode::Exception);
    auto sigma_e = exn_lifted_sum(ex);
    CHECK(sigma_e.validate().empty());

    // U_E(Σ_E B) = Σ(U_E(B) + 1), node for node.
    Family ue;
    for (const auto& a : ex.members) ue.members.push_back(std::make_shared<Arena>(forget_exn(*a)));
    ue.members.push_back(std::make_shared<Arena>());
    CHECK_MESSAGE(arena_equal(forget_exn(sigma_e), lifted_sum(ue)), type_to_string(t));

    // Lifted to types: U_E(Σ_E⟦T⟧_E) is the plain arena of T^E + 1.
    auto te = denote_type(sum_type(exn_translate_type(t), one_type()), Mode::Plain);
    CHECK_MESSAGE(arena_equal(forget_exn(sigma_e), lifted_sum(te)), type_to_string(t));

    // K ∘ Σ_E = Σ ∘ K, and K(⟦T⟧_E) = ⟦T⟧_C.
    Family k;
    for (const auto& a : ex.members) k.members.push_back(std::make_shared<Arena>(erase_exception_answers(*a)));
    CHECK(arena_equal(erase_exception_answers(sigma_e), lifted_sum(k)));
    auto ctl = denote_type(t, Mode::Control);
    REQUIRE(ctl.size() == k.size());
    for (int i = 0; i < ctl.size(); ++i) CHECK(arena_equal(*k.members[i], *ctl.members[i]));

    // φ_T : U_C(⟦T⟧) ≅ ⟦T^C⟧.
    auto plain = denote_type(t, Mode::Plain);
    auto cps = denote_type(cps_translate_type(t), Mode::Plain);
    auto phi = cps_iso(t);
    REQUIRE(static_cast<int>(phi.size()) == plain.size());
    REQUIRE(cps.size() == plain.size());
    for (int i = 0; i < plain.size(); ++i)
      CHECK_MESSAGE(validate_iso(relabel_answers_as_questions(*plain.members[i]), *cps.members[i], phi[i]).empty(),
                    type_to_string(t));
    ++checked;
  }
  CHECK(checked == 158);
}
