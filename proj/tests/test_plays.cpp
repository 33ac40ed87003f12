#include "ctlgames/plays.hpp"
#include "doctest.h"

using namespace ctlgames;

namespace {

Family fam(std::vector<Arena> as) {
  Family f;
  for (auto& a : as) f.members.push_back(std::make_shared<Arena>(std::move(a)));
  return f;
}

Arena named(Arena a, std::vector<std::string> names) {
  for (size_t i = 0; i < names.size(); ++i) a.nodes[i].name = names[i];
  return a;
}

Game sigma1_game() { return closed_game(std::make_shared<Arena>(lifted_sum(fam({Arena{}})))); }

// Σ((Σ0 ⇒ Σ1) × Σ0)
Game exn_c_game() {
  auto s0 = lifted_sum(fam({}));
  auto s1 = lifted_sum(fam({Arena{}}));
  auto a = lifted_sum(fam({product(function_space(s0, s1), s0)}));
  return closed_game(std::make_shared<Arena>(named(a, {"q", "a", "try", "caught", "ok", "raise"})));
}

// Σ_E((Σ_E0 ⇒ Σ_E1) × Σ_E0)
Game exn_e_game() {
  auto e0 = exn_lifted_sum(fam({}));
  auto e1 = exn_lifted_sum(fam({Arena{}}));
  auto a = exn_lifted_sum(fam({product(function_space(e0, e1), e0)}));
  return closed_game(std::make_shared<Arena>(
      named(a, {"q", "a", "try", "caught", "e(try)", "ok", "e(ok)", "raise", "e(raise)", "e(q)"})));
}

// ((Σ0 ⇒ Σ1) ⇒ Σ1) ⇒ Σ1, the arena of callcc at types 1 and 0.
Game callcc_game() {
  auto s0 = lifted_sum(fam({}));
  auto s1 = lifted_sum(fam({Arena{}}));
  auto a = function_space(function_space(s0, s1), s1);
  return closed_game(std::make_shared<Arena>(named(a, {"label", "caught", "ok", "done", "jump"})));
}

Move O(int node, int just, int ctl = kNoCtl) { return {1, node, just, ctl}; }

}  // namespace

TEST_CASE("legality") {
  auto g = sigma1_game();
  CHECK(is_legal(g, {}));
  CHECK(is_legal(g, {O(0, -1), O(1, 0)}));
  CHECK_FALSE(is_legal(g, {O(0, -1), O(0, -1)}));
  CHECK_FALSE(is_legal(g, {O(1, -1)}));
  CHECK_FALSE(is_legal(g, {O(0, -1), O(1, 1)}));
  CHECK(is_legal(g, {O(0, -1, kStar), O(1, 0)}, true));
  CHECK_FALSE(is_legal(g, {O(0, -1), O(1, 0)}, true));
}

TEST_CASE("morphism games") {
  auto s1 = lifted_sum(fam({Arena{}}));
  auto g = make_game(s1, s1);
  // copycat on Σ1 ⇒ Σ1
  Position s{{1, 0, -1}, {0, 0, 0}, {0, 1, 1}, {1, 1, 0}};
  CHECK(is_legal(g, s));
  CHECK(polarity(g, 0, 0) == Player::P);
  CHECK(polarity(g, 0, 1) == Player::O);
  CHECK(is_well_bracketed(g, s));
  auto moves = opponent_moves(g, Position(s.begin(), s.begin() + 2), false);
  CHECK(moves.size() == 2);  // a fresh initial question, or the answer in the domain
}

TEST_CASE("pending") {
  auto g = exn_c_game();
  CHECK(pending(g, {}) == -1);
  CHECK(pending(g, {O(0, -1)}) == 0);
  // q a try ok: ok pending; answering the root restores nothing
  Position s{O(0, -1), O(1, 0), O(2, 1), O(4, 2)};
  CHECK(pending(g, s) == 3);
  auto t = pending_table(g, s);
  CHECK(t == std::vector<int>{-1, 0, -1, 2, 3});
  // q q' a' -> q
  auto s1 = lifted_sum(fam({Arena{}}));
  auto h = make_game(s1, s1);
  CHECK(pending(h, {{1, 0, -1}, {0, 0, 0}, {0, 1, 1}}) == 0);
}

TEST_CASE("bracketing") {
  auto g = callcc_game();
  Position play{O(0, -1), O(2, 0), O(4, 1), O(1, 0)};
  CHECK(is_legal(g, play));
  CHECK(format_trace(g, play) ==
        "0 label O Q just=- ctl=-\n1 ok P Q just=0 ctl=-\n2 jump O Q just=1 ctl=-\n3 caught P A just=0 ctl=-\n");
  CHECK_FALSE(is_well_bracketed(g, play));
  CHECK(is_well_bracketed(sigma1_game(), {O(0, -1), O(1, 0)}));

  auto e = exn_e_game();
  Position left{O(0, -1), O(1, 0), O(2, 1), O(5, 2), O(7, 1), O(8, 4), O(6, 3), O(3, 2)};
  CHECK(is_legal(e, left));
  CHECK(is_player_well_bracketed(e, left));
}

TEST_CASE("open questions") {
  auto g = exn_c_game();
  CHECK(open_questions(g, {}).empty());
  CHECK(open_questions(g, {O(0, -1, kStar)}) == std::vector<int>{0});
  Position s{O(0, -1, kStar), O(1, 0), O(2, 1, kStar), O(4, 2, 2), O(5, 1, 3)};
  CHECK(open_questions(g, s) == std::vector<int>{2, 3, 4});
  // answering q restores open() of the empty prefix
  CHECK(open_after(g, s, 1).empty());
  // raise pointing at * opens only itself
  s[4].ctl = kStar;
  CHECK(open_questions(g, s) == std::vector<int>{4});
}

TEST_CASE("restriction") {
  auto g = sigma1_game();
  Position s{O(0, -1, kStar), O(1, 0)};
  CHECK(restrict(s, {true, true}) == s);

  // Interaction of two copycats on Σ1 ⇒ Σ1 ⇒ Σ1, as a chain arena C > B > A.
  auto s1 = lifted_sum(fam({Arena{}}));
  auto chain = function_space(function_space(s1, s1), s1);
  auto gc = closed_game(std::make_shared<Arena>(chain));
  // nodes: 0 qC, 1 aC, 2 qB, 3 aB, 4 qA, 5 aA
  Position u{O(0, -1), O(2, 0), O(4, 1), O(5, 2), O(3, 1), O(1, 0)};
  CHECK(is_legal(gc, u));
  auto ac = restrict(u, {true, false, true, true, false, true});
  CHECK(ac == Position{O(0, -1), O(4, 0), O(5, 1), O(1, 0)});
  // restriction is idempotent
  CHECK(restrict(ac, std::vector<bool>(ac.size(), true)) == ac);

  // control pointers follow hidden moves' control chains
  Position c{O(0, -1, kStar), O(2, 0, 0), O(4, 1, 1)};
  auto r = restrict(c, {true, false, true});
  CHECK(r[1].ctl == 0);
  auto r2 = restrict(c, {false, false, true});
  CHECK(r2[0].ctl == kStar);
}

TEST_CASE("exception locality and propagation") {
  auto e = exn_e_game();
  Position plain{O(0, -1), O(1, 0), O(2, 1), O(5, 2)};
  CHECK(is_exception_local(e, plain));
  CHECK(is_exception_propagating(e, plain));
  CHECK(is_exception_propagating(e, {}));

  // O raises e(ok), P propagates e(try).
  Position right = plain;
  right.push_back(O(6, 3));
  right.push_back(O(4, 2));
  CHECK(is_exception_local(e, right));
  CHECK(is_exception_propagating(e, right));

  // P raises after a non-exception O move
  Position raise{O(0, -1), O(1, 0), O(7, 1), O(8, 2)};
  CHECK_FALSE(is_exception_local(e, raise));
  // a lone exception answer is not propagating
  CHECK_FALSE(is_exception_propagating(e, raise));
  CHECK(ep_prefix_length(e, raise) == 3);
}

TEST_CASE("K on sequences") {
  auto e = exn_e_game();
  auto k = k_game(e);
  auto c = exn_c_game();
  CHECK(arena_equal(*k.game.cod, *c.cod));

  Position left{O(0, -1), O(1, 0), O(2, 1), O(5, 2), O(7, 1), O(8, 4), O(6, 3), O(3, 2)};
  auto kl = k_map(e, k, left);
  Position expect{O(0, -1, kStar), O(1, 0), O(2, 1, kStar), O(4, 2, 2), O(5, 1, 3), O(3, 2)};
  CHECK(kl == expect);
  CHECK(is_control_sequence(c, kl));
  CHECK(format_trace(c, kl) ==
        "0 q O Q just=- ctl=*\n1 a P A just=0 ctl=-\n2 try O Q just=1 ctl=*\n3 ok P Q just=2 ctl=2\n"
        "4 raise O Q just=1 ctl=3\n5 caught P A just=2 ctl=-\n");

  Position right{O(0, -1), O(1, 0), O(2, 1), O(5, 2), O(6, 3), O(4, 2)};
  CHECK(k_map(e, k, right) == Position(expect.begin(), expect.begin() + 4));

  // unmatched Opponent e(q) at the end: K of the even prefix
  Position tail{O(0, -1), O(1, 0), O(2, 1), O(5, 2), O(6, 3)};
  CHECK(k_map(e, k, tail) == k_map(e, k, Position(tail.begin(), tail.begin() + 4)));
}

TEST_CASE("K commutes with restriction") {
  auto e0 = exn_lifted_sum(fam({}));
  auto chain = function_space(function_space(e0, e0), e0);
  auto g = closed_game(std::make_shared<Arena>(chain));
  // nodes: 0 qC, 1 e(qC), 2 qB, 3 e(qB), 4 qA, 5 e(qA)
  Position s{O(0, -1), O(2, 0), O(4, 1), O(5, 2), O(3, 1), O(1, 0)};
  CHECK(is_legal(g, s));
  auto k = k_game(g);
  std::vector<bool> ac{true, false, true, true, false, true};
  std::vector<bool> kac{true, false, true};  // K(s) keeps qC qB qA
  auto lhs = restrict(k_map(g, k, s), kac);
  auto rhs = k_map(g, k, restrict(s, ac));
  CHECK(lhs == rhs);
  CHECK(lhs.size() == 2);
  CHECK(lhs[1].ctl == 0);
}

TEST_CASE("trace round trip") {
  auto g = exn_c_game();
  Position s{O(0, -1, kStar), O(1, 0), O(2, 1, kStar), O(4, 2, 2), O(5, 1, 3), O(3, 2)};
  CHECK(parse_trace(g, format_trace(g, s)) == s);
  CHECK_THROWS_AS(parse_trace(g, "0 nope O Q just=- ctl=*\n"), std::invalid_argument);
}
