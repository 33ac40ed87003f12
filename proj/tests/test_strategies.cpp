#include <chrono>

#include "ctlgames/desugar.hpp"
#include "ctlgames/parser.hpp"
#include "ctlgames/strategies.hpp"
#include "doctest.h"
#include "test_programs.hpp"

using namespace ctlgames;

namespace {

TermPtr program(const std::string& src) { return elaborate_program(desugar(parse_term(src))); }

// Drives σ with the given Opponent moves, appending each reply.
Position drive(const StrategyPtr& sigma, const std::vector<Move>& opponent) {
  Position s;
  for (const auto& o : opponent) {
    s.push_back(o);
    Fuel f;
    Response r = sigma->respond(s, f);
    REQUIRE_MESSAGE(r.kind == Response::Play, format_trace(sigma->game(), s));
    s.push_back(r.move);
  }
  return s;
}

Move O(int node, int just, int ctl = kNoCtl) { return {1, node, just, ctl}; }

}  // namespace

TEST_CASE("callcc play") {
  auto cc = callcc_strategy(one_type(), zero_type());
  const Game& g = cc->game();
  auto s = drive(cc, {O(0, -1), O(4, 1)});
  CHECK(format_trace(g, s) ==
        "0 label O Q just=- ctl=-\n1 ok P Q just=0 ctl=-\n2 jump O Q just=1 ctl=-\n3 caught P A just=0 ctl=-\n");
  CHECK(is_legal(g, s));
  CHECK_FALSE(is_well_bracketed(g, s));

  // returning normally from ok also answers label
  auto t = drive(cc, {O(0, -1), O(3, 1)});
  CHECK(t.back() == Move{1, 1, 0, kNoCtl});
  CHECK(is_well_bracketed(g, t));
}

TEST_CASE("exn_C play") {
  auto e = exn_c_strategy();
  const Game& g = e->game();
  auto s = drive(e, {O(0, -1, kStar), O(2, 1, kStar), O(5, 1, 3)});
  CHECK(format_trace(g, s) ==
        "0 q O Q just=- ctl=*\n1 a P A just=0 ctl=-\n2 try O Q just=1 ctl=*\n3 ok P Q just=2 ctl=2\n"
        "4 raise O Q just=1 ctl=3\n5 caught P A just=2 ctl=-\n");
  CHECK(is_control_sequence(g, s));

  // raise with no open try gets no answer
  Position bare{O(0, -1, kStar), {1, 1, 0, kNoCtl}, O(5, 1, kStar)};
  Fuel f;
  CHECK(e->respond(bare, f).kind == Response::Silent);

  // two nested trys: the inner one catches
  auto n = drive(e, {O(0, -1, kStar), O(2, 1, kStar), O(2, 1, 3), O(5, 1, 5)});
  CHECK(n.back().just == 4);
}

TEST_CASE("exn_E plays") {
  auto e = exn_e_strategy();
  const Game& g = e->game();
  auto left = drive(e, {O(0, -1), O(2, 1), O(7, 1), O(6, 3)});
  CHECK(format_trace(g, left) ==
        "0 q O Q just=- ctl=-\n1 a P A just=0 ctl=-\n2 try O Q just=1 ctl=-\n3 ok P Q just=2 ctl=-\n"
        "4 raise O Q just=1 ctl=-\n5 e(raise) P A just=4 ctl=-\n6 e(ok) O A just=3 ctl=-\n"
        "7 caught P A just=2 ctl=-\n");
  CHECK(is_legal(g, left));
  CHECK(is_player_well_bracketed(g, left));

  auto right = drive(e, {O(0, -1), O(2, 1), O(6, 3)});
  CHECK(format_trace(g, right) ==
        "0 q O Q just=- ctl=-\n1 a P A just=0 ctl=-\n2 try O Q just=1 ctl=-\n3 ok P Q just=2 ctl=-\n"
        "4 e(ok) O A just=3 ctl=-\n5 e(try) P A just=2 ctl=-\n");
  CHECK(is_legal(g, right));
  CHECK(is_player_well_bracketed(g, right));
}

TEST_CASE("cell") {
  auto c = cell_strategy(bool_type());
  const Game& g = c->game();
  auto id = [&](const std::string& name) {
    for (int n = 0; n < g.cod->size(); ++n)
      if (g.cod->nodes[n].name == name) return n;
    FAIL("no move " << name);
    return -1;
  };
  // read before any write: no answer
  Position s = drive(c, {O(0, -1)});
  s.push_back(O(id("read"), 1));
  Fuel f;
  CHECK(c->respond(s, f).kind == Response::Silent);

  // write ff, then two reads both see ff
  auto t = drive(c, {O(0, -1), O(id("write1"), 1), O(id("read"), 1), O(id("read"), 1)});
  CHECK(g.cod->nodes[t[5].node].name == "read.val1");
  CHECK(g.cod->nodes[t[7].node].name == "read.val1");
  CHECK(is_legal(g, t));
}

TEST_CASE("adequacy") {
  Fuel fuel;
  for (const auto& p : test_programs()) {
    auto m = program(p.source);
    for (Mode mode : {Mode::Control, Mode::Exception}) {
      auto v = probe_top(denote(m, mode), fuel);
      CHECK_MESSAGE(v == std::optional<bool>(p.expect_converge), p.name << " " << mode_name(mode));
    }
  }
}

TEST_CASE("K-correspondence") {
  auto start = std::chrono::steady_clock::now();
  Fuel fuel;
  for (const auto& p : test_programs()) {
    auto m = program(p.source);
    auto t0 = std::chrono::steady_clock::now();
    auto c = equal_to_depth(k_functor(denote(m, Mode::Exception)), denote(m, Mode::Control), 12, fuel);
    auto dt = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    MESSAGE(p.name << " positions=" << c.positions << " skipped=" << c.skipped << " secs=" << dt);
    CHECK_MESSAGE(c.equal, p.name << "\n" << c.counterexample);
    CHECK_MESSAGE(!c.inconclusive, p.name);
  }
  auto secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  CHECK(secs < 60.0);
}

TEST_CASE("K on constants and higher-type values") {
  Fuel fuel;
  auto same = [&](const StrategyPtr& e, const StrategyPtr& c, int depth, const std::string& what) {
    auto r = equal_to_depth(k_functor(e), c, depth, fuel);
    MESSAGE(what << " positions=" << r.positions << " skipped=" << r.skipped);
    CHECK_MESSAGE(r.equal, what << "\n" << r.counterexample);
    CHECK_MESSAGE(!r.inconclusive, what);
  };
  same(exn_e_strategy(), exn_c_strategy(), 12, "exn");
  same(new_constant(bool_type(), Mode::Exception), new_constant(bool_type(), Mode::Control), 10, "cell");
  same(callcc_constant(one_type(), zero_type(), Mode::Exception), callcc_constant(one_type(), zero_type(), Mode::Control),
       10, "callcc");
  for (const char* src : {"fun x : 1 + 1 . if x then [ff] else [tt]",
                          "fun f : 1 -> 1 . let u = f () in f ()",
                          "fun u : 1 . new_exn e in catch e in throw(e)"}) {
    auto v = elaborate_value({}, desugar(parse_term(src))).term;
    same(denote_value(v, Mode::Exception).second, denote_value(v, Mode::Control).second, 10, src);
  }
}
