#include "ctlgames/machine.hpp"
#include "ctlgames/parser.hpp"
#include "doctest.h"
#include "test_programs.hpp"

using namespace ctlgames;

namespace {

TermPtr program(const std::string& src) { return elaborate_program(parse_term(src)); }

}  // namespace

TEST_CASE("decompose: grammar of evaluation contexts") {
  auto t = decompose(parse_term("[()]"));
  REQUIRE(t.terminal());
  CHECK(t.value->kind == TermKind::Unit);

  auto l = decompose(parse_term("let x = f v in [x]"));
  REQUIRE(l.context.size() == 1);
  CHECK(l.context[0].kind == Frame::Let);
  CHECK(l.context[0].name == "x");
  CHECK(l.redex->kind == TermKind::App);

  // catch(e) λx. let y = throw(e) () in N
  auto inner = mk_let("y", mk_app(mk_throw_const("e"), mk_unit()), mk_return(mk_var("y")));
  auto c = mk_app(mk_catch_const("e"), mk_lambda("x", one_type(), inner));
  auto d = decompose(c);
  REQUIRE(d.context.size() == 2);
  CHECK(d.context[0].kind == Frame::Catch);
  CHECK(d.context[0].name == "e");
  CHECK(d.context[1].kind == Frame::Let);
  CHECK(d.redex->a->kind == TermKind::Throw);
  CHECK(alpha_equal(plug(d.context, d.redex), c));
}

TEST_CASE("step: individual rules") {
  auto beta = step(initial_config(parse_term("(fun x : 1 . [x]) ()")));
  REQUIRE(beta.kind == StepResult::Stepped);
  CHECK(beta.rule == "beta");
  CHECK(alpha_equal(beta.next.comp, parse_term("[()]")));

  auto inner = mk_let("y", mk_app(mk_throw_const("e"), mk_unit()), mk_return(mk_var("y")));
  MachineConfig cfg;
  cfg.exns = {"e"};
  cfg.comp = mk_let("z", mk_app(mk_catch_const("e"), mk_lambda("x", one_type(), inner)), mk_return(mk_var("z")));
  auto caught = step(cfg);
  REQUIRE(caught.kind == StepResult::Stepped);
  CHECK(caught.rule == "catch");
  CHECK(alpha_equal(caught.next.comp, parse_term("let z = [()] in [z]")));

  MachineConfig mark;
  mark.comp = mk_let("z", mk_mark(mk_return(mk_unit()), one_type()), mk_return(mk_var("q")));
  auto m = step(mark);
  CHECK(m.rule == "mark");
  CHECK(alpha_equal(m.next.comp, parse_term("[()]")));

  MachineConfig dangling;
  dangling.exns = {"e"};
  dangling.comp = mk_app(mk_throw_const("e"), mk_unit());
  CHECK(step(dangling).kind == StepResult::Uncaught);
}

TEST_CASE("step: fresh names are deterministic") {
  auto p = program("new a : 1 := () in new b : 1 := () in new_exn e in new_exn h in [()]");
  std::vector<std::string> locs;
  run(p, 100, [&](const MachineConfig& c, std::int64_t) {
    if (c.locs.size() > locs.size()) locs.assign(c.locs.begin(), c.locs.end());
  });
  CHECK(locs == std::vector<std::string>{"loc_0", "loc_1"});
  MachineConfig last;
  run(p, 100, [&](const MachineConfig& c, std::int64_t) { last = c; });
  CHECK(last.exns == std::set<std::string>{"exn_0", "exn_1"});
}

TEST_CASE("run: outcomes") {
  auto o = run(parse_term("[()]"), 1);
  CHECK(o.kind == Outcome::Converged);
  CHECK(run(program("new_exn e in let z = throw(e) in void{1} z"), 100).kind == Outcome::UncaughtException);
  CHECK(converges(program("new_exn e in (catch e in throw(e)) ; [()]"), 100));
  CHECK(run(program("new a : 1 in deref(a)"), 100).kind == Outcome::Stuck);
  auto knot = program(test_programs("diverging")[0].source);
  CHECK(run(knot, 5000).kind == Outcome::OutOfFuel);
  CHECK_THROWS_AS(converges(knot, 5000), Inconclusive);
}

TEST_CASE("run: corpus expectations") {
  for (const auto& p : test_programs()) {
    auto o = run(program(p.source), 10000);
    CHECK_MESSAGE(o.kind != Outcome::OutOfFuel, p.name);
    CHECK_MESSAGE(converges(program(p.source), 10000) == p.expect_converge, p.name, " ", outcome_to_string(o));
  }
}

TEST_CASE("resumable exception demo, hand-checked milestones") {
  // Resuming with tt reaches the outer handler; the trace passes through a
  // callcc step, one catch of the local exception, and a mark step.
  std::map<std::string, int> rules;
  MachineConfig cfg = initial_config(program(test_programs()[22].source));
  REQUIRE(test_programs()[22].name == "23_resumable");
  for (int i = 0; i < 10000; ++i) {
    auto r = step(cfg);
    if (r.kind != StepResult::Stepped) break;
    ++rules[r.rule];
    cfg = r.next;
  }
  CHECK(decompose(cfg.comp).terminal());
  CHECK(rules["callcc"] == 1);
  CHECK(rules["mark"] == 1);
  CHECK(rules["catch"] == 2);
  CHECK(rules["new_exn"] == 3);
}

TEST_CASE("properties over every corpus run") {
  for (const auto& p : test_programs()) {
    auto prog = program(p.source);
    MachineConfig cfg = initial_config(prog);
    for (int i = 0; i < 10000; ++i) {
      auto d = decompose(cfg.comp);
      if (d.terminal()) break;
      CHECK_MESSAGE(alpha_equal(plug(d.context, d.redex), cfg.comp), p.name);
      auto r = step(cfg);
      if (r.kind != StepResult::Stepped) break;
      // Determinism: exactly one left-hand side matches.
      if (r.rule != "catch-normalize") CHECK_MESSAGE(count_matching_rules(cfg) == 1, p.name, " step ", i);
      // Freshness.
      for (const auto& a : cfg.locs) CHECK(r.next.locs.count(a));
      CHECK(r.next.locs.size() - cfg.locs.size() == (r.rule == "new" ? 1u : 0u));
      CHECK(r.next.exns.size() - cfg.exns.size() == (r.rule == "new_exn" ? 1u : 0u));
      // Type preservation under the store typing.
      auto st = r.next.store_typing();
      CHECK_MESSAGE(type_equal(typecheck_comp({}, r.next.comp, one_type(), &st), one_type()), p.name, " step ", i);
      for (const auto& [a, v] : r.next.store)
        CHECK(type_equal(typecheck_value({}, v, st.locations.at(a), &st), st.locations.at(a)));
      cfg = r.next;
    }
  }
}
