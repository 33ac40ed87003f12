#include <chrono>

#include "ctlgames/machine.hpp"
#include "ctlgames/parser.hpp"
#include "ctlgames/translations.hpp"
#include "doctest.h"
#include "test_programs.hpp"

using namespace ctlgames;

namespace {

TermPtr program(const std::string& src) { return elaborate_program(parse_term(src)); }
TypePtr T(const char* s) { return parse_type(s); }

}  // namespace

TEST_CASE("exception-passing translation of types") {
  CHECK(type_equal(exn_translate_type(one_type()), one_type()));
  CHECK(type_equal(exn_translate_type(T("1 -> 0")), T("1 -> 0 + 1")));
  CHECK(type_equal(exn_translate_type(exn_type()), T("((1 -> 0 + 1) -> 1 + 1) * (1 -> 0 + 1)")));
  CHECK(type_equal(exn_translate_type(T("(1 -> 1) -> 0")), T("(1 -> 1 + 1) -> 0 + 1")));
}

TEST_CASE("CPS translation of types") {
  CHECK(type_equal(cps_translate_type(one_type()), one_type()));
  CHECK(type_equal(cps_translate_type(T("1 -> 1")), T("(1 * (1 -> 0)) -> 0")));
  CHECK(type_equal(cps_translate_type(T("1 + 0 -> 1 * 1")), T("((1 + 0) * (1 * 1 -> 0)) -> 0")));
}

TEST_CASE("exception-passing clauses") {
  auto ret = exn_translate(parse_term("[()]")).term;
  CHECK(alpha_equal(ret, parse_term("[in1{1 + 1}(())]")));

  auto cc = exn_translate(parse_term("callcc{1, 0}")).term;
  // λv. callcc(λk. v (λx. k in1(x)))
  REQUIRE(cc->kind == TermKind::Lambda);
  REQUIRE(cc->a->kind == TermKind::App);
  CHECK(cc->a->a->kind == TermKind::Callcc);
  const auto& inner = cc->a->b->a;
  REQUIRE(inner->kind == TermKind::App);
  CHECK(inner->a->name == cc->name);
  CHECK(inner->b->a->kind == TermKind::App);
  CHECK(inner->b->a->b->kind == TermKind::Inj1);

  // An exception raised by M propagates through let.
  TypingContext ctx{{{"m", T("1 -> 1")}}};
  auto let = exn_translate(parse_term("let x = m () in [x]"), ctx).term;
  auto closed = mk_app(mk_lambda("m", exn_translate_type(T("1 -> 1")), let),
                       parse_term("fun u : 1 . [in2{1 + 1}(())]"));
  auto o = run(closed, 100);
  REQUIRE(o.kind == Outcome::Converged);
  CHECK(o.value->kind == TermKind::Inj2);
}

TEST_CASE("CPS clauses") {
  auto ret = cps_translate(parse_term("[()]")).term;
  REQUIRE(ret->kind == TermKind::Lambda);
  CHECK(alpha_equal(ret->a, mk_app(mk_var(ret->name), mk_unit())));
  CHECK(alpha_equal(cps_translate(mk_var("x"), {{{"x", one_type()}}}).term, mk_var("x")));
  auto nw = cps_translate(parse_term("new{1}"));
  CHECK(type_equal(nw.type, cps_translate_type(T("1 -> var[1]"))));
  CHECK(nw.fragment == Fragment::LR);
}

TEST_CASE("typing commutes and fragments are pure") {
  for (const auto& p : test_programs()) {
    auto m = program(p.source);
    auto e = exn_translate(m);
    CHECK_MESSAGE(type_equal(e.type, T("1 + 1")), p.name);
    CHECK_MESSAGE(e.fragment != Fragment::LRCE, p.name);
    CHECK_FALSE(contains_kind(e.term, TermKind::NewExn));
    auto c = cps_translate(e.term);
    CHECK_MESSAGE(type_equal(c.type, T("((1 + 1) -> 0) -> 0")), p.name);
    CHECK_MESSAGE((c.fragment == Fragment::LR || c.fragment == Fragment::L), p.name);
    CHECK_FALSE(contains_kind(c.term, TermKind::Callcc));
    CHECK_FALSE(contains_kind(c.term, TermKind::Mark));
    if (fragment_of(m) != Fragment::LRCE) {
      auto direct = cps_translate(m);
      CHECK_MESSAGE(type_equal(direct.type, T("(1 -> 0) -> 0")), p.name);
    }
  }
}

TEST_CASE("soundness report: worked examples") {
  auto unit = check_translation_soundness(program("[()]"), 10000);
  CHECK(unit.verdict == Verdict::Pass);
  CHECK((*unit.direct && *unit.exn && *unit.cps));

  auto uncaught = check_translation_soundness(program("new_exn e in let z = throw(e) in void{1} z"), 10000);
  CHECK(uncaught.verdict == Verdict::Pass);
  CHECK_FALSE(*uncaught.direct);
  CHECK_FALSE(*uncaught.exn);
  CHECK_FALSE(*uncaught.cps);

  auto handled = check_translation_soundness(program("new_exn e in handle e in throw(e) with [()]"), 10000);
  CHECK(handled.verdict == Verdict::Pass);
  CHECK(*handled.direct);

  auto knot = check_translation_soundness(program(test_programs("diverging")[0].source), 2000);
  CHECK(knot.verdict == Verdict::Inconclusive);
}

TEST_CASE("soundness over the corpus") {
  auto start = std::chrono::steady_clock::now();
  for (const auto& p : test_programs()) {
    auto rep = check_translation_soundness(program(p.source), 10000);
    CHECK_MESSAGE(rep.verdict == Verdict::Pass, p.name);
    CHECK_MESSAGE(rep.direct == std::optional<bool>(p.expect_converge), p.name);
  }
  auto secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  CHECK(secs < 10.0);
}

TEST_CASE("CPS alone on continuation programs") {
  for (const auto& p : test_programs()) {
    auto m = program(p.source);
    if (fragment_of(m) == Fragment::LRCE) continue;
    auto c = cps_translate(m).term;
    auto applied = mk_app(c, mk_var(top_continuation_var()));
    CHECK_MESSAGE(reaches_top_continuation(applied, 10000) == std::optional<bool>(converges(m, 10000)), p.name);
  }
}
