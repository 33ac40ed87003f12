#include <random>

#include "ctlgames/desugar.hpp"
#include "ctlgames/parser.hpp"
#include "ctlgames/typecheck.hpp"
#include "doctest.h"
#include "test_programs.hpp"

using namespace ctlgames;

namespace {

TypePtr T(const char* s) { return parse_type(s); }

}  // namespace

TEST_CASE("types: abbreviations expand exactly") {
  CHECK(type_equal(var_type(one_type()), T("(1 -> 1) * (1 -> 1)")));
  CHECK(type_equal(exn_type(), T("((1 -> 0) -> 1) * (1 -> 0)")));
  CHECK(type_equal(T("var[1 + 1]"), var_type(bool_type())));
  CHECK(type_equal(T("exn"), exn_type()));
  CHECK(type_equal(T("1 -> 1 -> 0"), arrow_type(one_type(), arrow_type(one_type(), zero_type()))));
  CHECK(type_equal(T("1 * 1 + 0"), sum_type(prod_type(one_type(), one_type()), zero_type())));
  CHECK(type_size(T("1 -> 0")) == 3);
}

TEST_CASE("parse: grammar images") {
  auto t = parse_term("[()]");
  REQUIRE(t->kind == TermKind::Return);
  CHECK(t->a->kind == TermKind::Unit);

  auto l = parse_term("let x = [()] in [x]");
  REQUIRE(l->kind == TermKind::Let);
  CHECK(l->name == "x");
  CHECK(l->a->kind == TermKind::Return);
  CHECK(l->b->a->kind == TermKind::Var);

  auto c = desugar(parse_term("catch e in N u"));
  REQUIRE(c->kind == TermKind::Match);
  CHECK(c->a->kind == TermKind::Var);
  CHECK(c->a->name == "e");
  REQUIRE(c->b->kind == TermKind::App);
  CHECK(c->b->a->name == c->name);
  CHECK(c->b->b->kind == TermKind::Lambda);
  CHECK(c->b->b->a->kind == TermKind::App);
}

TEST_CASE("parse: errors carry positions and reserved constants are rejected") {
  try {
    parse_term("let x = [()]\n in");
    FAIL("expected a syntax error");
  } catch (const SyntaxError& e) {
    CHECK(e.line() == 2);
  }
  CHECK_THROWS_AS(parse_term("%set(a) ()"), SyntaxError);
  CHECK_THROWS_AS(parse_term("# ([()])"), SyntaxError);
  CHECK_THROWS_AS(parse_term("f x y"), SyntaxError);
}

TEST_CASE("desugar: derived forms") {
  auto a = desugar(parse_term("a := v"));
  REQUIRE(a->kind == TermKind::Match);
  CHECK(a->b->kind == TermKind::App);
  CHECK(a->b->a->name == a->name);
  CHECK(a->b->b->name == "v");

  auto s = desugar(parse_term("f () ; [()]"));
  REQUIRE(s->kind == TermKind::Let);
  CHECK(free_vars(s->b).count(s->name) == 0);

  auto h = desugar(parse_term("handle e in throw(e) with [()]"));
  REQUIRE(h->kind == TermKind::Let);
  REQUIRE(h->a->kind == TermKind::App);
  CHECK(h->a->a->kind == TermKind::Callcc);
  CHECK(h->a->b->kind == TermKind::Lambda);
  CHECK(h->b->kind == TermKind::Return);

  for (const auto& p : test_programs()) {
    auto d = desugar(parse_term(p.source));
    for (auto k : {TermKind::True, TermKind::Assign, TermKind::Deref, TermKind::CatchIn, TermKind::ThrowExn,
                   TermKind::NewInit, TermKind::NewUninit, TermKind::NewExnIn, TermKind::Seq, TermKind::Handle,
                   TermKind::If, TermKind::ResumableExn, TermKind::NewValuedExn})
      CHECK_MESSAGE(!contains_kind(d, k), p.name);
  }
}

TEST_CASE("typecheck: table examples") {
  CHECK(type_equal(typecheck_value({}, mk_unit()), one_type()));
  CHECK(type_equal(typecheck_value({}, parse_term("fun x : 1 . [x]")), T("1 -> 1")));
  CHECK(type_equal(typecheck_value({}, mk_new_exn()), T("1 -> ((1 -> 0) -> 1) * (1 -> 0)")));
  CHECK(type_equal(typecheck_comp({}, parse_term("[()]")), one_type()));
  CHECK(type_equal(typecheck_comp({}, parse_term("let x = [()] in [x]")), one_type()));
  TypingContext e{{{"e", exn_type()}}};
  CHECK(type_equal(typecheck_comp(e, parse_term("throw(e)")), zero_type()));
  CHECK(type_equal(typecheck_comp(e, desugar(parse_term("throw(e)"))), zero_type()));
  CHECK(type_equal(typecheck_comp(e, parse_term("catch e in throw(e)")), one_type()));
  CHECK(type_equal(typecheck_value({}, parse_term("callcc{1, 0}")), T("((1 -> 0) -> 1) -> 1")));
  CHECK(type_equal(typecheck_value({}, parse_term("new{1 + 1}")), T("1 -> var[1 + 1]")));
}

TEST_CASE("typecheck: errors") {
  CHECK_THROWS_AS(typecheck_comp({}, parse_term("[x]")), TypeError);
  CHECK_THROWS_AS(typecheck_comp({}, parse_term("[()] ; () ()")), TypeError);
  CHECK_THROWS_AS(typecheck_value({}, parse_term("callcc")), TypeError);
  CHECK_THROWS_AS(typecheck_value({}, parse_term("in1(())")), TypeError);
  CHECK_THROWS_AS(typecheck_comp({}, parse_term("void{1} ()")), TypeError);
  CHECK_THROWS_AS(elaborate_program(parse_term("[tt]")), TypeError);
}

TEST_CASE("typecheck: instances inferred from the application site") {
  auto m = parse_term("callcc (fun k : 1 -> 0 . [()])");
  auto e = elaborate_comp({}, m);
  CHECK(type_equal(e.type, one_type()));
  CHECK(e.term->a->type != nullptr);
  auto inj = elaborate_comp({}, parse_term("let f = [fun x : 1 + 1 . [x]] in f in1(())"));
  CHECK(type_equal(inj.type, bool_type()));
}

TEST_CASE("property: printing reparses to an alpha-equivalent term") {
  for (const auto& p : test_programs()) {
    auto surface = parse_term(p.source);
    CHECK_MESSAGE(alpha_equal(parse_term(print_term(surface)), surface), p.name);
    auto core = elaborate_program(surface);
    CHECK_MESSAGE(alpha_equal(parse_term(print_term(core)), core), p.name);
    CHECK_MESSAGE(print_term(parse_term(print_term(core))) == print_term(core), p.name);
  }
}

TEST_CASE("property: desugaring preserves typing") {
  for (const auto& p : test_programs()) {
    auto surface = parse_term(p.source);
    auto direct = typecheck_comp({}, surface, one_type());
    auto expanded = typecheck_comp({}, desugar(surface), one_type());
    CHECK_MESSAGE(type_equal(direct, expanded), p.name);
    CHECK_MESSAGE(type_equal(direct, one_type()), p.name);
  }
}

TEST_CASE("property: weakening") {
  for (const auto& p : test_programs()) {
    auto core = elaborate_program(parse_term(p.source));
    TypingContext ctx{{{"_unused_weak", T("1 + 0 -> exn")}}};
    CHECK_MESSAGE(type_equal(typecheck_comp(ctx, core), one_type()), p.name);
  }
}

TEST_CASE("property: alpha equivalence and substitution") {
  auto a = parse_term("fun x : 1 . let y = [x] in [y]");
  auto b = parse_term("fun z : 1 . let w = [z] in [w]");
  auto c = parse_term("fun z : 1 . let w = [z] in [z]");
  CHECK(alpha_equal(a, b));
  CHECK_FALSE(alpha_equal(a, c));
  auto body = parse_term("fun y : 1 . [x]");
  auto s = substitute(body, "x", mk_var("y"));
  CHECK(free_vars(s).count("y") == 1);
  CHECK(s->name != "y");
  auto shadow = parse_term("fun x : 1 . [x]");
  CHECK(alpha_equal(substitute(shadow, "x", mk_unit()), shadow));
}

TEST_CASE("fragments") {
  CHECK(fragment_of(parse_term("[()]")) == Fragment::L);
  CHECK(fragment_of(parse_term("new x : 1 := () in [()]")) == Fragment::LR);
  CHECK(fragment_of(parse_term("callcc{1,0} (fun k : 1 -> 0 . [()])")) == Fragment::LRC);
  CHECK(fragment_of(parse_term("new_exn e in [()]")) == Fragment::LRCE);
}

TEST_CASE("elaboration yields core terms") {
  for (const auto& p : test_programs()) {
    auto core = elaborate_program(parse_term(p.source));
    CHECK_MESSAGE(alpha_equal(desugar(core), core), p.name);
    CHECK_MESSAGE(print_term(desugar(core)) == print_term(core), p.name);
  }
}
