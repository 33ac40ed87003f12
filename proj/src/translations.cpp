#include "ctlgames/translations.hpp"

#include "ctlgames/desugar.hpp"
#include "ctlgames/machine.hpp"

namespace ctlgames {

const std::string& top_continuation_var() {
  static const std::string tau = "_tau";
  return tau;
}

const std::string& exception_exit_var() {
  static const std::string exc = "_exc";
  return exc;
}

std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Pass:
      return "pass";
    case Verdict::Fail:
      return "FAIL";
    case Verdict::Inconclusive:
      return "inconclusive";
  }
  return "?";
}

namespace {

TermPtr assign(TermPtr r, TermPtr v) { return desugar(mk_assign(std::move(r), std::move(v))); }
TermPtr deref(TermPtr r) { return desugar(mk_deref(std::move(r))); }
TermPtr seq(TermPtr m, TermPtr n) { return mk_let(fresh_name(), std::move(m), std::move(n)); }
TypePtr lifted(const TypePtr& t) { return sum_type(t, one_type()); }
TermPtr tt() { return mk_inj1(mk_unit(), bool_type()); }
TermPtr ff() { return mk_inj2(mk_unit(), bool_type()); }

[[noreturn]] void reject(const std::string& what, const TermPtr& t) {
  throw TranslationError(what + ": " + print_term(t));
}

}  // namespace

// ---------------------------------------------------------------------------
// Exception-passing translation
// ---------------------------------------------------------------------------

TypePtr exn_translate_type(const TypePtr& t) {
  switch (t->kind) {
    case TypeKind::Zero:
    case TypeKind::One:
      return t;
    case TypeKind::Prod:
      return prod_type(exn_translate_type(t->left), exn_translate_type(t->right));
    case TypeKind::Sum:
      return sum_type(exn_translate_type(t->left), exn_translate_type(t->right));
    case TypeKind::Arrow:
      return arrow_type(exn_translate_type(t->left), lifted(exn_translate_type(t->right)));
  }
  return t;
}

namespace {

class ExnTranslator {
 public:
  TermPtr value(const TypingContext& ctx, const TermPtr& v) {
    switch (v->kind) {
      case TermKind::Var:
      case TermKind::Unit:
        return v;
      case TermKind::Pair:
        return mk_pair(value(ctx, v->a), value(ctx, v->b));
      case TermKind::Inj1:
        return mk_inj1(value(ctx, v->a), E(v->type));
      case TermKind::Inj2:
        return mk_inj2(value(ctx, v->a), E(v->type));
      case TermKind::Lambda:
        return mk_lambda(v->name, E(v->type), comp(ctx.extended(v->name, v->type), v->a));
      case TermKind::Callcc:
        return callcc(v->type, v->type2);
      case TermKind::New:
        return new_ref(v->type);
      case TermKind::NewExn:
        return new_exn();
      default:
        reject("outside L_RCE", v);
    }
  }

  TermPtr comp(const TypingContext& ctx, const TermPtr& m) {
    switch (m->kind) {
      case TermKind::Return: {
        auto t = typecheck_value(ctx, m->a);
        return mk_return(mk_inj1(value(ctx, m->a), lifted(E(t))));
      }
      case TermKind::Let: {
        auto s = typecheck_comp(ctx, m->a);
        auto t = typecheck_comp(ctx.extended(m->name, s), m->b);
        auto y = fresh_name(), z = fresh_name();
        return mk_let(y, comp(ctx, m->a),
                      mk_case(mk_var(y), m->name, comp(ctx.extended(m->name, s), m->b), z,
                              mk_return(mk_inj2(mk_var(z), lifted(E(t))))));
      }
      case TermKind::Void:
        return mk_void(value(ctx, m->a), lifted(E(m->type)));
      case TermKind::App:
        return mk_app(value(ctx, m->a), value(ctx, m->b));
      case TermKind::Match: {
        auto pt = typecheck_value(ctx, m->a);
        return mk_match(value(ctx, m->a), m->name, m->name2,
                        comp(ctx.extended(m->name, pt->left).extended(m->name2, pt->right), m->b));
      }
      case TermKind::Case: {
        auto st = typecheck_value(ctx, m->a);
        return mk_case(value(ctx, m->a), m->name, comp(ctx.extended(m->name, st->left), m->b), m->name2,
                       comp(ctx.extended(m->name2, st->right), m->c));
      }
      default:
        reject("outside L_RCE", m);
    }
  }

 private:
  static TypePtr E(const TypePtr& t) { return exn_translate_type(t); }

  // λv. callcc(λk. v (λx. k in1(x)))
  static TermPtr callcc(const TypePtr& t, const TypePtr& s) {
    auto te = E(t), se = E(s);
    auto v = fresh_name(), k = fresh_name(), x = fresh_name();
    auto cont = mk_lambda(x, te, mk_app(mk_var(k), mk_inj1(mk_var(x), lifted(te))));
    auto body = mk_app(mk_var(v), cont);
    auto arg_type = arrow_type(arrow_type(te, lifted(se)), lifted(te));
    return mk_lambda(v, arg_type,
                     mk_app(mk_callcc(lifted(te), lifted(se)),
                            mk_lambda(k, arrow_type(lifted(te), lifted(se)), body)));
  }

  // The reference methods are wrapped so that they return in1 results.
  static TermPtr new_ref(const TypePtr& t) {
    auto te = E(t);
    auto a = fresh_name(), x = fresh_name(), y = fresh_name(), r = fresh_name(), w = fresh_name();
    auto setter = mk_lambda(x, te, mk_let(r, assign(mk_var(a), mk_var(x)), mk_return(mk_inj1(mk_var(r), bool_type()))));
    auto getter = mk_lambda(y, one_type(), mk_let(w, deref(mk_var(a)), mk_return(mk_inj1(mk_var(w), lifted(te)))));
    auto ref_type = exn_translate_type(var_type(t));
    return mk_lambda(fresh_name(), one_type(),
                     mk_let(a, mk_app(mk_new(te), mk_unit()),
                            mk_return(mk_inj1(mk_pair(setter, getter), lifted(ref_type)))));
  }

  // λ(). new x := ff. [in1(<handle(x), raise(x)>)]
  static TermPtr new_exn() {
    auto x = fresh_name();
    auto raise = mk_lambda(fresh_name(), one_type(),
                           seq(assign(mk_var(x), tt()), mk_return(mk_inj2(mk_unit(), lifted(zero_type())))));
    auto f = fresh_name(), b = fresh_name();
    auto thunk_type = arrow_type(one_type(), lifted(zero_type()));
    auto test = mk_let(b, deref(mk_var(x)),
                       mk_case(mk_var(b), fresh_name(),
                               seq(assign(mk_var(x), ff()), mk_return(mk_inj1(mk_unit(), bool_type()))),
                               fresh_name(), mk_return(mk_inj2(mk_unit(), bool_type()))));
    auto handle = mk_lambda(f, thunk_type, seq(mk_app(mk_var(f), mk_unit()), test));
    auto exn_e = exn_translate_type(exn_type());
    return mk_lambda(fresh_name(), one_type(),
                     mk_let(x, mk_app(mk_new(bool_type()), mk_unit()),
                            seq(assign(mk_var(x), ff()),
                                mk_return(mk_inj1(mk_pair(handle, raise), lifted(exn_e))))));
  }
};

}  // namespace

TranslationOutput exn_translate(const TermPtr& t, const TypingContext& ctx) {
  ExnTranslator tr;
  TranslationOutput out;
  TypingContext ectx;
  for (const auto& [x, ty] : ctx.vars) ectx.vars.emplace_back(x, exn_translate_type(ty));
  if (is_value(t)) {
    out.term = tr.value(ctx, t);
    out.type = typecheck_value(ectx, out.term);
  } else {
    out.term = tr.comp(ctx, t);
    out.type = typecheck_comp(ectx, out.term);
  }
  out.fragment = fragment_of(out.term);
  return out;
}

// ---------------------------------------------------------------------------
// CPS translation
// ---------------------------------------------------------------------------

TypePtr cps_translate_type(const TypePtr& t) {
  switch (t->kind) {
    case TypeKind::Zero:
    case TypeKind::One:
      return t;
    case TypeKind::Prod:
      return prod_type(cps_translate_type(t->left), cps_translate_type(t->right));
    case TypeKind::Sum:
      return sum_type(cps_translate_type(t->left), cps_translate_type(t->right));
    case TypeKind::Arrow:
      return arrow_type(prod_type(cps_translate_type(t->left), arrow_type(cps_translate_type(t->right), zero_type())),
                        zero_type());
  }
  return t;
}

namespace {

TypePtr cont_type(const TypePtr& t) { return arrow_type(cps_translate_type(t), zero_type()); }

class CpsTranslator {
 public:
  TermPtr value(const TypingContext& ctx, const TermPtr& v) {
    switch (v->kind) {
      case TermKind::Var:
      case TermKind::Unit:
        return v;
      case TermKind::Pair:
        return mk_pair(value(ctx, v->a), value(ctx, v->b));
      case TermKind::Inj1:
        return mk_inj1(value(ctx, v->a), C(v->type));
      case TermKind::Inj2:
        return mk_inj2(value(ctx, v->a), C(v->type));
      case TermKind::Lambda: {
        // λz. match z as (x,κ). M^C κ
        auto inner = ctx.extended(v->name, v->type);
        auto t = typecheck_comp(inner, v->a);
        auto z = fresh_name(), k = fresh_name();
        return mk_lambda(z, prod_type(C(v->type), cont_type(t)),
                         mk_match(mk_var(z), v->name, k, mk_app(comp(inner, v->a), mk_var(k))));
      }
      case TermKind::New:
        return new_ref(v->type);
      case TermKind::Callcc:
        return callcc(v->type, v->type2);
      default:
        reject("outside L_RC", v);
    }
  }

  // Computations of type T become values of type (T^C -> 0) -> 0.
  TermPtr comp(const TypingContext& ctx, const TermPtr& m) {
    auto t = typecheck_comp(ctx, m);
    auto k = fresh_name();
    auto lam = [&](TermPtr body) { return mk_lambda(k, cont_type(t), std::move(body)); };
    switch (m->kind) {
      case TermKind::Return:
        return lam(mk_app(mk_var(k), value(ctx, m->a)));
      case TermKind::Let: {
        auto s = typecheck_comp(ctx, m->a);
        auto inner = ctx.extended(m->name, s);
        auto n = fresh_name();
        auto then = mk_lambda(n, C(s), mk_let(m->name, mk_return(mk_var(n)), mk_app(comp(inner, m->b), mk_var(k))));
        return lam(mk_app(comp(ctx, m->a), then));
      }
      case TermKind::Void:
        return lam(mk_void(value(ctx, m->a), zero_type()));
      case TermKind::App:
        return lam(mk_app(value(ctx, m->a), mk_pair(value(ctx, m->b), mk_var(k))));
      case TermKind::Match: {
        auto pt = typecheck_value(ctx, m->a);
        auto inner = ctx.extended(m->name, pt->left).extended(m->name2, pt->right);
        return lam(mk_match(value(ctx, m->a), m->name, m->name2, mk_app(comp(inner, m->b), mk_var(k))));
      }
      case TermKind::Case: {
        auto st = typecheck_value(ctx, m->a);
        auto l = ctx.extended(m->name, st->left), r = ctx.extended(m->name2, st->right);
        return lam(mk_case(value(ctx, m->a), m->name, mk_app(comp(l, m->b), mk_var(k)), m->name2,
                           mk_app(comp(r, m->c), mk_var(k))));
      }
      case TermKind::Mark:
        return lam(mk_app(comp(ctx, m->a), mk_var(top_continuation_var())));
      default:
        reject("outside L_RC", m);
    }
  }

 private:
  static TypePtr C(const TypePtr& t) { return cps_translate_type(t); }

  // λz. match z as (_,κ). new a in κ <λp. match p as (v,k). (a:=v; k ()), λq. match q as (_,k). k deref(a)>
  static TermPtr new_ref(const TypePtr& t) {
    auto tc = C(t);
    auto z = fresh_name(), k = fresh_name(), a = fresh_name();
    auto p = fresh_name(), v = fresh_name(), kp = fresh_name(), u = fresh_name();
    auto q = fresh_name(), kq = fresh_name(), w = fresh_name();
    auto setter = mk_lambda(p, prod_type(tc, cont_type(one_type())),
                            mk_match(mk_var(p), v, kp,
                                     mk_let(u, assign(mk_var(a), mk_var(v)), mk_app(mk_var(kp), mk_var(u)))));
    auto getter = mk_lambda(q, prod_type(one_type(), arrow_type(tc, zero_type())),
                            mk_match(mk_var(q), fresh_name(), kq,
                                     mk_let(w, deref(mk_var(a)), mk_app(mk_var(kq), mk_var(w)))));
    auto ref_c = C(var_type(t));
    return mk_lambda(z, prod_type(one_type(), arrow_type(ref_c, zero_type())),
                     mk_match(mk_var(z), fresh_name(), k,
                              mk_let(a, mk_app(mk_new(tc), mk_unit()), mk_app(mk_var(k), mk_pair(setter, getter)))));
  }

  // λz. match z as (f,κ). f <λp. match p as (x,_). κ x, κ>
  static TermPtr callcc(const TypePtr& t, const TypePtr& s) {
    auto tc = C(t), sc = C(s);
    auto z = fresh_name(), f = fresh_name(), k = fresh_name(), p = fresh_name(), x = fresh_name();
    auto reified = mk_lambda(p, prod_type(tc, arrow_type(sc, zero_type())),
                             mk_match(mk_var(p), x, fresh_name(), mk_app(mk_var(k), mk_var(x))));
    auto arg_type = C(arrow_type(arrow_type(t, s), t));
    return mk_lambda(z, prod_type(arg_type, arrow_type(tc, zero_type())),
                     mk_match(mk_var(z), f, k, mk_app(mk_var(f), mk_pair(reified, mk_var(k)))));
  }
};

}  // namespace

TranslationOutput cps_translate(const TermPtr& t, const TypingContext& ctx) {
  CpsTranslator tr;
  TranslationOutput out;
  TypingContext cctx;
  for (const auto& [x, ty] : ctx.vars) cctx.vars.emplace_back(x, cps_translate_type(ty));
  cctx.vars.emplace_back(top_continuation_var(), arrow_type(one_type(), zero_type()));
  if (is_value(t)) {
    out.term = tr.value(ctx, t);
    out.type = typecheck_value(cctx, out.term);
  } else {
    out.term = tr.comp(ctx, t);
    out.type = typecheck_value(cctx, out.term);
  }
  out.fragment = fragment_of(out.term);
  return out;
}

TermPtr cps_program_from_exn(const TermPtr& exn_program) {
  auto c = cps_translate(exn_program).term;
  auto y = fresh_name(), z1 = fresh_name(), z2 = fresh_name();
  auto k0 = mk_lambda(y, bool_type(),
                      mk_case(mk_var(y), z1, mk_app(mk_var(top_continuation_var()), mk_var(z1)), z2,
                              mk_app(mk_var(exception_exit_var()), mk_var(z2))));
  return mk_app(c, k0);
}

std::optional<bool> reaches_top_continuation(const TermPtr& program, std::int64_t fuel) {
  MachineConfig last;
  auto o = run(program, fuel, [&](const MachineConfig& c, std::int64_t) { last = c; });
  if (o.kind == Outcome::OutOfFuel) return std::nullopt;
  if (o.kind != Outcome::Stuck) return false;
  auto d = decompose(last.comp);
  return d.redex && d.redex->kind == TermKind::App && d.redex->a->kind == TermKind::Var &&
         d.redex->a->name == top_continuation_var() && d.redex->b->kind == TermKind::Unit;
}

SoundnessReport check_translation_soundness(const TermPtr& program, std::int64_t fuel) {
  SoundnessReport rep;
  try {
    rep.direct = converges(program, fuel);
  } catch (const Inconclusive&) {
  }
  auto me = exn_translate(program).term;
  auto oe = run(me, fuel);
  if (oe.kind != Outcome::OutOfFuel) {
    rep.exn = oe.kind == Outcome::Converged && oe.value->kind == TermKind::Inj1 && oe.value->a->kind == TermKind::Unit;
  }
  rep.cps = reaches_top_continuation(cps_program_from_exn(me), fuel);
  if (!rep.direct || !rep.exn || !rep.cps) {
    rep.verdict = Verdict::Inconclusive;
  } else {
    rep.verdict = (*rep.direct == *rep.exn && *rep.exn == *rep.cps) ? Verdict::Pass : Verdict::Fail;
  }
  return rep;
}

}  // namespace ctlgames
