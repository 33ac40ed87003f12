#include "ctlgames/desugar.hpp"

namespace ctlgames {

namespace {

TermPtr thunk_type_lambda(TermPtr body) { return mk_lambda(fresh_name(), one_type(), std::move(body)); }

TermPtr core_assign(TermPtr ref, TermPtr v) {
  auto x = fresh_name(), y = fresh_name();
  return mk_match(std::move(ref), x, y, mk_app(mk_var(x), std::move(v)));
}

TermPtr core_deref(TermPtr ref) {
  auto x = fresh_name(), y = fresh_name();
  return mk_match(std::move(ref), x, y, mk_app(mk_var(y), mk_unit()));
}

TermPtr core_catch(TermPtr e, TermPtr body) {
  auto x = fresh_name(), y = fresh_name();
  return mk_match(std::move(e), x, y, mk_app(mk_var(x), thunk_type_lambda(std::move(body))));
}

TermPtr core_throw(TermPtr e) { return core_deref(std::move(e)); }

TermPtr core_seq(TermPtr m, TermPtr n) { return mk_let(fresh_name(), std::move(m), std::move(n)); }

TermPtr core_new(const std::string& x, TypePtr t, TermPtr body) {
  return mk_let(x, mk_app(mk_new(std::move(t)), mk_unit()), std::move(body));
}

TermPtr core_new_exn(const std::string& e, TermPtr body) {
  return mk_let(e, mk_app(mk_new_exn(), mk_unit()), std::move(body));
}

// fun f:(1->0). (catch e in f ()) ; deref(a)
TermPtr trap_method(const std::string& e, const std::string& a) {
  auto f = fresh_name();
  return mk_lambda(f, arrow_type(one_type(), zero_type()),
                   core_seq(core_catch(mk_var(e), mk_app(mk_var(f), mk_unit())), core_deref(mk_var(a))));
}

TermPtr valued_exn(const TypePtr& t) {
  auto a = fresh_name(), e = fresh_name(), x = fresh_name();
  auto raise = mk_lambda(x, t, core_seq(core_assign(mk_var(a), mk_var(x)), core_throw(mk_var(e))));
  auto body = core_new(a, t, core_new_exn(e, mk_return(mk_pair(trap_method(e, a), raise))));
  return thunk_type_lambda(body);
}

TermPtr resumable_exn(const TypePtr& t) {
  auto a = fresh_name(), e = fresh_name(), k = fresh_name(), z = fresh_name();
  auto cont = arrow_type(t, zero_type());
  // callcc{T,0}(fun k:(T->0). (a := k) ; let z = throw(e) in void{T} z)
  auto capture = mk_app(
      mk_callcc(t, zero_type()),
      mk_lambda(k, cont,
                core_seq(core_assign(mk_var(a), mk_var(k)),
                         mk_let(z, core_throw(mk_var(e)), mk_void(mk_var(z), t)))));
  auto resume = thunk_type_lambda(capture);
  return core_new(a, cont, core_new_exn(e, mk_return(mk_pair(trap_method(e, a), resume))));
}

}  // namespace

TermPtr desugar(const TermPtr& t) {
  if (!t) return t;
  auto d = [](const TermPtr& x) { return desugar(x); };
  switch (t->kind) {
    case TermKind::Var:
    case TermKind::Unit:
    case TermKind::New:
    case TermKind::NewExn:
    case TermKind::Callcc:
    case TermKind::Set:
    case TermKind::Get:
    case TermKind::Throw:
    case TermKind::Catch:
      return t;
    case TermKind::Pair:
      return mk_pair(d(t->a), d(t->b));
    case TermKind::Inj1:
      return mk_inj1(d(t->a), t->type);
    case TermKind::Inj2:
      return mk_inj2(d(t->a), t->type);
    case TermKind::Lambda:
      return mk_lambda(t->name, t->type, d(t->a));
    case TermKind::Return:
      return mk_return(d(t->a));
    case TermKind::Let:
      return mk_let(t->name, d(t->a), d(t->b));
    case TermKind::Void:
      return mk_void(d(t->a), t->type);
    case TermKind::App:
      return mk_app(d(t->a), d(t->b));
    case TermKind::Match:
      return mk_match(d(t->a), t->name, t->name2, d(t->b));
    case TermKind::Case:
      return mk_case(d(t->a), t->name, d(t->b), t->name2, d(t->c));
    case TermKind::Mark:
      return mk_mark(d(t->a), t->type);
    case TermKind::True:
      return mk_inj1(mk_unit(), bool_type());
    case TermKind::False:
      return mk_inj2(mk_unit(), bool_type());
    case TermKind::NewValuedExn:
      return valued_exn(t->type);
    case TermKind::Assign:
      return core_assign(d(t->a), d(t->b));
    case TermKind::Deref:
      return core_deref(d(t->a));
    case TermKind::CatchIn:
      return core_catch(d(t->a), d(t->b));
    case TermKind::ThrowExn:
      return core_throw(d(t->a));
    case TermKind::NewInit:
      return core_new(t->name, t->type, core_seq(core_assign(mk_var(t->name), d(t->a)), d(t->b)));
    case TermKind::NewUninit:
      return core_new(t->name, t->type, d(t->b));
    case TermKind::NewExnIn:
      return core_new_exn(t->name, d(t->b));
    case TermKind::Seq:
      return core_seq(d(t->a), d(t->b));
    case TermKind::Handle: {
      auto k = fresh_name();
      auto unit_cont = arrow_type(one_type(), one_type());
      auto body = core_seq(core_catch(d(t->a), d(t->b)), mk_app(mk_var(k), mk_unit()));
      auto capture = mk_app(mk_callcc(one_type(), one_type()), mk_lambda(k, unit_cont, body));
      return core_seq(capture, d(t->c));
    }
    case TermKind::If:
      return mk_case(d(t->a), fresh_name(), d(t->b), fresh_name(), d(t->c));
    case TermKind::ResumableExn:
      return resumable_exn(t->type);
  }
  return t;
}

}  // namespace ctlgames
