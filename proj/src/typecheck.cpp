#include "ctlgames/typecheck.hpp"

#include "ctlgames/desugar.hpp"

namespace ctlgames {

TypePtr TypingContext::lookup(const std::string& x) const {
  for (auto it = vars.rbegin(); it != vars.rend(); ++it) {
    if (it->first == x) return it->second;
  }
  return nullptr;
}

namespace {

[[noreturn]] void fail(const std::string& rule, const std::string& detail, const TermPtr& t) {
  throw TypeError(rule + ": " + detail + " in `" + print_term(t) + "`");
}

void require_equal(const TypePtr& want, const TypePtr& got, const std::string& rule, const TermPtr& t) {
  if (!type_equal(want, got)) {
    fail(rule, "expected " + type_to_string(want) + " but found " + type_to_string(got), t);
  }
}

TypePtr require_kind(const TypePtr& ty, TypeKind k, const std::string& rule, const TermPtr& t) {
  if (ty->kind != k) fail(rule, "unexpected type " + type_to_string(ty), t);
  return ty;
}

class Checker {
 public:
  explicit Checker(const StoreTyping* store) : store_(store) {}

  Elaborated value(const TypingContext& ctx, const TermPtr& v, const TypePtr& hint) {
    switch (v->kind) {
      case TermKind::Var: {
        auto t = ctx.lookup(v->name);
        if (!t) fail("variable", "unbound variable " + v->name, v);
        return {t, v};
      }
      case TermKind::Unit:
        return {one_type(), v};
      case TermKind::Pair: {
        TypePtr ha, hb;
        if (hint && hint->kind == TypeKind::Prod) {
          ha = hint->left;
          hb = hint->right;
        }
        auto a = value(ctx, v->a, ha);
        auto b = value(ctx, v->b, hb);
        return {prod_type(a.type, b.type), mk_pair(a.term, b.term)};
      }
      case TermKind::Inj1:
      case TermKind::Inj2: {
        bool first = v->kind == TermKind::Inj1;
        TypePtr sum = v->type ? v->type : (hint && hint->kind == TypeKind::Sum ? hint : nullptr);
        if (!sum) fail("injection", "cannot determine the sum type; annotate in1{S+T}(..)", v);
        require_kind(sum, TypeKind::Sum, "injection", v);
        auto inner = value(ctx, v->a, first ? sum->left : sum->right);
        require_equal(first ? sum->left : sum->right, inner.type, "injection", v);
        return {sum, first ? mk_inj1(inner.term, sum) : mk_inj2(inner.term, sum)};
      }
      case TermKind::Lambda: {
        if (!v->type) fail("abstraction", "missing domain annotation", v);
        TypePtr body_hint = hint && hint->kind == TypeKind::Arrow ? hint->right : nullptr;
        auto body = comp(ctx.extended(v->name, v->type), v->a, body_hint);
        return {arrow_type(v->type, body.type), mk_lambda(v->name, v->type, body.term)};
      }
      case TermKind::New: {
        TypePtr content = v->type;
        if (!content && hint && hint->kind == TypeKind::Arrow) {
          auto r = hint->right;
          if (r->kind == TypeKind::Prod && r->right->kind == TypeKind::Arrow) content = r->right->right;
        }
        if (!content) fail("new", "cannot determine the content type; annotate new{T}", v);
        return {arrow_type(one_type(), var_type(content)), mk_new(content)};
      }
      case TermKind::NewExn:
        return {arrow_type(one_type(), exn_type()), v};
      case TermKind::Callcc: {
        TypePtr t = v->type, s = v->type2;
        if (!t && hint && hint->kind == TypeKind::Arrow) {
          auto arg = hint->left;
          if (arg->kind == TypeKind::Arrow && arg->left->kind == TypeKind::Arrow) {
            t = arg->left->left;
            s = arg->left->right;
          }
        }
        if (!t || !s) fail("callcc", "cannot determine the instance; annotate callcc{T,S}", v);
        return {callcc_type(t, s), mk_callcc(t, s)};
      }
      case TermKind::Set:
      case TermKind::Get: {
        auto loc = location_type(v);
        if (v->kind == TermKind::Set) return {arrow_type(loc, one_type()), v};
        return {arrow_type(one_type(), loc), v};
      }
      case TermKind::Throw:
      case TermKind::Catch: {
        if (!store_ || !store_->exceptions.count(v->name)) fail("exception", "unknown exception name", v);
        auto thunk = arrow_type(one_type(), zero_type());
        if (v->kind == TermKind::Throw) return {thunk, v};
        return {arrow_type(thunk, one_type()), v};
      }
      case TermKind::True:
      case TermKind::False:
        return {bool_type(), desugar(v)};
      case TermKind::NewValuedExn:
        return {arrow_type(one_type(), valued_exn_type(v->type)), desugar(v)};
      default:
        fail("value", "expected a value", v);
    }
  }

  Elaborated comp(const TypingContext& ctx, const TermPtr& m, const TypePtr& hint) {
    switch (m->kind) {
      case TermKind::Return: {
        auto v = value(ctx, m->a, hint);
        return {v.type, mk_return(v.term)};
      }
      case TermKind::Let: {
        auto bound = comp(ctx, m->a, nullptr);
        auto body = comp(ctx.extended(m->name, bound.type), m->b, hint);
        return {body.type, mk_let(m->name, bound.term, body.term)};
      }
      case TermKind::Void: {
        auto v = value(ctx, m->a, zero_type());
        require_equal(zero_type(), v.type, "void", m);
        TypePtr result = m->type ? m->type : hint;
        if (!result) fail("void", "cannot determine the result type; annotate void{T}", m);
        return {result, mk_void(v.term, result)};
      }
      case TermKind::App: {
        // Arguments of callcc determine its instance.
        if (m->a->kind == TermKind::Callcc && !m->a->type) {
          auto arg = value(ctx, m->b, nullptr);
          auto at = require_kind(arg.type, TypeKind::Arrow, "callcc", m);
          require_kind(at->left, TypeKind::Arrow, "callcc", m);
          auto t = at->left->left, s = at->left->right;
          require_equal(t, at->right, "callcc", m);
          return {t, mk_app(mk_callcc(t, s), arg.term)};
        }
        auto f = value(ctx, m->a, nullptr);
        auto ft = require_kind(f.type, TypeKind::Arrow, "application", m);
        auto arg = value(ctx, m->b, ft->left);
        require_equal(ft->left, arg.type, "application", m);
        return {ft->right, mk_app(f.term, arg.term)};
      }
      case TermKind::Match: {
        auto v = value(ctx, m->a, nullptr);
        auto pt = require_kind(v.type, TypeKind::Prod, "match", m);
        auto body = comp(ctx.extended(m->name, pt->left).extended(m->name2, pt->right), m->b, hint);
        return {body.type, mk_match(v.term, m->name, m->name2, body.term)};
      }
      case TermKind::Case: {
        auto v = value(ctx, m->a, nullptr);
        auto st = require_kind(v.type, TypeKind::Sum, "case", m);
        auto left = comp(ctx.extended(m->name, st->left), m->b, hint);
        auto right = comp(ctx.extended(m->name2, st->right), m->c, hint ? hint : left.type);
        require_equal(left.type, right.type, "case", m);
        return {left.type, mk_case(v.term, m->name, left.term, m->name2, right.term)};
      }
      case TermKind::Mark: {
        auto inner = comp(ctx, m->a, one_type());
        require_equal(one_type(), inner.type, "mark", m);
        TypePtr result = m->type ? m->type : hint;
        if (!result) fail("mark", "cannot determine the result type", m);
        return {result, mk_mark(inner.term, result)};
      }
      // Surface forms are checked by their own rules; the elaborated term is
      // the desugaring of the elaborated components.
      case TermKind::Assign: {
        auto r = value(ctx, m->a, nullptr);
        auto content = var_content(r.type, m);
        auto v = value(ctx, m->b, content);
        require_equal(content, v.type, "assignment", m);
        return {one_type(), desugar(mk_assign(r.term, v.term))};
      }
      case TermKind::Deref: {
        auto r = value(ctx, m->a, nullptr);
        return {var_content(r.type, m), desugar(mk_deref(r.term))};
      }
      case TermKind::CatchIn: {
        auto e = value(ctx, m->a, nullptr);
        require_equal(exn_type(), e.type, "catch", m);
        auto body = comp(ctx, m->b, zero_type());
        require_equal(zero_type(), body.type, "catch", m);
        return {one_type(), desugar(mk_catch_in(e.term, body.term))};
      }
      case TermKind::ThrowExn: {
        auto e = value(ctx, m->a, nullptr);
        require_equal(exn_type(), e.type, "throw", m);
        return {zero_type(), desugar(mk_throw_exn(e.term))};
      }
      case TermKind::NewInit: {
        auto init = value(ctx, m->a, m->type);
        require_equal(m->type, init.type, "new", m);
        auto body = comp(ctx.extended(m->name, var_type(m->type)), m->b, hint);
        return {body.type, desugar(mk_new_init(m->name, m->type, init.term, body.term))};
      }
      case TermKind::NewUninit: {
        auto body = comp(ctx.extended(m->name, var_type(m->type)), m->b, hint);
        return {body.type, desugar(mk_new_uninit(m->name, m->type, body.term))};
      }
      case TermKind::NewExnIn: {
        auto body = comp(ctx.extended(m->name, exn_type()), m->b, hint);
        return {body.type, desugar(mk_new_exn_in(m->name, body.term))};
      }
      case TermKind::Seq: {
        auto first = comp(ctx, m->a, nullptr);
        auto second = comp(ctx, m->b, hint);
        return {second.type, desugar(mk_seq(first.term, second.term))};
      }
      case TermKind::Handle: {
        auto e = value(ctx, m->a, nullptr);
        require_equal(exn_type(), e.type, "handle", m);
        auto body = comp(ctx, m->b, zero_type());
        require_equal(zero_type(), body.type, "handle", m);
        auto handler = comp(ctx, m->c, hint);
        return {handler.type, desugar(mk_handle(e.term, body.term, handler.term))};
      }
      case TermKind::If: {
        auto v = value(ctx, m->a, bool_type());
        require_equal(bool_type(), v.type, "if", m);
        auto left = comp(ctx, m->b, hint);
        auto right = comp(ctx, m->c, hint ? hint : left.type);
        require_equal(left.type, right.type, "if", m);
        return {left.type, desugar(mk_if(v.term, left.term, right.term))};
      }
      case TermKind::ResumableExn:
        return {resumable_exn_type(m->type), desugar(m)};
      default:
        fail("computation", "expected a computation", m);
    }
  }

 private:
  static TypePtr callcc_type(const TypePtr& t, const TypePtr& s) {
    return arrow_type(arrow_type(arrow_type(t, s), t), t);
  }

  TypePtr location_type(const TermPtr& v) const {
    if (!store_) fail("location", "location constant outside a machine configuration", v);
    auto it = store_->locations.find(v->name);
    if (it == store_->locations.end()) fail("location", "unknown location", v);
    return it->second;
  }

  static TypePtr var_content(const TypePtr& t, const TermPtr& m) {
    if (t->kind == TypeKind::Prod && t->left->kind == TypeKind::Arrow && t->right->kind == TypeKind::Arrow) {
      auto content = t->right->right;
      if (type_equal(t, var_type(content))) return content;
    }
    fail("reference", "expected a var[T], found " + type_to_string(t), m);
  }

  const StoreTyping* store_;
};

}  // namespace

Elaborated elaborate_value(const TypingContext& ctx, const TermPtr& v, const TypePtr& expected,
                           const StoreTyping* store) {
  return Checker(store).value(ctx, v, expected);
}

Elaborated elaborate_comp(const TypingContext& ctx, const TermPtr& m, const TypePtr& expected,
                          const StoreTyping* store) {
  return Checker(store).comp(ctx, m, expected);
}

TypePtr typecheck_value(const TypingContext& ctx, const TermPtr& v, const TypePtr& expected,
                        const StoreTyping* store) {
  return elaborate_value(ctx, v, expected, store).type;
}

TypePtr typecheck_comp(const TypingContext& ctx, const TermPtr& m, const TypePtr& expected,
                       const StoreTyping* store) {
  return elaborate_comp(ctx, m, expected, store).type;
}

TermPtr elaborate_program(const TermPtr& m) {
  auto e = elaborate_comp({}, m, one_type());
  if (!type_equal(e.type, one_type())) {
    throw TypeError("program: expected type 1 but found " + type_to_string(e.type));
  }
  return e.term;
}

Fragment fragment_of(const TermPtr& t) {
  if (contains_kind(t, TermKind::NewExn) || contains_kind(t, TermKind::Throw) ||
      contains_kind(t, TermKind::Catch) || contains_kind(t, TermKind::NewValuedExn) ||
      contains_kind(t, TermKind::ResumableExn) || contains_kind(t, TermKind::CatchIn) ||
      contains_kind(t, TermKind::ThrowExn) || contains_kind(t, TermKind::NewExnIn) ||
      contains_kind(t, TermKind::Handle))
    return Fragment::LRCE;
  if (contains_kind(t, TermKind::Callcc) || contains_kind(t, TermKind::Mark)) return Fragment::LRC;
  if (contains_kind(t, TermKind::New) || contains_kind(t, TermKind::Set) || contains_kind(t, TermKind::Get) ||
      contains_kind(t, TermKind::NewInit) || contains_kind(t, TermKind::NewUninit))
    return Fragment::LR;
  return Fragment::L;
}

std::string fragment_name(Fragment f) {
  switch (f) {
    case Fragment::L:
      return "L";
    case Fragment::LR:
      return "L_R";
    case Fragment::LRC:
      return "L_RC";
    case Fragment::LRCE:
      return "L_RCE";
  }
  return "?";
}

}  // namespace ctlgames
