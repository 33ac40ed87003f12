#include "ctlgames/syntax.hpp"

#include <atomic>
#include <map>
#include <optional>
#include <sstream>

namespace ctlgames {

// ---------------------------------------------------------------------------
// Types
// ---------------------------------------------------------------------------

TypePtr zero_type() {
  static const TypePtr t = std::make_shared<Type>(Type{TypeKind::Zero, nullptr, nullptr});
  return t;
}

TypePtr one_type() {
  static const TypePtr t = std::make_shared<Type>(Type{TypeKind::One, nullptr, nullptr});
  return t;
}

TypePtr prod_type(TypePtr a, TypePtr b) {
  return std::make_shared<Type>(Type{TypeKind::Prod, std::move(a), std::move(b)});
}

TypePtr sum_type(TypePtr a, TypePtr b) {
  return std::make_shared<Type>(Type{TypeKind::Sum, std::move(a), std::move(b)});
}

TypePtr arrow_type(TypePtr a, TypePtr b) {
  return std::make_shared<Type>(Type{TypeKind::Arrow, std::move(a), std::move(b)});
}

TypePtr var_type(TypePtr content) {
  return prod_type(arrow_type(content, one_type()), arrow_type(one_type(), content));
}

TypePtr exn_type() {
  auto thunk = arrow_type(one_type(), zero_type());
  return prod_type(arrow_type(thunk, one_type()), thunk);
}

TypePtr valued_exn_type(TypePtr carried) {
  auto thunk = arrow_type(one_type(), zero_type());
  return prod_type(arrow_type(thunk, carried), arrow_type(carried, zero_type()));
}

TypePtr bool_type() { return sum_type(one_type(), one_type()); }

TypePtr resumable_exn_type(TypePtr t) {
  auto thunk = arrow_type(one_type(), zero_type());
  return prod_type(arrow_type(thunk, arrow_type(t, zero_type())), arrow_type(one_type(), t));
}

bool type_equal(const TypePtr& a, const TypePtr& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->kind != b->kind) return false;
  switch (a->kind) {
    case TypeKind::Zero:
    case TypeKind::One:
      return true;
    default:
      return type_equal(a->left, b->left) && type_equal(a->right, b->right);
  }
}

std::string type_to_string(const TypePtr& t) {
  if (!t) return "?";
  switch (t->kind) {
    case TypeKind::Zero:
      return "0";
    case TypeKind::One:
      return "1";
    case TypeKind::Prod:
      return "( " + type_to_string(t->left) + " * " + type_to_string(t->right) + " )";
    case TypeKind::Sum:
      return "( " + type_to_string(t->left) + " + " + type_to_string(t->right) + " )";
    case TypeKind::Arrow:
      return "( " + type_to_string(t->left) + " -> " + type_to_string(t->right) + " )";
  }
  return "?";
}

int type_size(const TypePtr& t) {
  if (t->kind == TypeKind::Zero || t->kind == TypeKind::One) return 1;
  return 1 + type_size(t->left) + type_size(t->right);
}

// ---------------------------------------------------------------------------
// Term classification and construction
// ---------------------------------------------------------------------------

bool is_value(TermKind k) {
  switch (k) {
    case TermKind::Var:
    case TermKind::Unit:
    case TermKind::Pair:
    case TermKind::Inj1:
    case TermKind::Inj2:
    case TermKind::Lambda:
    case TermKind::New:
    case TermKind::NewExn:
    case TermKind::Callcc:
    case TermKind::Set:
    case TermKind::Get:
    case TermKind::Throw:
    case TermKind::Catch:
    case TermKind::True:
    case TermKind::False:
    case TermKind::NewValuedExn:
      return true;
    default:
      return false;
  }
}

bool is_sugar(TermKind k) { return k >= TermKind::True; }

bool is_machine_constant(TermKind k) {
  return k == TermKind::Set || k == TermKind::Get || k == TermKind::Throw ||
         k == TermKind::Catch || k == TermKind::Mark;
}

namespace {

TermPtr make(Term t) { return std::make_shared<const Term>(std::move(t)); }

}  // namespace

TermPtr mk_var(std::string name) { return make({TermKind::Var, std::move(name), {}, {}, {}, {}, {}, {}}); }
TermPtr mk_unit() { return make({TermKind::Unit, {}, {}, {}, {}, {}, {}, {}}); }
TermPtr mk_pair(TermPtr a, TermPtr b) {
  return make({TermKind::Pair, {}, {}, {}, {}, std::move(a), std::move(b), {}});
}
TermPtr mk_inj1(TermPtr v, TypePtr sum) {
  return make({TermKind::Inj1, {}, {}, std::move(sum), {}, std::move(v), {}, {}});
}
TermPtr mk_inj2(TermPtr v, TypePtr sum) {
  return make({TermKind::Inj2, {}, {}, std::move(sum), {}, std::move(v), {}, {}});
}
TermPtr mk_lambda(std::string x, TypePtr domain, TermPtr body) {
  return make({TermKind::Lambda, std::move(x), {}, std::move(domain), {}, std::move(body), {}, {}});
}
TermPtr mk_new(TypePtr content) { return make({TermKind::New, {}, {}, std::move(content), {}, {}, {}, {}}); }
TermPtr mk_new_exn() { return make({TermKind::NewExn, {}, {}, {}, {}, {}, {}, {}}); }
TermPtr mk_callcc(TypePtr t, TypePtr s) {
  return make({TermKind::Callcc, {}, {}, std::move(t), std::move(s), {}, {}, {}});
}
TermPtr mk_set(std::string loc) { return make({TermKind::Set, std::move(loc), {}, {}, {}, {}, {}, {}}); }
TermPtr mk_get(std::string loc) { return make({TermKind::Get, std::move(loc), {}, {}, {}, {}, {}, {}}); }
TermPtr mk_throw_const(std::string exn) {
  return make({TermKind::Throw, std::move(exn), {}, {}, {}, {}, {}, {}});
}
TermPtr mk_catch_const(std::string exn) {
  return make({TermKind::Catch, std::move(exn), {}, {}, {}, {}, {}, {}});
}
TermPtr mk_return(TermPtr v) { return make({TermKind::Return, {}, {}, {}, {}, std::move(v), {}, {}}); }
TermPtr mk_let(std::string x, TermPtr m, TermPtr n) {
  return make({TermKind::Let, std::move(x), {}, {}, {}, std::move(m), std::move(n), {}});
}
TermPtr mk_void(TermPtr v, TypePtr result) {
  return make({TermKind::Void, {}, {}, std::move(result), {}, std::move(v), {}, {}});
}
TermPtr mk_app(TermPtr f, TermPtr v) {
  return make({TermKind::App, {}, {}, {}, {}, std::move(f), std::move(v), {}});
}
TermPtr mk_match(TermPtr v, std::string x, std::string y, TermPtr m) {
  return make({TermKind::Match, std::move(x), std::move(y), {}, {}, std::move(v), std::move(m), {}});
}
TermPtr mk_case(TermPtr v, std::string x, TermPtr m, std::string y, TermPtr n) {
  return make({TermKind::Case, std::move(x), std::move(y), {}, {}, std::move(v), std::move(m), std::move(n)});
}
TermPtr mk_mark(TermPtr m, TypePtr result) {
  return make({TermKind::Mark, {}, {}, std::move(result), {}, std::move(m), {}, {}});
}

TermPtr mk_true() { return make({TermKind::True, {}, {}, {}, {}, {}, {}, {}}); }
TermPtr mk_false() { return make({TermKind::False, {}, {}, {}, {}, {}, {}, {}}); }
TermPtr mk_new_valued_exn(TypePtr carried) {
  return make({TermKind::NewValuedExn, {}, {}, std::move(carried), {}, {}, {}, {}});
}
TermPtr mk_assign(TermPtr ref, TermPtr v) {
  return make({TermKind::Assign, {}, {}, {}, {}, std::move(ref), std::move(v), {}});
}
TermPtr mk_deref(TermPtr ref) { return make({TermKind::Deref, {}, {}, {}, {}, std::move(ref), {}, {}}); }
TermPtr mk_catch_in(TermPtr e, TermPtr body) {
  return make({TermKind::CatchIn, {}, {}, {}, {}, std::move(e), std::move(body), {}});
}
TermPtr mk_throw_exn(TermPtr e) { return make({TermKind::ThrowExn, {}, {}, {}, {}, std::move(e), {}, {}}); }
TermPtr mk_new_init(std::string x, TypePtr content, TermPtr init, TermPtr body) {
  return make({TermKind::NewInit, std::move(x), {}, std::move(content), {}, std::move(init), std::move(body), {}});
}
TermPtr mk_new_uninit(std::string x, TypePtr content, TermPtr body) {
  return make({TermKind::NewUninit, std::move(x), {}, std::move(content), {}, {}, std::move(body), {}});
}
TermPtr mk_new_exn_in(std::string x, TermPtr body) {
  return make({TermKind::NewExnIn, std::move(x), {}, {}, {}, {}, std::move(body), {}});
}
TermPtr mk_seq(TermPtr m, TermPtr n) {
  return make({TermKind::Seq, {}, {}, {}, {}, std::move(m), std::move(n), {}});
}
TermPtr mk_handle(TermPtr e, TermPtr body, TermPtr handler) {
  return make({TermKind::Handle, {}, {}, {}, {}, std::move(e), std::move(body), std::move(handler)});
}
TermPtr mk_if(TermPtr v, TermPtr m, TermPtr n) {
  return make({TermKind::If, {}, {}, {}, {}, std::move(v), std::move(m), std::move(n)});
}
TermPtr mk_resumable_exn(TypePtr t) {
  return make({TermKind::ResumableExn, {}, {}, std::move(t), {}, {}, {}, {}});
}

std::string fresh_name() {
  static std::atomic<long> counter{0};
  return "_" + std::to_string(counter.fetch_add(1));
}

// ---------------------------------------------------------------------------
// Binding structure
// ---------------------------------------------------------------------------

namespace {

// Variables bound by `t` in its child slot 0 (a), 1 (b) or 2 (c).
std::vector<std::string> binders_of(const Term& t, int slot) {
  switch (t.kind) {
    case TermKind::Lambda:
      return slot == 0 ? std::vector<std::string>{t.name} : std::vector<std::string>{};
    case TermKind::Let:
    case TermKind::NewInit:
    case TermKind::NewUninit:
    case TermKind::NewExnIn:
      return slot == 1 ? std::vector<std::string>{t.name} : std::vector<std::string>{};
    case TermKind::Match:
      return slot == 1 ? std::vector<std::string>{t.name, t.name2} : std::vector<std::string>{};
    case TermKind::Case:
      if (slot == 1) return {t.name};
      if (slot == 2) return {t.name2};
      return {};
    default:
      return {};
  }
}

TermPtr child(const Term& t, int slot) { return slot == 0 ? t.a : slot == 1 ? t.b : t.c; }

void collect_free(const TermPtr& t, std::multiset<std::string>& bound, std::set<std::string>& out) {
  if (!t) return;
  if (t->kind == TermKind::Var) {
    if (!bound.count(t->name)) out.insert(t->name);
    return;
  }
  for (int slot = 0; slot < 3; ++slot) {
    auto c = child(*t, slot);
    if (!c) continue;
    auto bs = binders_of(*t, slot);
    for (auto& b : bs) bound.insert(b);
    collect_free(c, bound, out);
    for (auto& b : bs) bound.erase(bound.find(b));
  }
}

std::string rename_binder(Term& copy, int slot, const std::string& from, const std::string& to) {
  // Renames the binder `from` owned by `copy` for the given child slot.
  if (copy.kind == TermKind::Case) {
    if (slot == 1 && copy.name == from) copy.name = to;
    if (slot == 2 && copy.name2 == from) copy.name2 = to;
  } else {
    if (copy.name == from) copy.name = to;
    if (copy.kind == TermKind::Match && copy.name2 == from) copy.name2 = to;
  }
  return to;
}

TermPtr subst_impl(const TermPtr& t, const std::string& x, const TermPtr& v,
                   const std::set<std::string>& fv) {
  if (!t) return t;
  if (t->kind == TermKind::Var) return t->name == x ? v : t;
  Term copy = *t;
  TermPtr kids[3] = {t->a, t->b, t->c};
  bool changed = false;
  for (int slot = 0; slot < 3; ++slot) {
    if (!kids[slot]) continue;
    auto bs = binders_of(*t, slot);
    bool shadowed = false;
    for (auto& b : bs) shadowed = shadowed || b == x;
    if (shadowed) continue;
    TermPtr body = kids[slot];
    for (auto& b : bs) {
      if (fv.count(b)) {
        auto fresh = fresh_name();
        body = subst_impl(body, b, mk_var(fresh), {fresh});
        rename_binder(copy, slot, b, fresh);
      }
    }
    auto next = subst_impl(body, x, v, fv);
    if (next != kids[slot]) {
      kids[slot] = next;
      changed = true;
    }
  }
  if (!changed) return t;
  copy.a = kids[0];
  copy.b = kids[1];
  copy.c = kids[2];
  return std::make_shared<const Term>(std::move(copy));
}

using Env = std::map<std::string, int>;

bool alpha_impl(const TermPtr& a, const TermPtr& b, Env& ea, Env& eb, int depth) {
  if (!a || !b) return !a && !b;
  if (a->kind != b->kind) return false;
  if (a->kind == TermKind::Var) {
    auto ia = ea.find(a->name);
    auto ib = eb.find(b->name);
    if (ia == ea.end() && ib == eb.end()) return a->name == b->name;
    if (ia == ea.end() || ib == eb.end()) return false;
    return ia->second == ib->second;
  }
  // Non-binder payload must agree literally.
  bool binds_names = a->kind == TermKind::Lambda || a->kind == TermKind::Let ||
                     a->kind == TermKind::Match || a->kind == TermKind::Case ||
                     a->kind == TermKind::NewInit || a->kind == TermKind::NewUninit ||
                     a->kind == TermKind::NewExnIn;
  if (!binds_names && (a->name != b->name || a->name2 != b->name2)) return false;
  if (!type_equal(a->type, b->type) || !type_equal(a->type2, b->type2)) return false;
  for (int slot = 0; slot < 3; ++slot) {
    auto ca = child(*a, slot);
    auto cb = child(*b, slot);
    if (!ca || !cb) {
      if (ca || cb) return false;
      continue;
    }
    auto ba = binders_of(*a, slot);
    auto bb = binders_of(*b, slot);
    std::vector<std::pair<std::string, std::optional<int>>> saved_a, saved_b;
    int d = depth;
    for (size_t i = 0; i < ba.size(); ++i) {
      ++d;
      auto it = ea.find(ba[i]);
      saved_a.push_back({ba[i], it == ea.end() ? std::nullopt : std::optional<int>(it->second)});
      ea[ba[i]] = d;
      auto jt = eb.find(bb[i]);
      saved_b.push_back({bb[i], jt == eb.end() ? std::nullopt : std::optional<int>(jt->second)});
      eb[bb[i]] = d;
    }
    bool ok = alpha_impl(ca, cb, ea, eb, d);
    for (auto it = saved_a.rbegin(); it != saved_a.rend(); ++it) {
      if (it->second) ea[it->first] = *it->second; else ea.erase(it->first);
    }
    for (auto it = saved_b.rbegin(); it != saved_b.rend(); ++it) {
      if (it->second) eb[it->first] = *it->second; else eb.erase(it->first);
    }
    if (!ok) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Printer
// ---------------------------------------------------------------------------

class Printer {
 public:
  std::string str() const { return out_.str(); }

  void term(const TermPtr& t) {
    switch (t->kind) {
      case TermKind::Var:
        tok(t->name);
        break;
      case TermKind::Unit:
        tok("()");
        break;
      case TermKind::Pair:
        tok("<");
        term(t->a);
        tok(",");
        term(t->b);
        tok(">");
        break;
      case TermKind::Inj1:
      case TermKind::Inj2:
        tok(t->kind == TermKind::Inj1 ? "in1" : "in2");
        annot(t->type);
        tok("(");
        term(t->a);
        tok(")");
        break;
      case TermKind::Lambda:
        tok("(");
        tok("fun");
        tok(t->name);
        tok(":");
        tok(type_to_string(t->type));
        tok(".");
        term(t->a);
        tok(")");
        break;
      case TermKind::New:
        tok("new");
        annot(t->type);
        break;
      case TermKind::NewExn:
        tok("new_exn");
        break;
      case TermKind::Callcc:
        tok("callcc");
        if (t->type) {
          tok("{");
          tok(type_to_string(t->type));
          tok(",");
          tok(type_to_string(t->type2));
          tok("}");
        }
        break;
      case TermKind::Set:
        tok("%set(" + t->name + ")");
        break;
      case TermKind::Get:
        tok("%get(" + t->name + ")");
        break;
      case TermKind::Throw:
        tok("%throw(" + t->name + ")");
        break;
      case TermKind::Catch:
        tok("%catch(" + t->name + ")");
        break;
      case TermKind::Return:
        tok("[");
        term(t->a);
        tok("]");
        break;
      case TermKind::Let:
        open("let");
        tok(t->name);
        tok("=");
        term(t->a);
        tok("in");
        term(t->b);
        tok(")");
        break;
      case TermKind::Void:
        open("void");
        annot(t->type);
        term(t->a);
        tok(")");
        break;
      case TermKind::App:
        tok("(");
        term(t->a);
        term(t->b);
        tok(")");
        break;
      case TermKind::Match:
        open("match");
        term(t->a);
        tok("as");
        tok("(");
        tok(t->name);
        tok(",");
        tok(t->name2);
        tok(")");
        tok(".");
        term(t->b);
        tok(")");
        break;
      case TermKind::Case:
        open("case");
        term(t->a);
        tok("as");
        tok("in1");
        tok("(");
        tok(t->name);
        tok(")");
        tok(".");
        term(t->b);
        tok("|");
        tok("in2");
        tok("(");
        tok(t->name2);
        tok(")");
        tok(".");
        term(t->c);
        tok(")");
        break;
      case TermKind::Mark:
        tok("#");
        annot(t->type);
        tok("(");
        term(t->a);
        tok(")");
        break;
      case TermKind::True:
        tok("tt");
        break;
      case TermKind::False:
        tok("ff");
        break;
      case TermKind::NewValuedExn:
        tok("new_exn");
        annot(t->type);
        break;
      case TermKind::Assign:
        tok("(");
        term(t->a);
        tok(":=");
        term(t->b);
        tok(")");
        break;
      case TermKind::Deref:
        tok("deref");
        tok("(");
        term(t->a);
        tok(")");
        break;
      case TermKind::CatchIn:
        open("catch");
        term(t->a);
        tok("in");
        term(t->b);
        tok(")");
        break;
      case TermKind::ThrowExn:
        tok("throw");
        tok("(");
        term(t->a);
        tok(")");
        break;
      case TermKind::NewInit:
        open("new");
        tok(t->name);
        tok(":");
        tok(type_to_string(t->type));
        tok(":=");
        term(t->a);
        tok("in");
        term(t->b);
        tok(")");
        break;
      case TermKind::NewUninit:
        open("new");
        tok(t->name);
        tok(":");
        tok(type_to_string(t->type));
        tok("in");
        term(t->b);
        tok(")");
        break;
      case TermKind::NewExnIn:
        open("new_exn");
        tok(t->name);
        tok("in");
        term(t->b);
        tok(")");
        break;
      case TermKind::Seq:
        tok("(");
        term(t->a);
        tok(";");
        term(t->b);
        tok(")");
        break;
      case TermKind::Handle:
        open("handle");
        term(t->a);
        tok("in");
        term(t->b);
        tok("with");
        term(t->c);
        tok(")");
        break;
      case TermKind::If:
        open("if");
        term(t->a);
        tok("then");
        term(t->b);
        tok("else");
        term(t->c);
        tok(")");
        break;
      case TermKind::ResumableExn:
        tok("resumable_exn");
        annot(t->type);
        break;
    }
  }

 private:
  void tok(const std::string& s) {
    if (!first_) out_ << ' ';
    out_ << s;
    first_ = false;
  }
  void open(const std::string& keyword) {
    tok("(");
    tok(keyword);
  }
  void annot(const TypePtr& t) {
    if (!t) return;
    tok("{");
    tok(type_to_string(t));
    tok("}");
  }

  std::ostringstream out_;
  bool first_ = true;
};

}  // namespace

std::set<std::string> free_vars(const TermPtr& t) {
  std::multiset<std::string> bound;
  std::set<std::string> out;
  collect_free(t, bound, out);
  return out;
}

TermPtr substitute(const TermPtr& t, const std::string& x, const TermPtr& v) {
  return subst_impl(t, x, v, free_vars(v));
}

bool alpha_equal(const TermPtr& a, const TermPtr& b) {
  Env ea, eb;
  return alpha_impl(a, b, ea, eb, 0);
}

int term_size(const TermPtr& t) {
  if (!t) return 0;
  return 1 + term_size(t->a) + term_size(t->b) + term_size(t->c);
}

bool contains_kind(const TermPtr& t, TermKind k) {
  if (!t) return false;
  if (t->kind == k) return true;
  return contains_kind(t->a, k) || contains_kind(t->b, k) || contains_kind(t->c, k);
}

std::string print_term(const TermPtr& t) {
  Printer p;
  p.term(t);
  return p.str();
}

SyntaxError::SyntaxError(const std::string& msg, int line, int column)
    : std::runtime_error(std::to_string(line) + ":" + std::to_string(column) + ": " + msg),
      line_(line),
      column_(column) {}

}  // namespace ctlgames
