#pragma once

// Abstract syntax of the call-by-value language with references, local
// exceptions and first-class continuations, together with its surface sugar.

#include <memory>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

namespace ctlgames {

// ---------------------------------------------------------------------------
// Types
// ---------------------------------------------------------------------------

struct Type;
using TypePtr = std::shared_ptr<const Type>;

enum class TypeKind { Zero, One, Prod, Sum, Arrow };

struct Type {
  TypeKind kind;
  TypePtr left;
  TypePtr right;
};

TypePtr zero_type();
TypePtr one_type();
TypePtr prod_type(TypePtr a, TypePtr b);
TypePtr sum_type(TypePtr a, TypePtr b);
TypePtr arrow_type(TypePtr a, TypePtr b);

/// var[T] = (T -> 1) * (1 -> T)
TypePtr var_type(TypePtr content);
/// exn = ((1 -> 0) -> 1) * (1 -> 0)
TypePtr exn_type();
/// exn[T] = ((1 -> 0) -> T) * (T -> 0)
TypePtr valued_exn_type(TypePtr carried);
/// bool = 1 + 1, with tt = in1(()) and ff = in2(()).
TypePtr bool_type();
/// ((1 -> 0) -> (T -> 0)) * (1 -> T)
TypePtr resumable_exn_type(TypePtr t);

bool type_equal(const TypePtr& a, const TypePtr& b);
std::string type_to_string(const TypePtr& t);
/// Number of constructors in the type tree.
int type_size(const TypePtr& t);

// ---------------------------------------------------------------------------
// Terms
// ---------------------------------------------------------------------------

enum class TermKind {
  // values
  Var,
  Unit,
  Pair,
  Inj1,
  Inj2,
  Lambda,
  New,
  NewExn,
  Callcc,
  // machine-only value constants
  Set,
  Get,
  Throw,
  Catch,
  // computations
  Return,
  Let,
  Void,
  App,
  Match,
  Case,
  Mark,
  // surface sugar; removed by desugar()
  True,          // value
  False,         // value
  NewValuedExn,  // value: new_exn{T}
  Assign,
  Deref,
  CatchIn,
  ThrowExn,
  NewInit,
  NewUninit,
  NewExnIn,
  Seq,
  Handle,
  If,
  ResumableExn,
};

struct Term;
using TermPtr = std::shared_ptr<const Term>;

/// Immutable term node. Field usage depends on `kind`:
///   Var: name.  Pair: a, b.  Inj1/Inj2: a, type = optional sum annotation.
///   Lambda: name (binder), type (domain), a (body).
///   New: type = optional content type.  Callcc: type, type2 = optional T, S.
///   Set/Get: name = location.  Throw/Catch: name = exception.
///   Return: a.  Let: name, a (bound), b (body).  Void: a, type (optional).
///   App: a (function), b (argument).  Match: a, name, name2, b.
///   Case: a, name, b, name2, c.  Mark: a, type (optional result type).
///   Assign: a := b.  Deref: a.  CatchIn: a (exn), b.  ThrowExn: a.
///   NewInit: name, type, a (initial value), b.  NewUninit: name, type, b.
///   NewExnIn: name, b.  Seq: a, b.  Handle: a (exn), b (body), c (handler).
///   If: a, b, c.  NewValuedExn / ResumableExn: type.
struct Term {
  TermKind kind;
  std::string name;
  std::string name2;
  TypePtr type;
  TypePtr type2;
  TermPtr a;
  TermPtr b;
  TermPtr c;
};

bool is_value(TermKind k);
inline bool is_value(const TermPtr& t) { return is_value(t->kind); }
bool is_sugar(TermKind k);
bool is_machine_constant(TermKind k);

// Constructors.
TermPtr mk_var(std::string name);
TermPtr mk_unit();
TermPtr mk_pair(TermPtr a, TermPtr b);
TermPtr mk_inj1(TermPtr v, TypePtr sum = nullptr);
TermPtr mk_inj2(TermPtr v, TypePtr sum = nullptr);
TermPtr mk_lambda(std::string x, TypePtr domain, TermPtr body);
TermPtr mk_new(TypePtr content = nullptr);
TermPtr mk_new_exn();
TermPtr mk_callcc(TypePtr t = nullptr, TypePtr s = nullptr);
TermPtr mk_set(std::string loc);
TermPtr mk_get(std::string loc);
TermPtr mk_throw_const(std::string exn);
TermPtr mk_catch_const(std::string exn);
TermPtr mk_return(TermPtr v);
TermPtr mk_let(std::string x, TermPtr m, TermPtr n);
TermPtr mk_void(TermPtr v, TypePtr result = nullptr);
TermPtr mk_app(TermPtr f, TermPtr v);
TermPtr mk_match(TermPtr v, std::string x, std::string y, TermPtr m);
TermPtr mk_case(TermPtr v, std::string x, TermPtr m, std::string y, TermPtr n);
TermPtr mk_mark(TermPtr m, TypePtr result = nullptr);

TermPtr mk_true();
TermPtr mk_false();
TermPtr mk_new_valued_exn(TypePtr carried);
TermPtr mk_assign(TermPtr ref, TermPtr v);
TermPtr mk_deref(TermPtr ref);
TermPtr mk_catch_in(TermPtr e, TermPtr body);
TermPtr mk_throw_exn(TermPtr e);
TermPtr mk_new_init(std::string x, TypePtr content, TermPtr init, TermPtr body);
TermPtr mk_new_uninit(std::string x, TypePtr content, TermPtr body);
TermPtr mk_new_exn_in(std::string x, TermPtr body);
TermPtr mk_seq(TermPtr m, TermPtr n);
TermPtr mk_handle(TermPtr e, TermPtr body, TermPtr handler);
TermPtr mk_if(TermPtr v, TermPtr m, TermPtr n);
TermPtr mk_resumable_exn(TypePtr t);

/// A fresh variable name of the reserved form `_<n>`; draws from a process-wide
/// atomic counter.
std::string fresh_name();

std::set<std::string> free_vars(const TermPtr& t);
/// Capture-avoiding substitution of a value for a variable.
TermPtr substitute(const TermPtr& t, const std::string& x, const TermPtr& v);
bool alpha_equal(const TermPtr& a, const TermPtr& b);
/// Number of nodes in the term.
int term_size(const TermPtr& t);
/// True if the term contains a node of the given kind.
bool contains_kind(const TermPtr& t, TermKind k);

/// Canonical printing: fully parenthesized, tokens separated by one space.
std::string print_term(const TermPtr& t);

class SyntaxError : public std::runtime_error {
 public:
  SyntaxError(const std::string& msg, int line, int column);
  int line() const { return line_; }
  int column() const { return column_; }

 private:
  int line_;
  int column_;
};

class TypeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace ctlgames
