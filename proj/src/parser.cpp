#include "ctlgames/parser.hpp"

#include <cctype>
#include <set>
#include <vector>

#include "ctlgames/desugar.hpp"

namespace ctlgames {

namespace {

enum class Tok { Ident, Symbol, Keyword, Reserved, End };

struct Token {
  Tok kind;
  std::string text;
  int line;
  int column;
};

const std::set<std::string>& keywords() {
  static const std::set<std::string> k = {
      "let",  "in",   "match", "as",    "case",   "in1",     "in2",    "fun",
      "void", "new",  "new_exn", "callcc", "tt",   "ff",      "deref",  "throw",
      "catch", "handle", "with", "if",   "then",   "else",    "resumable_exn",
      "var",  "exn",  "bool"};
  return k;
}

std::vector<Token> lex(std::string_view src) {
  std::vector<Token> out;
  int line = 1, col = 1;
  size_t i = 0;
  auto advance = [&](size_t n) {
    for (size_t k = 0; k < n; ++k) {
      if (src[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
      ++i;
    }
  };
  while (i < src.size()) {
    char c = src[i];
    if (std::isspace(static_cast<unsigned char>(c))) {
      advance(1);
      continue;
    }
    if (c == '-' && i + 1 < src.size() && src[i + 1] == '-') {
      while (i < src.size() && src[i] != '\n') advance(1);
      continue;
    }
    int l = line, cl = col;
    if (std::isalpha(static_cast<unsigned char>(c)) || c == '_') {
      size_t j = i;
      while (j < src.size() &&
             (std::isalnum(static_cast<unsigned char>(src[j])) || src[j] == '_' || src[j] == '\''))
        ++j;
      std::string word(src.substr(i, j - i));
      Tok kind = keywords().count(word) ? Tok::Keyword : Tok::Ident;
      out.push_back({kind, word, l, cl});
      advance(j - i);
      continue;
    }
    if (c == '%' || c == '#') {
      out.push_back({Tok::Reserved, std::string(1, c), l, cl});
      advance(1);
      continue;
    }
    static const char* two[] = {"->", ":="};
    bool matched = false;
    for (auto* t : two) {
      if (src.substr(i, 2) == t) {
        out.push_back({Tok::Symbol, t, l, cl});
        advance(2);
        matched = true;
        break;
      }
    }
    if (matched) continue;
    if (std::string("()<>,[]{}.:=;|*+01\\").find(c) != std::string::npos) {
      out.push_back({Tok::Symbol, std::string(1, c), l, cl});
      advance(1);
      continue;
    }
    throw SyntaxError(std::string("unexpected character '") + c + "'", l, cl);
  }
  out.push_back({Tok::End, "<end of input>", line, col});
  return out;
}

class Parser {
 public:
  explicit Parser(std::vector<Token> toks) : toks_(std::move(toks)) {}

  TermPtr whole_term() {
    auto t = expr();
    expect_end();
    return t;
  }

  TypePtr whole_type() {
    auto t = type();
    expect_end();
    return t;
  }

 private:
  const Token& peek(size_t k = 0) const { return toks_[std::min(pos_ + k, toks_.size() - 1)]; }
  bool at(const std::string& s, size_t k = 0) const {
    const auto& t = peek(k);
    return (t.kind == Tok::Symbol || t.kind == Tok::Keyword) && t.text == s;
  }
  [[noreturn]] void fail(const std::string& msg, const Token& t) const {
    throw SyntaxError(msg + " (found '" + t.text + "')", t.line, t.column);
  }
  void expect(const std::string& s) {
    if (peek().kind == Tok::Reserved) reserved();
    if (!at(s)) fail("expected '" + s + "'", peek());
    ++pos_;
  }
  void expect_end() {
    if (peek().kind == Tok::Reserved) reserved();
    if (peek().kind != Tok::End) fail("unexpected trailing input", peek());
  }
  [[noreturn]] void reserved() const {
    fail("machine-only constants are not allowed in source programs", peek());
  }
  std::string ident() {
    if (peek().kind == Tok::Reserved) reserved();
    if (peek().kind != Tok::Ident) fail("expected identifier", peek());
    return toks_[pos_++].text;
  }

  // ---- types ----
  TypePtr type() {
    auto left = sum_t();
    if (at("->")) {
      ++pos_;
      return arrow_type(left, type());
    }
    return left;
  }
  TypePtr sum_t() {
    auto left = prod_t();
    while (at("+")) {
      ++pos_;
      left = sum_type(left, prod_t());
    }
    return left;
  }
  TypePtr prod_t() {
    auto left = atom_t();
    while (at("*")) {
      ++pos_;
      left = prod_type(left, atom_t());
    }
    return left;
  }
  TypePtr atom_t() {
    if (at("0")) {
      ++pos_;
      return zero_type();
    }
    if (at("1")) {
      ++pos_;
      return one_type();
    }
    if (at("bool")) {
      ++pos_;
      return bool_type();
    }
    if (at("var")) {
      ++pos_;
      expect("[");
      auto t = type();
      expect("]");
      return var_type(t);
    }
    if (at("exn")) {
      ++pos_;
      if (at("[")) {
        ++pos_;
        auto t = type();
        expect("]");
        return valued_exn_type(t);
      }
      return exn_type();
    }
    if (at("(")) {
      ++pos_;
      auto t = type();
      expect(")");
      return t;
    }
    fail("expected a type", peek());
  }
  TypePtr opt_annotation() {
    if (!at("{")) return nullptr;
    ++pos_;
    auto t = type();
    expect("}");
    return t;
  }

  // ---- terms ----
  TermPtr expr() {
    auto left = nonseq();
    if (at(";")) {
      ++pos_;
      auto right = expr();
      return mk_seq(comp(left), comp(right));
    }
    return left;
  }

  TermPtr value(TermPtr t, const Token& where) {
    if (!is_value(t)) fail("expected a value", where);
    return t;
  }
  TermPtr comp(TermPtr t) {
    if (is_value(t)) {
      throw SyntaxError("expected a computation, found a value (write [V] to return it)",
                        peek().line, peek().column);
    }
    return t;
  }

  TermPtr nonseq() {
    const Token start = peek();
    if (start.kind == Tok::Reserved) reserved();
    if (at("let")) {
      ++pos_;
      auto x = ident();
      expect("=");
      auto m = comp(expr());
      expect("in");
      auto n = comp(expr());
      return mk_let(x, m, n);
    }
    if (at("match")) {
      ++pos_;
      auto v = value(atom(), start);
      expect("as");
      expect("(");
      auto x = ident();
      expect(",");
      auto y = ident();
      expect(")");
      expect(".");
      return mk_match(v, x, y, comp(expr()));
    }
    if (at("case")) {
      ++pos_;
      auto v = value(atom(), start);
      expect("as");
      expect("in1");
      expect("(");
      auto x = ident();
      expect(")");
      expect(".");
      auto m = comp(nonseq_or_seq_until_bar());
      expect("|");
      expect("in2");
      expect("(");
      auto y = ident();
      expect(")");
      expect(".");
      auto n = comp(expr());
      return mk_case(v, x, m, y, n);
    }
    if (at("catch")) {
      ++pos_;
      auto e = value(atom(), start);
      expect("in");
      return mk_catch_in(e, comp(expr()));
    }
    if (at("handle")) {
      ++pos_;
      auto e = value(atom(), start);
      expect("in");
      auto n = comp(expr());
      expect("with");
      return mk_handle(e, n, comp(expr()));
    }
    if (at("if")) {
      ++pos_;
      auto v = value(atom(), start);
      expect("then");
      auto m = comp(expr());
      expect("else");
      return mk_if(v, m, comp(expr()));
    }
    if (at("void")) {
      ++pos_;
      auto t = opt_annotation();
      return mk_void(value(atom(), start), t);
    }
    if (at("new") && peek(1).kind == Tok::Ident) {
      ++pos_;
      auto x = ident();
      expect(":");
      auto t = type();
      if (at(":=")) {
        ++pos_;
        auto v = value(atom(), start);
        expect("in");
        return mk_new_init(x, t, v, comp(expr()));
      }
      expect("in");
      return mk_new_uninit(x, t, comp(expr()));
    }
    if (at("new_exn") && peek(1).kind == Tok::Ident) {
      ++pos_;
      auto x = ident();
      expect("in");
      return mk_new_exn_in(x, comp(expr()));
    }
    if (at("fun") || at("\\")) return lambda();
    // Application, assignment, or a bare atom.
    auto head = atom();
    if (at(":=")) {
      ++pos_;
      auto rhs = value(atom(), peek());
      return mk_assign(value(head, start), rhs);
    }
    if (starts_atom()) {
      auto arg = atom();
      value(head, start);
      value(arg, start);
      if (starts_atom()) fail("application takes exactly one argument; parenthesize", peek());
      return mk_app(head, arg);
    }
    return head;
  }

  // The first branch of a case stops at '|'; sequencing inside it is allowed.
  TermPtr nonseq_or_seq_until_bar() { return expr(); }

  TermPtr lambda() {
    ++pos_;
    auto x = ident();
    expect(":");
    auto t = type();
    expect(".");
    return mk_lambda(x, t, comp(expr()));
  }

  bool starts_atom() const {
    const auto& t = peek();
    if (t.kind == Tok::Ident) return true;
    if (t.kind == Tok::Reserved) return true;
    if (t.kind == Tok::Keyword) {
      static const std::set<std::string> k = {"in1", "in2", "new", "new_exn", "callcc", "tt",
                                              "ff",  "deref", "throw", "resumable_exn", "fun"};
      if (t.text == "new" && peek(1).kind == Tok::Ident) return false;
      if (t.text == "new_exn" && peek(1).kind == Tok::Ident) return false;
      return k.count(t.text) > 0;
    }
    return t.kind == Tok::Symbol && (t.text == "(" || t.text == "<" || t.text == "[" || t.text == "\\");
  }

  TermPtr atom() {
    const Token start = peek();
    if (start.kind == Tok::Reserved) reserved();
    if (start.kind == Tok::Ident) {
      ++pos_;
      return mk_var(start.text);
    }
    if (at("(")) {
      ++pos_;
      if (at(")")) {
        ++pos_;
        return mk_unit();
      }
      auto t = expr();
      expect(")");
      return t;
    }
    if (at("<")) {
      ++pos_;
      auto a = value(expr(), start);
      expect(",");
      auto b = value(expr(), start);
      expect(">");
      return mk_pair(a, b);
    }
    if (at("[")) {
      ++pos_;
      auto v = value(expr(), start);
      expect("]");
      return mk_return(v);
    }
    if (at("in1") || at("in2")) {
      bool first = at("in1");
      ++pos_;
      auto ann = opt_annotation();
      expect("(");
      auto v = value(expr(), start);
      expect(")");
      return first ? mk_inj1(v, ann) : mk_inj2(v, ann);
    }
    if (at("fun") || at("\\")) return lambda();
    if (at("new")) {
      ++pos_;
      return mk_new(opt_annotation());
    }
    if (at("new_exn")) {
      ++pos_;
      auto ann = opt_annotation();
      return ann ? mk_new_valued_exn(ann) : mk_new_exn();
    }
    if (at("callcc")) {
      ++pos_;
      if (at("{")) {
        ++pos_;
        auto t = type();
        expect(",");
        auto s = type();
        expect("}");
        return mk_callcc(t, s);
      }
      return mk_callcc();
    }
    if (at("tt")) {
      ++pos_;
      return mk_true();
    }
    if (at("ff")) {
      ++pos_;
      return mk_false();
    }
    if (at("deref") || at("throw")) {
      bool deref = at("deref");
      ++pos_;
      expect("(");
      auto v = value(expr(), start);
      expect(")");
      return deref ? mk_deref(v) : mk_throw_exn(v);
    }
    if (at("resumable_exn")) {
      ++pos_;
      auto t = opt_annotation();
      if (!t) fail("resumable_exn requires a type annotation {T}", peek());
      return mk_resumable_exn(t);
    }
    fail("expected a term", start);
  }

  std::vector<Token> toks_;
  size_t pos_ = 0;
};

}  // namespace

TermPtr parse_term(std::string_view text) { return Parser(lex(text)).whole_term(); }

TypePtr parse_type(std::string_view text) { return Parser(lex(text)).whole_type(); }

TermPtr parse_program(std::string_view text) { return desugar(parse_term(text)); }

}  // namespace ctlgames
