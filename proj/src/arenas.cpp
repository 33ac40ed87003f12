#include "ctlgames/arenas.hpp"

#include <sstream>
#include <stdexcept>

#include "ctlgames/translations.hpp"

namespace ctlgames {

std::vector<int> Arena::roots() const {
  std::vector<int> r;
  for (int i = 0; i < size(); ++i)
    if (nodes[i].parent < 0) r.push_back(i);
  return r;
}

std::vector<int> Arena::children(int n) const {
  std::vector<int> c;
  for (int i = n + 1; i < size(); ++i)
    if (nodes[i].parent == n) c.push_back(i);
  return c;
}

int Arena::depth(int n) const {
  int d = 0;
  while (nodes[n].parent >= 0) {
    n = nodes[n].parent;
    ++d;
  }
  return d;
}

int Arena::exn_answer_of(int q) const {
  for (int i = q + 1; i < size(); ++i)
    if (nodes[i].parent == q && nodes[i].exn_answer) return i;
  return -1;
}

bool Arena::has_exception_answers() const {
  for (const auto& n : nodes)
    if (n.exn_answer) return true;
  return false;
}

std::string Arena::validate() const {
  for (int i = 0; i < size(); ++i) {
    const auto& n = nodes[i];
    if (n.parent >= i) return "node " + std::to_string(i) + " precedes its parent";
    if (n.parent < 0 && !n.question) return "root " + n.name + " is an answer";
    if (n.parent >= 0 && !n.question && !nodes[n.parent].question)
      return "answer " + n.name + " is enabled by an answer";
    if (n.exn_answer && (n.question || n.parent < 0))
      return "exception move " + n.name + " is not an answer";
  }
  if (!has_exception_answers()) return "";
  std::vector<int> count(size(), 0);
  for (int i = 0; i < size(); ++i) {
    if (!nodes[i].exn_answer) continue;
    ++count[nodes[i].parent];
    if (!children(i).empty()) return "exception answer " + nodes[i].name + " enables moves";
  }
  for (int i = 0; i < size(); ++i)
    if (nodes[i].question && count[i] != 1)
      return "question " + nodes[i].name + " lacks a unique exception answer";
  return "";
}

bool arena_equal(const Arena& a, const Arena& b) {
  if (a.size() != b.size()) return false;
  for (int i = 0; i < a.size(); ++i) {
    const auto& x = a.nodes[i];
    const auto& y = b.nodes[i];
    if (x.parent != y.parent || x.question != y.question || x.exn_answer != y.exn_answer) return false;
  }
  return true;
}

std::string mode_name(Mode m) {
  switch (m) {
    case Mode::Plain: return "plain";
    case Mode::Control: return "control";
    case Mode::Exception: return "exception";
  }
  return "?";
}

namespace {

// Appends a copy of `src` with roots hung below `parent` (or as roots).
void append_copy(Arena& dst, const Arena& src, int parent, const std::string& prefix) {
  int base = dst.size();
  for (const auto& n : src.nodes) {
    ArenaNode c = n;
    c.parent = n.parent < 0 ? parent : n.parent + base;
    c.name = prefix + n.name;
    dst.nodes.push_back(std::move(c));
  }
}

Arena sum_impl(const Family& f, bool exn) {
  Arena a;
  a.nodes.push_back({-1, true, false, "q"});
  for (int j = 0; j < f.size(); ++j) {
    std::string tag = "a" + std::to_string(j);
    a.nodes.push_back({0, false, false, tag});
    append_copy(a, *f.members[j], a.size() - 1, tag + ".");
  }
  if (exn) a.nodes.push_back({0, false, true, "e"});
  return a;
}

}  // namespace

Arena empty_arena() { return {}; }

Arena product(const std::vector<const Arena*>& parts) {
  Arena a;
  for (size_t k = 0; k < parts.size(); ++k)
    append_copy(a, *parts[k], -1, parts.size() == 1 ? "" : std::to_string(k) + ".");
  return a;
}

Arena product(const Arena& a, const Arena& b) { return product({&a, &b}); }

Arena function_space(const Arena& a, const Arena& b) {
  Arena r = b;
  for (int root : b.roots()) append_copy(r, a, root, b.nodes[root].name + ">");
  return r;
}

Arena lifted_sum(const Family& f) { return sum_impl(f, false); }
Arena exn_lifted_sum(const Family& f) { return sum_impl(f, true); }

Arena relabel_answers_as_questions(const Arena& a) {
  Arena r = a;
  for (auto& n : r.nodes) n.question = true;
  return r;
}

Arena forget_exn(const Arena& a) {
  Arena r = a;
  for (auto& n : r.nodes) n.exn_answer = false;
  return r;
}

Arena erase_exception_answers(const Arena& a, std::vector<int>* old_to_new) {
  Arena r;
  std::vector<int> map(a.size(), -1);
  for (int i = 0; i < a.size(); ++i) {
    if (a.nodes[i].exn_answer) continue;
    ArenaNode n = a.nodes[i];
    n.parent = n.parent < 0 ? -1 : map[n.parent];
    map[i] = r.size();
    r.nodes.push_back(std::move(n));
  }
  if (old_to_new) *old_to_new = std::move(map);
  return r;
}

int product_offset(const std::vector<const Arena*>& parts, int k) {
  int off = 0;
  for (int i = 0; i < k; ++i) off += parts[i]->size();
  return off;
}

int graft_node(const Arena& a, const Arena& b, int root_index, int n) {
  return b.size() + root_index * a.size() + n;
}

int sum_answer(const Family& f, int j) {
  int off = 1;
  for (int i = 0; i < j; ++i) off += 1 + f.members[i]->size();
  return off;
}

int sum_member_node(const Family& f, int j, int n) { return sum_answer(f, j) + 1 + n; }

int sum_exn_answer(const Family& f) { return sum_answer(f, f.size()); }

Arena computation_arena(const Family& f, Mode mode) {
  return mode == Mode::Exception ? exn_lifted_sum(f) : lifted_sum(f);
}

namespace {

struct ArrowParts {
  Arena cod;
  std::vector<Arena> comps;
};

ArrowParts arrow_parts(const Family& s, const Family& t, Mode mode) {
  ArrowParts p{computation_arena(t, mode), {}};
  for (const auto& si : s.members) p.comps.push_back(function_space(*si, p.cod));
  return p;
}

int arrow_comp_offset(const ArrowParts& p, int i) {
  int off = 0;
  for (int k = 0; k < i; ++k) off += p.comps[k].size();
  return off;
}

}  // namespace

Arena arrow_arena(const Family& s, const Family& t, Mode mode) {
  auto p = arrow_parts(s, t, mode);
  std::vector<const Arena*> parts;
  for (const auto& c : p.comps) parts.push_back(&c);
  return product(parts);
}

int arrow_cod_node(const Family& s, const Family& t, Mode mode, int i, int n) {
  auto p = arrow_parts(s, t, mode);
  return arrow_comp_offset(p, i) + n;
}

int arrow_arg_node(const Family& s, const Family& t, Mode mode, int i, int n) {
  auto p = arrow_parts(s, t, mode);
  return arrow_comp_offset(p, i) + graft_node(*s.members[i], p.cod, 0, n);
}

int pair_index(const Family&, const Family& right, int i, int j) { return i * right.size() + j; }

int inj_index(const Family& left, int which, int i) { return which == 1 ? i : left.size() + i; }

Family denote_type(const TypePtr& t, Mode mode) {
  Family f;
  switch (t->kind) {
    case TypeKind::Zero:
      return f;
    case TypeKind::One:
      f.members.push_back(std::make_shared<Arena>());
      return f;
    case TypeKind::Prod: {
      auto l = denote_type(t->left, mode);
      auto r = denote_type(t->right, mode);
      for (const auto& a : l.members)
        for (const auto& b : r.members) f.members.push_back(std::make_shared<Arena>(product(*a, *b)));
      return f;
    }
    case TypeKind::Sum: {
      f = denote_type(t->left, mode);
      for (auto& b : denote_type(t->right, mode).members) f.members.push_back(b);
      return f;
    }
    case TypeKind::Arrow:
      f.members.push_back(
          std::make_shared<Arena>(arrow_arena(denote_type(t->left, mode), denote_type(t->right, mode), mode)));
      return f;
  }
  throw std::logic_error("denote_type: unknown type");
}

std::vector<std::vector<int>> cps_iso(const TypePtr& t) {
  switch (t->kind) {
    case TypeKind::Zero:
      return {};
    case TypeKind::One:
      return {{}};
    case TypeKind::Prod: {
      auto l = cps_iso(t->left);
      auto r = cps_iso(t->right);
      auto lc = denote_type(cps_translate_type(t->left), Mode::Plain);
      std::vector<std::vector<int>> out;
      for (size_t i = 0; i < l.size(); ++i)
        for (const auto& rj : r) {
          auto phi = l[i];
          int off = lc.members[i]->size();
          for (int n : rj) phi.push_back(off + n);
          out.push_back(std::move(phi));
        }
      return out;
    }
    case TypeKind::Sum: {
      auto out = cps_iso(t->left);
      for (auto& p : cps_iso(t->right)) out.push_back(std::move(p));
      return out;
    }
    case TypeKind::Arrow: {
      // U_C(Π_i (S_i ⇒ Σ⟦T⟧)) ≅ Π_i ((S^C_i × Π_j (T^C_j ⇒ Σ0)) ⇒ Σ0):
      // the root goes to the root, a_j to the j-th continuation question.
      auto s = denote_type(t->left, Mode::Plain);
      auto tt = denote_type(t->right, Mode::Plain);
      auto sc = denote_type(cps_translate_type(t->left), Mode::Plain);
      auto tc = denote_type(cps_translate_type(t->right), Mode::Plain);
      auto phi_s = cps_iso(t->left);
      auto phi_t = cps_iso(t->right);
      Family none;
      Family kont{{std::make_shared<Arena>(arrow_arena(tc, none, Mode::Plain))}};
      Family args;
      for (const auto& m : sc.members) args.members.push_back(std::make_shared<Arena>(product(*m, *kont.members[0])));
      auto src = arrow_parts(s, tt, Mode::Plain);
      auto dst = arrow_parts(args, none, Mode::Plain);
      std::vector<int> phi(arrow_arena(s, tt, Mode::Plain).size(), -1);
      for (int i = 0; i < s.size(); ++i) {
        int so = arrow_comp_offset(src, i);
        int d = arrow_comp_offset(dst, i);
        auto to_dst_arg = [&](int n) { return d + graft_node(*args.members[i], dst.cod, 0, n); };
        phi[so] = d;
        for (int j = 0; j < tt.size(); ++j) {
          int kroot = arrow_cod_node(tc, none, Mode::Plain, j, 0);
          phi[so + sum_answer(tt, j)] = to_dst_arg(sc.members[i]->size() + kroot);
          for (int n = 0; n < tt.members[j]->size(); ++n) {
            int kn = arrow_arg_node(tc, none, Mode::Plain, j, phi_t[j][n]);
            phi[so + sum_member_node(tt, j, n)] = to_dst_arg(sc.members[i]->size() + kn);
          }
        }
        for (int n = 0; n < s.members[i]->size(); ++n)
          phi[so + graft_node(*s.members[i], src.cod, 0, n)] = to_dst_arg(phi_s[i][n]);
      }
      return {phi};
    }
  }
  throw std::logic_error("cps_iso: unknown type");
}

std::string validate_iso(const Arena& from, const Arena& to, const std::vector<int>& phi) {
  if (from.size() != to.size() || static_cast<int>(phi.size()) != from.size()) return "size mismatch";
  std::vector<bool> hit(to.size(), false);
  for (int n = 0; n < from.size(); ++n) {
    int m = phi[n];
    if (m < 0 || m >= to.size() || hit[m]) return "not a bijection at " + from.nodes[n].name;
    hit[m] = true;
    if (from.nodes[n].question != to.nodes[m].question) return "label mismatch at " + from.nodes[n].name;
    int p = from.nodes[n].parent;
    int q = to.nodes[m].parent;
    if ((p < 0) != (q < 0) || (p >= 0 && phi[p] != q)) return "enabling mismatch at " + from.nodes[n].name;
  }
  return "";
}

std::string arena_to_dot(const Arena& a) {
  std::ostringstream out;
  for (const auto& n : a.nodes) {
    out << (n.parent < 0 ? std::string("*") : a.nodes[n.parent].name) << " -> " << n.name << ' '
        << (n.question ? 'Q' : 'A');
    if (n.exn_answer) out << " E";
    out << '\n';
  }
  return out.str();
}

std::vector<TypePtr> enumerate_types(int max_size) {
  // by_size[k]: all types with exactly k constructors
  std::vector<std::vector<TypePtr>> by_size(max_size + 1);
  if (max_size >= 1) by_size[1] = {zero_type(), one_type()};
  for (int k = 3; k <= max_size; ++k)
    for (int l = 1; l < k - 1; ++l)
      for (const auto& a : by_size[l])
        for (const auto& b : by_size[k - 1 - l]) {
          by_size[k].push_back(prod_type(a, b));
          by_size[k].push_back(sum_type(a, b));
          by_size[k].push_back(arrow_type(a, b));
        }
  std::vector<TypePtr> all;
  for (const auto& v : by_size) all.insert(all.end(), v.begin(), v.end());
  return all;
}

}  // namespace ctlgames
