#include "ctlgames/strategies.hpp"

namespace ctlgames {

namespace {

// A variable bound at a fixed index of its type's family.
struct Binding {
  std::string name;
  TypePtr type;
  int index;
  ArenaPtr arena;
};

class Denoter {
 public:
  explicit Denoter(Mode mode) : mode_(mode) {}

  std::pair<int, StrategyPtr> value(const std::vector<Binding>& env, const TermPtr& v) const {
    ArenaPtr g = context_arena(env);
    switch (v->kind) {
      case TermKind::Var: {
        for (int p = static_cast<int>(env.size()) - 1; p >= 0; --p)
          if (env[p].name == v->name) return {env[p].index, projection(parts(env), p, mode_)};
        throw DenoteError("unbound variable " + v->name);
      }
      case TermKind::Unit:
        return {0, bottom(Game{g, std::make_shared<Arena>()}, mode_)};
      case TermKind::Pair: {
        auto [i, l] = value(env, v->a);
        auto [j, r] = value(env, v->b);
        Family lf = family(value_type(env, v->a)), rf = family(value_type(env, v->b));
        return {pair_index(lf, rf, i, j), pairing(g, {l, r}, mode_)};
      }
      case TermKind::Inj1:
      case TermKind::Inj2: {
        if (!v->type) throw DenoteError("injection without its sum type");
        auto [i, s] = value(env, v->a);
        return {inj_index(family(v->type->left), v->kind == TermKind::Inj1 ? 1 : 2, i), s};
      }
      case TermKind::Lambda:
        return {0, lambda(env, v)};
      case TermKind::New:
        return {0, weaken(g, new_constant(v->type, mode_))};
      case TermKind::NewExn:
        return {0, weaken(g, new_exn_constant(mode_))};
      case TermKind::Callcc:
        return {0, weaken(g, callcc_constant(v->type, v->type2, mode_))};
      default:
        throw DenoteError("no denotation for this value form: " + print_term(v));
    }
  }

  StrategyPtr comp(const std::vector<Binding>& env, const TermPtr& m) const {
    ArenaPtr g = context_arena(env);
    switch (m->kind) {
      case TermKind::Return: {
        auto [j, s] = value(env, m->a);
        return compose(s, unit(family(value_type(env, m->a)), j));
      }
      case TermKind::Let: {
        TypePtr st = comp_type(env, m->a);
        Family sf = family(st), tf = family(comp_type(env, m));
        StrategyPtr bound = comp(env, m->a);
        Denoter self = *this;
        auto envc = env;
        auto body = [self, envc, st, sf, m](int j) {
          auto e = envc;
          e.push_back({m->name, st, j, sf.members[j]});
          return self.comp(e, m->b);
        };
        return compose(pairing(g, {identity(g, mode_), bound}, mode_), kleisli(g, sf, tf, mode_, body));
      }
      case TermKind::Void:
        return bottom(Game{g, result_arena(env, m)}, mode_);
      case TermKind::App: {
        TypePtr ft = value_type(env, m->a);
        Family sf = family(ft->left), tf = family(ft->right);
        auto [f0, fs] = value(env, m->a);
        (void)f0;
        auto [k, as] = value(env, m->b);
        auto arr = std::make_shared<Arena>(arrow_arena(sf, tf, mode_));
        auto dom = std::make_shared<Arena>(product(*arr, *sf.members[k]));
        auto cod = std::make_shared<Arena>(computation_arena(tf, mode_));
        std::vector<std::pair<NodeRef, NodeRef>> links;
        for (int n = 0; n < cod->size(); ++n) links.push_back({{1, n}, {0, arrow_cod_node(sf, tf, mode_, k, n)}});
        for (int n = 0; n < sf.members[k]->size(); ++n)
          links.push_back({{0, arrow_arg_node(sf, tf, mode_, k, n)}, {0, arr->size() + n}});
        return compose(pairing(g, {fs, as}, mode_), copycat(Game{dom, cod}, mode_, links));
      }
      case TermKind::Match: {
        TypePtr vt = value_type(env, m->a);
        Family lf = family(vt->left), rf = family(vt->right);
        auto [p, vs] = value(env, m->a);
        int i = p / rf.size(), j = p % rf.size();
        auto e = env;
        e.push_back({m->name, vt->left, i, lf.members[i]});
        e.push_back({m->name2, vt->right, j, rf.members[j]});
        return with_value(g, vs, comp(e, m->b));
      }
      case TermKind::Case: {
        TypePtr vt = value_type(env, m->a);
        Family lf = family(vt->left), rf = family(vt->right);
        auto [p, vs] = value(env, m->a);
        auto e = env;
        if (p < lf.size()) {
          e.push_back({m->name, vt->left, p, lf.members[p]});
          return with_value(g, vs, comp(e, m->b));
        }
        int q = p - lf.size();
        e.push_back({m->name2, vt->right, q, rf.members[q]});
        return with_value(g, vs, comp(e, m->c));
      }
      default:
        throw DenoteError("no denotation for this computation form: " + print_term(m));
    }
  }

 private:
  Family family(const TypePtr& t) const { return denote_type(t, mode_); }

  static std::vector<ArenaPtr> parts(const std::vector<Binding>& env) {
    std::vector<ArenaPtr> out;
    for (const auto& b : env) out.push_back(b.arena);
    return out;
  }

  static ArenaPtr context_arena(const std::vector<Binding>& env) {
    std::vector<const Arena*> raw;
    for (const auto& b : env) raw.push_back(b.arena.get());
    return std::make_shared<Arena>(product(raw));
  }

  static TypingContext context(const std::vector<Binding>& env) {
    TypingContext c;
    for (const auto& b : env) c.vars.emplace_back(b.name, b.type);
    return c;
  }

  TypePtr value_type(const std::vector<Binding>& env, const TermPtr& v) const {
    return typecheck_value(context(env), v);
  }
  TypePtr comp_type(const std::vector<Binding>& env, const TermPtr& m) const {
    return typecheck_comp(context(env), m);
  }
  ArenaPtr result_arena(const std::vector<Binding>& env, const TermPtr& m) const {
    return std::make_shared<Arena>(computation_arena(family(comp_type(env, m)), mode_));
  }

  // η_j : A_j ⇒ ΣA.
  StrategyPtr unit(const Family& f, int j) const {
    auto cod = std::make_shared<Arena>(computation_arena(f, mode_));
    std::vector<std::pair<NodeRef, NodeRef>> links;
    for (int n = 0; n < f.members[j]->size(); ++n) links.push_back({{1, sum_member_node(f, j, n)}, {0, n}});
    return copycat(Game{f.members[j], cod}, mode_, links, {{{1, 0}, {1, sum_answer(f, j)}}});
  }

  // ⟨id, v⟩ ; body, where body lives over the context extended by v's parts.
  StrategyPtr with_value(const ArenaPtr& g, const StrategyPtr& v, const StrategyPtr& body) const {
    return compose(pairing(g, {identity(g, mode_), v}, mode_), body);
  }

  // A closed strategy seen from context g.
  StrategyPtr weaken(const ArenaPtr& g, const StrategyPtr& closed) const {
    std::map<NodeRef, NodeRef> map;
    for (int n = 0; n < closed->game().cod->size(); ++n) map[{1, n}] = {1, n};
    return rename(closed, Game{g, closed->game().cod}, std::move(map));
  }

  // Λ: each component k of Π_k(S_k ⇒ ΣT) is the curried body at x = S_k.
  StrategyPtr lambda(const std::vector<Binding>& env, const TermPtr& v) const {
    ArenaPtr g = context_arena(env);
    TypePtr st = v->type;
    Family sf = family(st);
    TypePtr tt = comp_type(env_with(env, v->name, st), v->a);
    Family tf = family(tt);
    auto cod_t = std::make_shared<Arena>(computation_arena(tf, mode_));
    std::vector<ArenaPtr> cods;
    std::vector<std::function<StrategyPtr()>> thunks;
    for (int k = 0; k < sf.size(); ++k) {
      auto fs = std::make_shared<Arena>(function_space(*sf.members[k], *cod_t));
      cods.push_back(fs);
      Denoter self = *this;
      auto envc = env;
      ArenaPtr sk = sf.members[k];
      thunks.push_back([self, envc, v, st, sk, k, g, fs, cod_t] {
        auto e = envc;
        e.push_back({v->name, st, k, sk});
        StrategyPtr body = self.comp(e, v->a);
        std::map<NodeRef, NodeRef> map;
        for (int n = 0; n < g->size(); ++n) map[{0, n}] = {0, n};
        for (int n = 0; n < sk->size(); ++n) map[{0, g->size() + n}] = {1, graft_node(*sk, *cod_t, 0, n)};
        for (int n = 0; n < cod_t->size(); ++n) map[{1, n}] = {1, n};
        return rename(body, Game{g, fs}, std::move(map));
      });
    }
    return lazy_pairing(g, cods, std::move(thunks), mode_);
  }

  static std::vector<Binding> env_with(std::vector<Binding> env, const std::string& x, const TypePtr& t) {
    env.push_back({x, t, -1, nullptr});
    return env;
  }

  Mode mode_;
};

}  // namespace

StrategyPtr denote(const TermPtr& m, Mode mode) {
  const Denoter d(mode);
  try {
    return d.comp({}, m);
  } catch (const TypeError& e) {
    throw DenoteError(std::string("ill-typed term: ") + e.what());
  }
}

std::pair<int, StrategyPtr> denote_value(const TermPtr& v, Mode mode) {
  const Denoter d(mode);
  try {
    return d.value({}, v);
  } catch (const TypeError& e) {
    throw DenoteError(std::string("ill-typed term: ") + e.what());
  }
}

}  // namespace ctlgames
