#include "ctlgames/machine.hpp"

#include <sstream>

namespace ctlgames {

StoreTyping MachineConfig::store_typing() const {
  StoreTyping st;
  st.locations = loc_types;
  st.exceptions = exns;
  return st;
}

MachineConfig initial_config(TermPtr program) {
  MachineConfig cfg;
  cfg.comp = std::move(program);
  return cfg;
}

namespace {

bool is_catch_frame(const TermPtr& t) {
  return t->kind == TermKind::App && t->a->kind == TermKind::Catch && t->b->kind == TermKind::Lambda &&
         !free_vars(t->b->a).count(t->b->name);
}

}  // namespace

Decomposition decompose(const TermPtr& comp) {
  Decomposition d;
  TermPtr cur = comp;
  while (true) {
    if (cur->kind == TermKind::Let && cur->a->kind != TermKind::Return) {
      d.context.push_back({Frame::Let, cur->name, cur->b, {}});
      cur = cur->a;
      continue;
    }
    if (is_catch_frame(cur)) {
      d.context.push_back({Frame::Catch, cur->a->name, nullptr, cur->b->name});
      cur = cur->b->a;
      continue;
    }
    if (cur->kind == TermKind::Return && d.context.empty()) {
      d.value = cur->a;
      return d;
    }
    d.redex = cur;
    return d;
  }
}

TermPtr plug(const EvalContext& ctx, TermPtr inner) {
  for (auto it = ctx.rbegin(); it != ctx.rend(); ++it) {
    if (it->kind == Frame::Let) {
      inner = mk_let(it->name, inner, it->body);
    } else {
      inner = mk_app(mk_catch_const(it->name), mk_lambda(it->binder, one_type(), inner));
    }
  }
  return inner;
}

namespace {

StepResult stuck(const std::string& why) {
  StepResult r;
  r.kind = StepResult::Stuck;
  r.description = why;
  return r;
}

}  // namespace

StepResult step(const MachineConfig& cfg) {
  auto d = decompose(cfg.comp);
  StepResult r;
  if (d.terminal()) {
    r.kind = StepResult::Terminal;
    return r;
  }
  r.kind = StepResult::Stepped;
  r.next = cfg;
  const auto& E = d.context;
  const TermPtr& m = d.redex;
  auto done = [&](TermPtr inner, const char* rule) {
    r.next.comp = plug(E, std::move(inner));
    r.rule = rule;
    return r;
  };

  switch (m->kind) {
    case TermKind::Let:
      return done(substitute(m->b, m->name, m->a->a), "let");
    case TermKind::Case: {
      const auto& v = m->a;
      if (v->kind == TermKind::Inj1) return done(substitute(m->b, m->name, v->a), "case");
      if (v->kind == TermKind::Inj2) return done(substitute(m->c, m->name2, v->a), "case");
      return stuck("case on a non-injection: " + print_term(m));
    }
    case TermKind::Match: {
      const auto& v = m->a;
      if (v->kind != TermKind::Pair) return stuck("match on a non-pair: " + print_term(m));
      return done(substitute(substitute(m->b, m->name, v->a), m->name2, v->b), "match");
    }
    case TermKind::Mark:
      r.next.comp = m->a;
      r.rule = "mark";
      return r;
    case TermKind::App:
      break;
    default:
      return stuck("no rule applies to " + print_term(m));
  }

  const auto& f = m->a;
  const auto& v = m->b;
  switch (f->kind) {
    case TermKind::Lambda:
      return done(substitute(f->a, f->name, v), "beta");
    case TermKind::New: {
      auto a = "loc_" + std::to_string(r.next.next_loc++);
      r.next.locs.insert(a);
      if (f->type) r.next.loc_types[a] = f->type;
      return done(mk_return(mk_pair(mk_set(a), mk_get(a))), "new");
    }
    case TermKind::Set:
      r.next.store[f->name] = v;
      return done(mk_return(mk_unit()), "set");
    case TermKind::Get: {
      auto it = cfg.store.find(f->name);
      if (it == cfg.store.end()) return stuck("read of uninitialized location " + f->name);
      return done(mk_return(it->second), "get");
    }
    case TermKind::NewExn: {
      auto e = "exn_" + std::to_string(r.next.next_exn++);
      r.next.exns.insert(e);
      return done(mk_return(mk_pair(mk_catch_const(e), mk_throw_const(e))), "new_exn");
    }
    case TermKind::Throw: {
      for (size_t i = E.size(); i-- > 0;) {
        if (E[i].kind == Frame::Catch && E[i].name == f->name) {
          r.next.comp = plug(EvalContext(E.begin(), E.begin() + static_cast<std::ptrdiff_t>(i)), mk_return(mk_unit()));
          r.rule = "catch";
          return r;
        }
      }
      StepResult u;
      u.kind = StepResult::Uncaught;
      u.exn = f->name;
      return u;
    }
    case TermKind::Catch: {
      // Administrative: bring the handled thunk into the form catch(e) λx.M
      // with x not free in M, so that its body is an evaluation position.
      auto x = fresh_name();
      TermPtr body = v->kind == TermKind::Lambda ? substitute(v->a, v->name, mk_unit()) : mk_app(v, mk_unit());
      return done(mk_app(f, mk_lambda(x, one_type(), body)), "catch-normalize");
    }
    case TermKind::Callcc: {
      auto x = fresh_name();
      auto k = mk_lambda(x, f->type, mk_mark(plug(E, mk_return(mk_var(x))), f->type2));
      return done(mk_app(v, k), "callcc");
    }
    default:
      return stuck("no rule applies to " + print_term(m));
  }
}

namespace {

// Does `t` have the shape E_e[throw(e) ()]?
bool is_throw_context(const TermPtr& t, const std::string& e) {
  TermPtr cur = t;
  while (true) {
    if (cur->kind == TermKind::Let) {
      cur = cur->a;
    } else if (cur->kind == TermKind::App && cur->a->kind == TermKind::Catch && cur->b->kind == TermKind::Lambda) {
      if (cur->a->name == e) return false;
      cur = cur->b->a;
    } else {
      return cur->kind == TermKind::App && cur->a->kind == TermKind::Throw && cur->a->name == e &&
             cur->b->kind == TermKind::Unit;
    }
  }
}

int rules_at(const TermPtr& s, const MachineConfig& cfg) {
  int n = 0;
  auto k = s->kind;
  if (k == TermKind::Case && (s->a->kind == TermKind::Inj1 || s->a->kind == TermKind::Inj2)) ++n;
  if (k == TermKind::Match && s->a->kind == TermKind::Pair) ++n;
  if (k == TermKind::Let && s->a->kind == TermKind::Return) ++n;
  if (k == TermKind::Mark) ++n;
  if (k == TermKind::App) {
    auto fk = s->a->kind;
    bool unit_arg = s->b->kind == TermKind::Unit;
    if (fk == TermKind::Lambda) ++n;
    if (fk == TermKind::New && unit_arg) ++n;
    if (fk == TermKind::NewExn && unit_arg) ++n;
    if (fk == TermKind::Set) ++n;
    if (fk == TermKind::Get && unit_arg && cfg.store.count(s->a->name)) ++n;
    if (fk == TermKind::Callcc) ++n;
    if (fk == TermKind::Catch && s->b->kind == TermKind::Lambda && is_throw_context(s->b->a, s->a->name)) ++n;
  }
  return n;
}

}  // namespace

int count_matching_rules(const MachineConfig& cfg) {
  int n = 0;
  TermPtr cur = cfg.comp;
  while (true) {
    n += rules_at(cur, cfg);
    if (cur->kind == TermKind::Let) {
      cur = cur->a;
    } else if (cur->kind == TermKind::App && cur->a->kind == TermKind::Catch && cur->b->kind == TermKind::Lambda) {
      cur = cur->b->a;
    } else {
      return n;
    }
  }
}

std::string config_to_string(const MachineConfig& cfg) {
  std::ostringstream os;
  os << print_term(cfg.comp) << " || store {";
  bool first = true;
  for (const auto& [a, v] : cfg.store) {
    os << (first ? " " : ", ") << a << " = " << print_term(v);
    first = false;
  }
  os << " } exns {";
  first = true;
  for (const auto& e : cfg.exns) {
    os << (first ? " " : ", ") << e;
    first = false;
  }
  os << " }";
  return os.str();
}

std::string outcome_to_string(const Outcome& o) {
  std::ostringstream os;
  switch (o.kind) {
    case Outcome::Converged:
      os << "converged " << print_term(o.value);
      break;
    case Outcome::UncaughtException:
      os << "uncaught exception " << o.exn;
      break;
    case Outcome::OutOfFuel:
      os << "out of fuel";
      break;
    case Outcome::Stuck:
      os << "stuck: " << o.description;
      break;
  }
  os << " after " << o.steps << " steps";
  return os.str();
}

Outcome run_config(MachineConfig cfg, std::int64_t fuel, const TraceHook& trace) {
  Outcome out;
  for (std::int64_t i = 0;; ++i) {
    if (trace) trace(cfg, i);
    auto d = decompose(cfg.comp);
    if (d.terminal()) {
      out.kind = Outcome::Converged;
      out.value = d.value;
      out.steps = i;
      return out;
    }
    if (i >= fuel) {
      out.kind = Outcome::OutOfFuel;
      out.steps = i;
      return out;
    }
    auto r = step(cfg);
    out.steps = i;
    if (r.kind == StepResult::Uncaught) {
      out.kind = Outcome::UncaughtException;
      out.exn = r.exn;
      return out;
    }
    if (r.kind == StepResult::Stuck) {
      out.kind = Outcome::Stuck;
      out.description = r.description + " in " + config_to_string(cfg);
      return out;
    }
    cfg = std::move(r.next);
  }
}

Outcome run(const TermPtr& program, std::int64_t fuel, const TraceHook& trace) {
  return run_config(initial_config(program), fuel, trace);
}

bool converges(const TermPtr& program, std::int64_t fuel) {
  auto o = run(program, fuel);
  if (o.kind == Outcome::OutOfFuel) throw Inconclusive("no outcome within " + std::to_string(fuel) + " steps");
  return o.kind == Outcome::Converged && o.value->kind == TermKind::Unit;
}

}  // namespace ctlgames
