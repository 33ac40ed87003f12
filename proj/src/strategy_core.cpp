#include <map>
#include <sstream>

#include "ctlgames/strategies.hpp"

namespace ctlgames {

std::string response_to_string(const Game& g, const Response& r) {
  switch (r.kind) {
    case Response::Silent: return "silent";
    case Response::OutOfFuel: return "out-of-fuel";
    case Response::NoWitness: return "no-witness";
    case Response::Play: break;
  }
  std::ostringstream out;
  out << move_id(g, r.move) << " just=" << (r.move.just < 0 ? std::string("-") : std::to_string(r.move.just))
      << " ctl="
      << (r.move.ctl == kStar ? std::string("*") : r.move.ctl < 0 ? std::string("-") : std::to_string(r.move.ctl));
  return out.str();
}

namespace {

int pending_ctl(const Game& g, const Position& s) {
  int p = pending(g, s);
  return p < 0 ? kStar : p;
}

Response with_ctl(const Game& g, Mode mode, const Position& s, Move m) {
  m.ctl = (mode == Mode::Control && is_question(g, m)) ? pending_ctl(g, s) : kNoCtl;
  return Response::play(m);
}

// ---------------------------------------------------------------- copycat

class Copycat : public Strategy {
 public:
  Copycat(Game g, Mode mode, std::map<NodeRef, NodeRef> reply) : Strategy(std::move(g), mode), reply_(std::move(reply)) {}

  Response respond(const Position& s, Fuel&) const override {
    int k = static_cast<int>(s.size()) - 1;
    const Move& m = s[k];
    auto it = reply_.find({m.side, m.node});
    if (it == reply_.end()) return Response::silent();
    int just = m.just < 0 ? k : (m.just % 2 == 0 ? m.just + 1 : m.just - 1);
    return with_ctl(game(), mode(), s, {it->second.first, it->second.second, just, kNoCtl});
  }

 private:
  std::map<NodeRef, NodeRef> reply_;
};

// ---------------------------------------------------------------- compose

class Compose : public Strategy {
 public:
  Compose(StrategyPtr f, StrategyPtr g)
      : Strategy(Game{f->game().dom, g->game().cod}, f->mode()), f_(std::move(f)), g_(std::move(g)) {}

  Response respond(const Position& s, Fuel& fuel) const override {
    int n = static_cast<int>(s.size());
    int len = n - 1;
    State st;
    for (; len > 0; len -= 2) {
      auto it = cache_.find(Position(s.begin(), s.begin() + len));
      if (it != cache_.end()) {
        st = it->second;
        break;
      }
    }
    for (int i = len; i < n; i += 2) {
      Response r = process(st, s, i, fuel);
      if (r.kind != Response::Play) return r;
      st.ext.push_back(r.move);
      if (i + 1 < n && r.move != s[i + 1]) return Response::silent();
      cache_[st.ext] = st;
      if (i + 1 >= n) return r;
    }
    return Response::silent();
  }

 private:
  enum Comp { A = 0, B = 1, C = 2 };
  struct IMove {
    int comp, node, just, ctl;
  };
  struct View {
    Position pos;
    std::vector<int> to_u;
  };
  struct State {
    Position ext;
    std::vector<IMove> u;
    std::vector<int> ext_to_u, u_to_ext, u_to_f, u_to_g;
    View f, g;
  };

  static bool in_view(int comp, bool left) { return left ? comp != C : comp != A; }

  static void push_u(State& st, IMove m) {
    st.u.push_back(m);
    st.u_to_ext.push_back(-1);
    st.u_to_f.push_back(-1);
    st.u_to_g.push_back(-1);
  }

  // Adds u-move `ui` (a move in the view) to the view of f (left) or g.
  static void deliver(State& st, int ui, bool left) {
    const IMove& x = st.u[ui];
    auto& to_view = left ? st.u_to_f : st.u_to_g;
    View& v = left ? st.f : st.g;
    Move m;
    m.side = left ? (x.comp == A ? 0 : 1) : (x.comp == B ? 0 : 1);
    m.node = x.node;
    int j = x.just;
    while (j >= 0 && !in_view(st.u[j].comp, left)) j = st.u[j].just;
    m.just = j < 0 ? -1 : to_view[j];
    if (x.ctl >= 0) {
      int c = x.ctl;
      while (c >= 0 && !in_view(st.u[c].comp, left)) c = st.u[c].ctl;
      m.ctl = c >= 0 ? to_view[c] : kStar;
    } else {
      m.ctl = x.ctl;
    }
    to_view[ui] = static_cast<int>(v.pos.size());
    v.pos.push_back(m);
    v.to_u.push_back(ui);
  }

  Response process(State& st, const Position& s, int i, Fuel& fuel) const {
    const Move& m = s[i];
    st.ext.push_back(m);
    int comp = m.side == 0 ? A : C;
    push_u(st, {comp, m.node, m.just < 0 ? -1 : st.ext_to_u[m.just], m.ctl >= 0 ? st.ext_to_u[m.ctl] : m.ctl});
    int ui = static_cast<int>(st.u.size()) - 1;
    st.u_to_ext[ui] = i;
    st.ext_to_u.push_back(ui);
    bool left = comp == A;
    deliver(st, ui, left);
    std::int64_t hidden = 0;
    for (;;) {
      View& v = left ? st.f : st.g;
      Response r = (left ? f_ : g_)->respond(v.pos, fuel);
      if (r.kind != Response::Play) return r;
      const Move& pm = r.move;
      int pc = left ? (pm.side == 0 ? A : B) : (pm.side == 0 ? B : C);
      push_u(st, {pc, pm.node, pm.just < 0 ? -1 : v.to_u[pm.just], pm.ctl >= 0 ? v.to_u[pm.ctl] : pm.ctl});
      int pi = static_cast<int>(st.u.size()) - 1;
      (left ? st.u_to_f : st.u_to_g)[pi] = static_cast<int>(v.pos.size());
      v.pos.push_back(pm);
      v.to_u.push_back(pi);
      if (pc == B) {
        if (++hidden > fuel.per_query || --fuel.total < 0) return Response::out_of_fuel();
        left = !left;
        deliver(st, pi, left);
        continue;
      }
      // visible: reroute pointers through hidden moves
      Move out;
      out.side = pc == A ? 0 : 1;
      out.node = pm.node;
      int j = st.u[pi].just;
      while (j >= 0 && st.u[j].comp == B) j = st.u[j].just;
      out.just = j < 0 ? -1 : st.u_to_ext[j];
      int c = st.u[pi].ctl;
      if (c >= 0) {
        while (c >= 0 && st.u[c].comp == B) c = st.u[c].ctl;
        out.ctl = c >= 0 ? st.u_to_ext[c] : kStar;
      } else {
        out.ctl = c;
      }
      st.u_to_ext[pi] = i + 1;
      st.ext_to_u.push_back(pi);
      return Response::play(out);
    }
  }

  StrategyPtr f_, g_;
  mutable std::map<Position, State> cache_;
};

// ---------------------------------------------------------------- pairing

class Pairing : public Strategy {
 public:
  Pairing(Game g, Mode mode, std::vector<ArenaPtr> cods, std::vector<std::function<StrategyPtr()>> make)
      : Strategy(std::move(g), mode), cods_(std::move(cods)), make_(std::move(make)), built_(make_.size()) {
    int off = 0;
    for (const auto& c : cods_) {
      offsets_.push_back(off);
      off += c->size();
    }
  }

  Response respond(const Position& s, Fuel& fuel) const override {
    std::vector<int> part(s.size());
    for (size_t i = 0; i < s.size(); ++i) part[i] = s[i].just < 0 ? part_of(s[i].node) : part[s[i].just];
    int k = part.back();
    std::vector<bool> keep(s.size());
    for (size_t i = 0; i < s.size(); ++i) keep[i] = part[i] == k;
    std::vector<int> idx;
    Position sub = restrict(s, keep, &idx);
    for (auto& m : sub)
      if (m.side == 1) m.node -= offsets_[k];
    Response r = get(k)->respond(sub, fuel);
    if (r.kind != Response::Play) return r;
    std::vector<int> back;
    for (size_t i = 0; i < s.size(); ++i)
      if (keep[i]) back.push_back(static_cast<int>(i));
    Move m = r.move;
    if (m.side == 1) m.node += offsets_[k];
    if (m.just >= 0) m.just = back[m.just];
    if (m.ctl >= 0) m.ctl = back[m.ctl];
    return Response::play(m);
  }

 private:
  int part_of(int node) const {
    int k = static_cast<int>(offsets_.size()) - 1;
    while (offsets_[k] > node) --k;
    return k;
  }
  StrategyPtr get(int k) const {
    if (!built_[k]) built_[k] = make_[k]();
    return built_[k];
  }

  std::vector<ArenaPtr> cods_;
  std::vector<std::function<StrategyPtr()>> make_;
  mutable std::vector<StrategyPtr> built_;
  std::vector<int> offsets_;
};

// ---------------------------------------------------------------- rename

class Rename : public Strategy {
 public:
  Rename(StrategyPtr inner, Game outer, std::map<NodeRef, NodeRef> map)
      : Strategy(std::move(outer), inner->mode()), inner_(std::move(inner)), fwd_(std::move(map)) {
    for (const auto& [a, b] : fwd_) back_[b] = a;
  }

  Response respond(const Position& s, Fuel& fuel) const override {
    Position in = s;
    for (auto& m : in) {
      auto it = back_.find({m.side, m.node});
      if (it == back_.end()) return Response::silent();
      m.side = it->second.first;
      m.node = it->second.second;
    }
    Response r = inner_->respond(in, fuel);
    if (r.kind != Response::Play) return r;
    auto it = fwd_.find({r.move.side, r.move.node});
    if (it == fwd_.end()) throw std::logic_error("rename: unmapped move");
    r.move.side = it->second.first;
    r.move.node = it->second.second;
    return r;
  }

 private:
  StrategyPtr inner_;
  std::map<NodeRef, NodeRef> fwd_, back_;
};

class Lazy : public Strategy {
 public:
  Lazy(Game g, Mode mode, std::function<StrategyPtr()> make) : Strategy(std::move(g), mode), make_(std::move(make)) {}
  Response respond(const Position& s, Fuel& fuel) const override {
    if (!built_) built_ = make_();
    return built_->respond(s, fuel);
  }

 private:
  std::function<StrategyPtr()> make_;
  mutable StrategyPtr built_;
};

class Bottom : public Strategy {
 public:
  using Strategy::Strategy;
  Response respond(const Position&, Fuel&) const override { return Response::silent(); }
};

// ---------------------------------------------------------------- kleisli

class Kleisli : public Strategy {
 public:
  Kleisli(ArenaPtr g, Family s, Family t, Mode mode, std::function<StrategyPtr(int)> body)
      : Strategy(Game{std::make_shared<Arena>(product(*g, computation_arena(s, mode))),
                      std::make_shared<Arena>(computation_arena(t, mode))},
                 mode),
        gsize_(g->size()),
        s_(std::move(s)),
        t_(std::move(t)),
        body_(std::move(body)),
        built_(s_.size()) {}

  Response respond(const Position& s, Fuel& fuel) const override {
    constexpr int kRoot = -1, kOwn = -2;
    int n = static_cast<int>(s.size());
    int qs = gsize_;  // the inner question
    std::vector<int> tag(n);
    for (int i = 0; i < n; ++i) {
      const Move& m = s[i];
      if (m.side == 1 && m.just < 0) {
        tag[i] = kRoot;
      } else if (i % 2 == 0) {
        if (m.side == 0 && game().dom->nodes[m.node].parent == qs)
          tag[i] = game().dom->nodes[m.node].exn_answer ? kOwn : i;
        else
          tag[i] = tag[m.just];
      } else {
        tag[i] = tag[i - 1] >= 0 ? tag[i - 1] : kOwn;
      }
    }
    int k = n - 1;
    const Move& m = s[k];
    if (tag[k] == kRoot) return with_ctl(game(), mode(), s, {0, qs, k, kNoCtl});
    if (tag[k] == kOwn) {
      if (!game().dom->nodes[m.node].exn_answer) return Response::silent();
      int root = s[m.just].just;
      return Response::play({1, sum_exn_answer(t_), root, kNoCtl});
    }
    int alpha = tag[k];
    int root = s[s[alpha].just].just;
    int j = answer_index(s[alpha].node - gsize_);
    std::vector<bool> keep(n);
    std::vector<int> back;
    for (int i = 0; i < n; ++i) {
      keep[i] = i == root || (tag[i] == alpha && i != alpha);
      if (keep[i]) back.push_back(i);
    }
    Position sub = restrict(s, keep);
    for (auto& x : sub)
      if (x.side == 0 && x.node >= gsize_) x.node = gsize_ + (x.node - gsize_ - sum_member_node(s_, j, 0));
    Response r = get(j)->respond(sub, fuel);
    if (r.kind != Response::Play) return r;
    Move out = r.move;
    bool s_root = false;
    if (out.side == 0 && out.node >= gsize_) {
      int inner = out.node - gsize_;
      s_root = s_.members[j]->nodes[inner].parent < 0;
      out.node = gsize_ + sum_member_node(s_, j, inner);
    }
    if (out.just >= 0) out.just = (s_root && out.just == 0) ? alpha : back[out.just];
    if (out.ctl >= 0) out.ctl = back[out.ctl];
    return Response::play(out);
  }

 private:
  int answer_index(int node_in_sum) const {
    for (int j = 0; j < s_.size(); ++j)
      if (sum_answer(s_, j) == node_in_sum) return j;
    throw std::logic_error("kleisli: not an answer");
  }
  StrategyPtr get(int j) const {
    if (!built_[j]) built_[j] = body_(j);
    return built_[j];
  }

  int gsize_;
  Family s_, t_;
  std::function<StrategyPtr(int)> body_;
  mutable std::vector<StrategyPtr> built_;
};

// ---------------------------------------------------------------- lifts

class Hat : public Strategy {
 public:
  explicit Hat(StrategyPtr inner) : Strategy(inner->game(), Mode::Control), inner_(std::move(inner)) {}
  Response respond(const Position& s, Fuel& fuel) const override {
    Position plain = s;
    for (auto& m : plain) m.ctl = kNoCtl;
    Response r = inner_->respond(plain, fuel);
    if (r.kind != Response::Play) return r;
    return with_ctl(game(), Mode::Control, s, r.move);
  }

 private:
  StrategyPtr inner_;
};

class Tilde : public Strategy {
 public:
  Tilde(StrategyPtr inner, Game g) : Strategy(std::move(g), Mode::Exception), inner_(std::move(inner)), k_(k_game(game())) {
    if (!arena_equal(*k_.game.dom, *inner_->game().dom) || !arena_equal(*k_.game.cod, *inner_->game().cod))
      throw ArenaMismatch("tilde: strategy is not on the erased arena");
  }

  Response respond(const Position& s, Fuel& fuel) const override {
    const Game& g = game();
    if (is_exn_move(g, s.back())) {
      int p = pending(g, s);
      if (p < 0 || polarity(g, s[p]) != Player::O || !is_question(g, s[p])) return Response::silent();
      const Arena& a = s[p].side == 0 ? *g.dom : *g.cod;
      return Response::play({s[p].side, a.exn_answer_of(s[p].node), p, kNoCtl});
    }
    std::vector<bool> keep(s.size());
    std::vector<int> back;
    for (size_t i = 0; i < s.size(); ++i) {
      keep[i] = !is_exn_move(g, s[i]);
      if (keep[i]) back.push_back(static_cast<int>(i));
    }
    Position sub = restrict(s, keep);
    for (auto& m : sub) m.node = (m.side == 0 ? k_.dom_map : k_.cod_map)[m.node];
    Response r = inner_->respond(sub, fuel);
    if (r.kind != Response::Play) return r;
    Move out = r.move;
    out.node = (out.side == 0 ? k_.dom_back : k_.cod_back)[out.node];
    if (out.just >= 0) out.just = back[out.just];
    out.ctl = kNoCtl;
    return Response::play(out);
  }

 private:
  StrategyPtr inner_;
  KGame k_;
};

}  // namespace

StrategyPtr copycat(Game g, Mode mode, const std::vector<std::pair<NodeRef, NodeRef>>& links,
                    const std::vector<std::pair<NodeRef, NodeRef>>& scripts) {
  std::map<NodeRef, NodeRef> reply;
  auto add = [&](NodeRef from, NodeRef to) {
    if (polarity(g, from.first, from.second) == Player::O) reply[from] = to;
  };
  for (const auto& [a, b] : links) {
    add(a, b);
    add(b, a);
  }
  for (const auto& [a, b] : scripts) add(a, b);
  return std::make_shared<Copycat>(std::move(g), mode, std::move(reply));
}

StrategyPtr identity(ArenaPtr a, Mode mode) {
  std::vector<std::pair<NodeRef, NodeRef>> links;
  for (int n = 0; n < a->size(); ++n) links.push_back({{1, n}, {0, n}});
  return copycat(Game{a, a}, mode, links);
}

StrategyPtr projection(const std::vector<ArenaPtr>& parts, int k, Mode mode) {
  std::vector<const Arena*> raw;
  for (const auto& p : parts) raw.push_back(p.get());
  auto dom = std::make_shared<Arena>(product(raw));
  int off = product_offset(raw, k);
  std::vector<std::pair<NodeRef, NodeRef>> links;
  for (int n = 0; n < parts[k]->size(); ++n) links.push_back({{1, n}, {0, off + n}});
  return copycat(Game{dom, parts[k]}, mode, links);
}

StrategyPtr compose(StrategyPtr sigma, StrategyPtr tau) {
  if (!arena_equal(*sigma->game().cod, *tau->game().dom))
    throw ArenaMismatch("compose: codomain and domain differ");
  if (sigma->mode() != tau->mode()) throw ArenaMismatch("compose: modes differ");
  return std::make_shared<Compose>(std::move(sigma), std::move(tau));
}

StrategyPtr lazy_pairing(ArenaPtr dom, const std::vector<ArenaPtr>& cods,
                         std::vector<std::function<StrategyPtr()>> parts, Mode mode) {
  std::vector<const Arena*> raw;
  for (const auto& c : cods) raw.push_back(c.get());
  auto cod = std::make_shared<Arena>(product(raw));
  return std::make_shared<Pairing>(Game{std::move(dom), cod}, mode, cods, std::move(parts));
}

StrategyPtr pairing(ArenaPtr dom, const std::vector<StrategyPtr>& parts, Mode mode) {
  std::vector<ArenaPtr> cods;
  std::vector<std::function<StrategyPtr()>> make;
  for (const auto& p : parts) {
    if (!arena_equal(*p->game().dom, *dom)) throw ArenaMismatch("pairing: domains differ");
    cods.push_back(p->game().cod);
    make.push_back([p] { return p; });
  }
  return lazy_pairing(std::move(dom), cods, std::move(make), mode);
}

StrategyPtr rename(StrategyPtr inner, Game outer, std::map<NodeRef, NodeRef> map) {
  return std::make_shared<Rename>(std::move(inner), std::move(outer), std::move(map));
}

StrategyPtr lazy(Game g, Mode mode, std::function<StrategyPtr()> make) {
  return std::make_shared<Lazy>(std::move(g), mode, std::move(make));
}

StrategyPtr bottom(Game g, Mode mode) { return std::make_shared<Bottom>(std::move(g), mode); }

StrategyPtr kleisli(ArenaPtr g, const Family& s, const Family& t, Mode mode, std::function<StrategyPtr(int)> body) {
  return std::make_shared<Kleisli>(std::move(g), s, t, mode, std::move(body));
}

StrategyPtr hat(StrategyPtr plain) { return std::make_shared<Hat>(std::move(plain)); }

StrategyPtr tilde(StrategyPtr plain, Game exn_game) {
  return std::make_shared<Tilde>(std::move(plain), std::move(exn_game));
}

}  // namespace ctlgames
