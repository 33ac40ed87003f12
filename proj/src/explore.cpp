#include <functional>
#include <map>

#include "ctlgames/strategies.hpp"

namespace ctlgames {

namespace {

bool control_game(const StrategyPtr& s) { return s->mode() == Mode::Control; }

Position strip(Position s) {
  for (auto& m : s) m.ctl = kNoCtl;
  return s;
}

// Depth-first walk over every Opponent move (and control pointer) below
// max_len. `visit` sees each odd position with the reply; returning false
// stops the walk.
void walk(const StrategyPtr& sigma, int max_len, const Fuel& fuel,
          const std::function<bool(const Position&, const Response&)>& visit) {
  const Game& g = sigma->game();
  bool control = control_game(sigma);
  bool stop = false;
  std::function<void(const Position&)> go = [&](const Position& s) {
    if (static_cast<int>(s.size()) + 1 > max_len) return;
    for (const Move& o : opponent_moves(g, s, control)) {
      if (stop) return;
      Position t = s;
      t.push_back(o);
      Fuel f = fuel;
      Response r = sigma->respond(t, f);
      if (!visit(t, r)) {
        stop = true;
        return;
      }
      if (r.kind == Response::Play && static_cast<int>(t.size()) + 1 <= max_len) {
        t.push_back(r.move);
        go(t);
      }
    }
  };
  go({});
}

// ---------------------------------------------------------------- K

class KStrategy : public Strategy {
 public:
  KStrategy(StrategyPtr inner, KGame k) : Strategy(k.game, Mode::Control), inner_(std::move(inner)), k_(std::move(k)) {}

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
      if (i + 1 < n && r.move != s[i + 1]) return Response::silent();
      st.ctl.push_back(s[i]);
      st.ctl.push_back(r.move);
      cache_[st.ctl] = st;
      if (i + 1 >= n) return r;
    }
    return Response::silent();
  }

 private:
  struct State {
    Position ctl, exn;
    std::vector<int> c_to_e, e_to_c;
  };

  const Game& exn_game() const { return inner_->game(); }

  void push_exn(State& st, const Move& m, int c_index) const {
    st.exn.push_back(m);
    st.e_to_c.push_back(c_index);
  }

  // Opponent answers the pending Player question with its exception move.
  bool raise_pending(State& st) const {
    const Game& g = exn_game();
    int p = pending(g, st.exn);
    if (p < 0 || polarity(g, st.exn[p]) != Player::P) return false;
    const Arena& a = st.exn[p].side == 0 ? *g.dom : *g.cod;
    push_exn(st, {st.exn[p].side, a.exn_answer_of(st.exn[p].node), p, kNoCtl}, -1);
    return true;
  }

  Response process(State& st, const Position& s, int i, Fuel& fuel) const {
    const Game& g = exn_game();
    const Move& m = s[i];
    if (is_question(game(), m)) {
      int target = m.ctl == kStar ? -1 : st.c_to_e[m.ctl];
      while (pending(g, st.exn) != target) {
        if (!raise_pending(st)) return Response{Response::NoWitness, {}};
        Response r = inner_->respond(st.exn, fuel);
        if (r.kind == Response::OutOfFuel) return r;
        if (r.kind != Response::Play || !is_exn_move(g, r.move)) return Response{Response::NoWitness, {}};
        push_exn(st, r.move, -1);
      }
    }
    Move e{m.side, (m.side == 0 ? k_.dom_back : k_.cod_back)[m.node], m.just < 0 ? -1 : st.c_to_e[m.just], kNoCtl};
    st.c_to_e.push_back(static_cast<int>(st.exn.size()));
    push_exn(st, e, i);
    for (;;) {
      Response r = inner_->respond(st.exn, fuel);
      if (r.kind != Response::Play) return r;
      if (is_exn_move(g, r.move)) {
        push_exn(st, r.move, -1);
        if (!raise_pending(st)) return Response::silent();
        continue;
      }
      int before = pending(g, st.exn);
      Move c{r.move.side, (r.move.side == 0 ? k_.dom_map : k_.cod_map)[r.move.node], -1, kNoCtl};
      if (r.move.just >= 0) {
        c.just = st.e_to_c[r.move.just];
        if (c.just < 0) return Response::silent();
      }
      if (is_question(g, r.move)) c.ctl = before < 0 ? kStar : st.e_to_c[before];
      st.c_to_e.push_back(static_cast<int>(st.exn.size()));
      push_exn(st, r.move, i + 1);
      return Response::play(c);
    }
  }

  StrategyPtr inner_;
  KGame k_;
  mutable std::map<Position, State> cache_;
};

}  // namespace

std::optional<bool> probe_top(const StrategyPtr& sigma, const Fuel& fuel) {
  const Game& g = sigma->game();
  auto roots = g.cod->roots();
  if (roots.empty()) return false;
  Move q{1, roots.front(), -1, control_game(sigma) ? kStar : kNoCtl};
  Fuel f = fuel;
  Response r = sigma->respond({q}, f);
  if (r.kind == Response::OutOfFuel) return std::nullopt;
  return r.kind == Response::Play && !is_question(g, r.move) && !is_exn_move(g, r.move);
}

Comparison equal_to_depth(const StrategyPtr& sigma, const StrategyPtr& tau, int max_len, const Fuel& fuel) {
  Comparison c;
  if (!arena_equal(*sigma->game().dom, *tau->game().dom) || !arena_equal(*sigma->game().cod, *tau->game().cod))
    throw ArenaMismatch("equal_to_depth: games differ");
  if (sigma->mode() != tau->mode()) throw ArenaMismatch("equal_to_depth: modes differ");
  const Game& g = sigma->game();
  bool control = control_game(sigma);
  std::function<bool(const Position&)> go = [&](const Position& s) {
    if (static_cast<int>(s.size()) + 1 > max_len) return true;
    for (const Move& o : opponent_moves(g, s, control)) {
      Position t = s;
      t.push_back(o);
      Fuel f1 = fuel, f2 = fuel;
      Response a = sigma->respond(t, f1);
      Response b = tau->respond(t, f2);
      ++c.positions;
      if (a.kind == Response::OutOfFuel || b.kind == Response::OutOfFuel) {
        c.inconclusive = true;
        continue;
      }
      if (a.kind == Response::NoWitness || b.kind == Response::NoWitness) {
        ++c.skipped;
        continue;
      }
      if (!(a == b)) {
        c.equal = false;
        c.counterexample = format_trace(g, t) + "left: " + response_to_string(g, a) +
                           "\nright: " + response_to_string(g, b) + "\n";
        return false;
      }
      if (a.kind == Response::Play && static_cast<int>(t.size()) + 1 <= max_len) {
        t.push_back(a.move);
        if (!go(t)) return false;
      }
    }
    return true;
  };
  go({});
  return c;
}

StrategyPtr k_functor(StrategyPtr exn_strategy) {
  if (exn_strategy->mode() != Mode::Exception) throw ArenaMismatch("k_functor: not an exception strategy");
  KGame k = k_game(exn_strategy->game());
  return std::make_shared<KStrategy>(std::move(exn_strategy), std::move(k));
}

std::string find_non_propagating(const StrategyPtr& sigma, int max_len, const Fuel& fuel) {
  const Game& g = sigma->game();
  std::string witness;
  walk(sigma, max_len, fuel, [&](const Position& t, const Response& r) {
    if (!is_exception_propagating(g, Position(t.begin(), t.end() - 1))) return true;
    const Move& o = t.back();
    int p = pending(g, t);
    bool must = is_exn_move(g, o) && p >= 0 && polarity(g, t[p]) == Player::O;
    bool ok = true;
    if (r.kind == Response::Play) {
      Position u = t;
      u.push_back(r.move);
      if (is_exn_move(g, o) || is_exn_move(g, r.move)) ok = is_exception_propagating(g, u);
    } else if (r.kind == Response::Silent) {
      ok = !must;
    }
    if (ok) return true;
    witness = format_trace(g, t) + "reply: " + response_to_string(g, r) + "\n";
    return false;
  });
  return witness;
}

bool is_control_blind(const StrategyPtr& sigma, int max_len, const Fuel& fuel) {
  std::map<Position, Response> seen;
  bool blind = true;
  walk(sigma, max_len, fuel, [&](const Position& t, const Response& r) {
    if (r.kind == Response::OutOfFuel || r.kind == Response::NoWitness) return true;
    Response stripped = r;
    stripped.move.ctl = kNoCtl;
    auto [it, fresh] = seen.emplace(strip(t), stripped);
    if (!fresh && !(it->second == stripped)) blind = false;
    return blind;
  });
  return blind;
}

std::vector<Position> materialize(const StrategyPtr& sigma, int max_len, const Fuel& fuel) {
  std::vector<Position> out;
  walk(sigma, max_len, fuel, [&](const Position& t, const Response& r) {
    if (r.kind == Response::Play && static_cast<int>(t.size()) + 1 <= max_len) {
      Position u = t;
      u.push_back(r.move);
      out.push_back(std::move(u));
    }
    return true;
  });
  return out;
}

}  // namespace ctlgames
