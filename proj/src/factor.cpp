#include "ctlgames/strategies.hpp"

namespace ctlgames {

namespace {

// The codomain part of a view, with the map back to view indices.
struct CodView {
  Position sub;
  std::vector<int> back;
};

CodView cod_view(const Position& v) {
  std::vector<bool> keep(v.size());
  CodView c;
  for (size_t i = 0; i < v.size(); ++i) {
    keep[i] = v[i].side == 1;
    if (keep[i]) c.back.push_back(static_cast<int>(i));
  }
  c.sub = restrict(v, keep);
  return c;
}

// Occurrence of the initial move of i's thread.
int thread_root(const Position& v, int i) {
  while (v[i].just >= 0) i = v[i].just;
  return i;
}

Move to_view(Move m, const CodView& c) {
  m.side = 1;
  if (m.just >= 0) m.just = c.back[m.just];
  if (m.ctl >= 0) m.ctl = c.back[m.ctl];
  return m;
}

// ---------------------------------------------------------------- callcc

// τ : C ⇒ A with C the callcc_{1,0} arena; local and Player well-bracketed.
class CallccFactor : public Strategy {
 public:
  enum { kLabel = 0, kCaught = 1, kOk = 2, kDone = 3, kJump = 4 };

  explicit CallccFactor(StrategyPtr sigma)
      : Strategy(Game{std::make_shared<Arena>(callcc_arena(one_type(), zero_type(), Mode::Control)), sigma->game().cod},
                 Mode::Control),
        sigma_(std::move(sigma)) {}

  Response respond(const Position& v, Fuel& fuel) const override {
    const Game& g = game();
    int k = static_cast<int>(v.size()) - 1;
    const Move& m = v[k];
    if (m.side == 1 && is_question(g, m)) return local({0, kLabel, thread_root(v, k), kNoCtl}, v);

    CodView c = cod_view(v);
    Response r = sigma_->respond(c.sub, fuel);
    if (r.kind != Response::Play) return r;
    Move want = to_view(r.move, c);
    int p = pending(g, v);
    if (!is_question(g, want)) {
      if (p == want.just) return Response::play(want);
      return jump_to(want.just, v);
    }
    int target = want.ctl;
    if (chain_target(v, p) == target) {
      want.ctl = p < 0 ? kStar : p;
      return Response::play(want);
    }
    if (target == kStar) return Response{Response::NoWitness, {}};
    return jump_to(target, v);
  }

 private:
  Response local(Move m, const Position& v) const {
    int p = pending(game(), v);
    m.ctl = p < 0 ? kStar : p;
    return Response::play(m);
  }

  // Jump through the continuation captured right after O's question x; the
  // caught answer makes x pending again.
  Response jump_to(int x, const Position& v) const {
    int ok = x + 2;
    if (ok >= static_cast<int>(v.size()) || v[x + 1].side != 0 || v[x + 1].node != kLabel || v[ok].node != kOk)
      return Response{Response::NoWitness, {}};
    return local({0, kJump, ok, kNoCtl}, v);
  }

  // The visible move a control pointer to p reaches, following hidden moves.
  static int chain_target(const Position& v, int p) {
    while (p >= 0 && v[p].side == 0) p = v[p].ctl;
    return p < 0 ? kStar : p;
  }

  StrategyPtr sigma_;
};

// ---------------------------------------------------------------- exn

// τ : E ⇒ A with E the exn_C arena; control-blind.
class ExnFactor : public Strategy {
 public:
  enum { kQ = 0, kA = 1, kTry = 2, kCaught = 3, kOk = 4, kRaise = 5 };

  explicit ExnFactor(StrategyPtr sigma)
      : Strategy(Game{std::make_shared<Arena>(exn_arena(Mode::Control)), sigma->game().cod}, Mode::Control),
        sigma_(std::move(sigma)) {}

  Response respond(const Position& v, Fuel& fuel) const override {
    const Game& g = game();
    int k = static_cast<int>(v.size()) - 1;
    const Move& m = v[k];
    int a = find(v, kA);
    if (m.side == 1 && m.just < 0) {
      if (find(v, kQ) >= 0) return Response::silent();
      return Response::play({0, kQ, k, k});
    }
    if (m.side == 0 && m.node == kA) return Response::play({0, kTry, k, kStar});
    if (m.side == 1 && is_question(g, m)) {
      int ok = m.ctl == kStar ? base_ok(v) : m.ctl - 1;
      return Response::play({0, kRaise, a, ok});
    }

    CodView c = cod_view(v);
    reveal_control(v, c);
    Response r = sigma_->respond(c.sub, fuel);
    if (r.kind != Response::Play) return r;
    Move want = to_view(r.move, c);
    if (!is_question(g, want)) return Response::play(want);
    bool fresh_ok = m.side == 0 && m.node == kOk && m.just != find(v, kTry);
    if (fresh_ok) {
      want.ctl = k;
      return Response::play(want);
    }
    return Response::play({0, kTry, a, want.ctl});
  }

 private:
  static int find(const Position& v, int node) {
    for (size_t i = 0; i < v.size(); ++i)
      if (v[i].side == 0 && v[i].node == node) return static_cast<int>(i);
    return -1;
  }

  static int base_ok(const Position& v) {
    int t = find(v, kTry);
    return t < 0 ? kStar : t + 1;
  }

  // Control pointers rebuilt from hidden moves only: Opponent's from the try
  // each caught answers, Player's from the try guarding the question.
  static void reveal_control(const Position& v, CodView& c) {
    std::vector<int> sub_of(v.size(), -1);
    for (size_t i = 0; i < c.back.size(); ++i) sub_of[c.back[i]] = static_cast<int>(i);
    for (size_t i = 0; i < c.back.size(); ++i) {
      int at = c.back[i];
      Move& m = c.sub[i];
      if (m.ctl == kNoCtl) continue;
      m.ctl = kStar;
      if (at % 2 != 0) {
        // Player question: the target its guarding try was given
        int d = v[at - 2].ctl;
        if (d >= 0) m.ctl = sub_of[d];
        continue;
      }
      // raise follows at+1, caught at+2
      if (at + 2 < static_cast<int>(v.size()) && v[at + 2].side == 0 && v[at + 2].node == kCaught) {
        // the first try stands for *; any other is followed by ok and the question it guards
        int t = v[at + 2].just;
        if (t != find(v, kTry)) m.ctl = sub_of[t + 2];
      }
    }
  }

  StrategyPtr sigma_;
};

}  // namespace

StrategyPtr factor_callcc(StrategyPtr sigma) { return std::make_shared<CallccFactor>(std::move(sigma)); }
StrategyPtr factor_exn(StrategyPtr sigma) { return std::make_shared<ExnFactor>(std::move(sigma)); }

}  // namespace ctlgames
