#include <map>

#include "ctlgames/strategies.hpp"

namespace ctlgames {

namespace {

Family unit_family() { return Family{{std::make_shared<Arena>()}}; }

// Node numbers of the cell arena Σ((Π_k(T_k ⇒ Σ1)) × Σ⟦T⟧).
struct CellLayout {
  Family t, one = unit_family();
  int w_size = 0;
  int base = 2;  // first node of the product below the answer
  explicit CellLayout(const TypePtr& content, Mode mode) : t(denote_type(content, mode)) {
    w_size = arrow_arena(t, one, mode).size();
    mode_ = mode;
  }
  int write(int k) const { return base + arrow_cod_node(t, one, mode_, k, 0); }
  int done(int k) const { return base + arrow_cod_node(t, one, mode_, k, sum_answer(one, 0)); }
  int write_arg(int k, int n) const { return base + arrow_arg_node(t, one, mode_, k, n); }
  int read() const { return base + w_size; }
  int value(int k) const { return base + w_size + sum_answer(t, k); }
  int value_node(int k, int n) const { return base + w_size + sum_member_node(t, k, n); }

 private:
  Mode mode_;
};

// Node numbers of the callcc arena, Π(X ⇒ Σ⟦T⟧) with X = (Π_k(T_k ⇒ Σ⟦S⟧)) ⇒ Σ⟦T⟧.
struct CallccLayout {
  Family t, s, k, f;
  Mode mode;
  CallccLayout(const TypePtr& tt, const TypePtr& ss, Mode m)
      : t(denote_type(tt, m)),
        s(denote_type(ss, m)),
        k(denote_type(arrow_type(tt, ss), m)),
        f(denote_type(arrow_type(arrow_type(tt, ss), tt), m)),
        mode(m) {}
  int label() const { return 0; }
  int caught(int j) const { return arrow_cod_node(f, t, mode, 0, sum_answer(t, j)); }
  int caught_node(int j, int n) const { return arrow_cod_node(f, t, mode, 0, sum_member_node(t, j, n)); }
  int in_x(int x) const { return arrow_arg_node(f, t, mode, 0, x); }
  int ok() const { return in_x(arrow_cod_node(k, t, mode, 0, 0)); }
  int ok_answer(int j) const { return in_x(arrow_cod_node(k, t, mode, 0, sum_answer(t, j))); }
  int ok_node(int j, int n) const { return in_x(arrow_cod_node(k, t, mode, 0, sum_member_node(t, j, n))); }
  int in_k(int y) const { return in_x(arrow_arg_node(k, t, mode, 0, y)); }
  int jump(int i) const { return in_k(arrow_cod_node(t, s, mode, i, 0)); }
  int jump_arg(int i, int n) const { return in_k(arrow_arg_node(t, s, mode, i, n)); }
};

// Copy rule shared by cell and callcc: an Opponent move is copied to the
// candidate node whose parent is the partner of its justifier's node.
class Cells {
 public:
  std::map<int, std::vector<int>> copies;
  void link(int a, int b) {
    copies[a].push_back(b);
    copies[b].push_back(a);
  }
  std::optional<Move> copy(const Arena& a, const Position& s, int k, int partner_of_just) const {
    auto it = copies.find(s[k].node);
    if (it == copies.end() || partner_of_just < 0) return std::nullopt;
    for (int c : it->second)
      if (a.nodes[c].parent == s[partner_of_just].node) return Move{1, c, partner_of_just, kNoCtl};
    return std::nullopt;
  }
};

class CellStrategy : public Strategy {
 public:
  explicit CellStrategy(const TypePtr& content)
      : Strategy(closed_game(std::make_shared<Arena>(cell_arena(content, Mode::Plain))), Mode::Plain),
        lay_(content, Mode::Plain) {
    for (int k = 0; k < lay_.t.size(); ++k) {
      writes_[lay_.write(k)] = k;
      for (int n = 0; n < lay_.t.members[k]->size(); ++n) cells_.link(lay_.value_node(k, n), lay_.write_arg(k, n));
    }
  }

  Response respond(const Position& s, Fuel&) const override {
    int n = static_cast<int>(s.size());
    std::vector<int> partner(n, -1);
    for (int i = 1; i < n; i += 2) {
      partner[i] = i - 1;
      partner[i - 1] = i;
      if (s[i].node != lay_.read() && s[i - 1].node == lay_.read()) partner[i] = last_write(s, i - 1);
    }
    int k = n - 1;
    const Move& m = s[k];
    if (m.just < 0) return Response::play({1, 1, k, kNoCtl});
    auto w = writes_.find(m.node);
    if (w != writes_.end()) return Response::play({1, lay_.done(w->second), k, kNoCtl});
    if (m.node == lay_.read()) {
      int lw = last_write(s, k);
      if (lw < 0) return Response::silent();
      return Response::play({1, lay_.value(writes_.at(s[lw].node)), k, kNoCtl});
    }
    auto c = cells_.copy(*game().cod, s, k, partner[m.just]);
    return c ? Response::play(*c) : Response::silent();
  }

 private:
  // Most recent write through the same cell as the read at index r.
  int last_write(const Position& s, int r) const {
    for (int i = r - 1; i >= 0; --i)
      if (writes_.count(s[i].node) && s[i].just == s[r].just) return i;
    return -1;
  }

  CellLayout lay_;
  std::map<int, int> writes_;
  Cells cells_;
};

class CallccStrategy : public Strategy {
 public:
  CallccStrategy(const TypePtr& t, const TypePtr& s)
      : Strategy(closed_game(std::make_shared<Arena>(callcc_arena(t, s, Mode::Plain))), Mode::Plain),
        lay_(t, s, Mode::Plain) {
    for (int j = 0; j < lay_.t.size(); ++j) {
      ok_answers_[lay_.ok_answer(j)] = j;
      jumps_[lay_.jump(j)] = j;
      for (int n = 0; n < lay_.t.members[j]->size(); ++n) {
        cells_.link(lay_.caught_node(j, n), lay_.ok_node(j, n));
        cells_.link(lay_.caught_node(j, n), lay_.jump_arg(j, n));
      }
    }
  }

  Response respond(const Position& s, Fuel&) const override {
    int n = static_cast<int>(s.size());
    std::vector<int> partner(n, -1);
    for (int i = 1; i < n; i += 2) {
      partner[i] = i - 1;
      partner[i - 1] = i;
    }
    int k = n - 1;
    const Move& m = s[k];
    if (m.just < 0) return Response::play({1, lay_.ok(), k, kNoCtl});
    int j = -1;
    if (auto a = ok_answers_.find(m.node); a != ok_answers_.end()) j = a->second;
    if (auto a = jumps_.find(m.node); a != jumps_.end()) j = a->second;
    if (j >= 0) return Response::play({1, lay_.caught(j), s[m.just].just, kNoCtl});
    auto c = cells_.copy(*game().cod, s, k, partner[m.just]);
    return c ? Response::play(*c) : Response::silent();
  }

 private:
  CallccLayout lay_;
  std::map<int, int> ok_answers_, jumps_;
  Cells cells_;
};

struct ExnNodes {
  int q, a, try_, caught, ok, raise, e_try = -1, e_ok = -1, e_raise = -1, e_q = -1;
};

ExnNodes exn_nodes(Mode mode) {
  if (mode == Mode::Exception) return {0, 1, 2, 3, 5, 7, 4, 6, 8, 9};
  return {0, 1, 2, 3, 4, 5};
}

class ExnC : public Strategy {
 public:
  ExnC() : Strategy(closed_game(std::make_shared<Arena>(exn_arena(Mode::Control))), Mode::Control) {}

  Response respond(const Position& s, Fuel&) const override {
    const ExnNodes x = exn_nodes(Mode::Control);
    int k = static_cast<int>(s.size()) - 1;
    const Move& m = s[k];
    if (m.node == x.q) return Response::play({1, x.a, k, kNoCtl});
    if (m.node == x.try_) return Response::play({1, x.ok, k, pending_or_star(s)});
    if (m.node == x.raise) {
      auto open = open_questions(game(), s);
      for (auto it = open.rbegin(); it != open.rend(); ++it)
        if (s[*it].node == x.try_ && s[*it].just == m.just) return Response::play({1, x.caught, *it, kNoCtl});
    }
    return Response::silent();
  }

 private:
  int pending_or_star(const Position& s) const {
    int p = pending(game(), s);
    return p < 0 ? kStar : p;
  }
};

class ExnE : public Strategy {
 public:
  ExnE() : Strategy(closed_game(std::make_shared<Arena>(exn_arena(Mode::Exception))), Mode::Exception) {}

  Response respond(const Position& s, Fuel&) const override {
    const ExnNodes x = exn_nodes(Mode::Exception);
    int k = static_cast<int>(s.size()) - 1;
    const Move& m = s[k];
    if (m.node == x.q) return Response::play({1, x.a, k, kNoCtl});
    if (m.node == x.try_) return Response::play({1, x.ok, k, kNoCtl});
    if (m.node == x.raise) return Response::play({1, x.e_raise, k, kNoCtl});
    if (m.node == x.e_ok) {
      int t = s[m.just].just;
      int alpha = s[t].just;
      bool flag = false;
      for (int i = 0; i < k; ++i) {
        if (s[i].node == x.raise && s[i].just == alpha) flag = true;
        if (s[i].node == x.caught && s[s[i].just].just == alpha) flag = false;
      }
      return Response::play({1, flag ? x.caught : x.e_try, t, kNoCtl});
    }
    return Response::silent();
  }
};

void rename_node(Arena& a, int n, const std::string& name) { a.nodes[n].name = name; }

}  // namespace

Arena cell_arena(const TypePtr& content, Mode mode) {
  CellLayout lay(content, mode);
  Family vt{{std::make_shared<Arena>(product(arrow_arena(lay.t, lay.one, mode), computation_arena(lay.t, mode)))}};
  Arena a = computation_arena(vt, mode);
  rename_node(a, 0, "new");
  rename_node(a, 1, "cell");
  for (int k = 0; k < lay.t.size(); ++k) {
    std::string w = "write" + std::to_string(k);
    rename_node(a, lay.write(k), w);
    rename_node(a, lay.done(k), w + ".done");
    for (int n = 0; n < lay.t.members[k]->size(); ++n)
      rename_node(a, lay.write_arg(k, n), w + ">" + lay.t.members[k]->nodes[n].name);
    std::string v = "read.val" + std::to_string(k);
    rename_node(a, lay.value(k), v);
    for (int n = 0; n < lay.t.members[k]->size(); ++n)
      rename_node(a, lay.value_node(k, n), v + "." + lay.t.members[k]->nodes[n].name);
  }
  rename_node(a, lay.read(), "read");
  return a;
}

Arena callcc_arena(const TypePtr& t, const TypePtr& s, Mode mode) {
  CallccLayout lay(t, s, mode);
  Arena a = arrow_arena(lay.f, lay.t, mode);
  rename_node(a, lay.label(), "label");
  rename_node(a, lay.ok(), "ok");
  bool single_t = lay.t.size() == 1;
  for (int j = 0; j < lay.t.size(); ++j) {
    std::string suffix = single_t ? "" : std::to_string(j);
    rename_node(a, lay.caught(j), "caught" + suffix);
    rename_node(a, lay.ok_answer(j), "ok.ret" + suffix);
    rename_node(a, lay.jump(j), "jump" + suffix);
    for (int n = 0; n < lay.t.members[j]->size(); ++n) {
      const auto& nm = lay.t.members[j]->nodes[n].name;
      rename_node(a, lay.caught_node(j, n), "caught" + suffix + "." + nm);
      rename_node(a, lay.ok_node(j, n), "ok.ret" + suffix + "." + nm);
      rename_node(a, lay.jump_arg(j, n), "jump" + suffix + ">" + nm);
    }
  }
  return a;
}

Arena exn_arena(Mode mode) {
  Arena a = computation_arena(denote_type(exn_type(), mode), mode);
  ExnNodes x = exn_nodes(mode);
  rename_node(a, x.q, "q");
  rename_node(a, x.a, "a");
  rename_node(a, x.try_, "try");
  rename_node(a, x.caught, "caught");
  rename_node(a, x.ok, "ok");
  rename_node(a, x.raise, "raise");
  if (mode == Mode::Exception) {
    rename_node(a, x.e_try, "e(try)");
    rename_node(a, x.e_ok, "e(ok)");
    rename_node(a, x.e_raise, "e(raise)");
    rename_node(a, x.e_q, "e(q)");
  }
  return a;
}

StrategyPtr cell_strategy(const TypePtr& content) { return std::make_shared<CellStrategy>(content); }
StrategyPtr callcc_strategy(const TypePtr& t, const TypePtr& s) { return std::make_shared<CallccStrategy>(t, s); }
StrategyPtr exn_c_strategy() { return std::make_shared<ExnC>(); }
StrategyPtr exn_e_strategy() { return std::make_shared<ExnE>(); }

StrategyPtr new_constant(const TypePtr& content, Mode mode) {
  switch (mode) {
    case Mode::Plain: return cell_strategy(content);
    case Mode::Control: return hat(cell_strategy(content));
    case Mode::Exception:
      return tilde(cell_strategy(content), closed_game(std::make_shared<Arena>(cell_arena(content, Mode::Exception))));
  }
  return nullptr;
}

StrategyPtr callcc_constant(const TypePtr& t, const TypePtr& s, Mode mode) {
  switch (mode) {
    case Mode::Plain: return callcc_strategy(t, s);
    case Mode::Control: return hat(callcc_strategy(t, s));
    case Mode::Exception:
      return tilde(callcc_strategy(t, s), closed_game(std::make_shared<Arena>(callcc_arena(t, s, Mode::Exception))));
  }
  return nullptr;
}

StrategyPtr new_exn_constant(Mode mode) {
  switch (mode) {
    case Mode::Control: return exn_c_strategy();
    case Mode::Exception: return exn_e_strategy();
    case Mode::Plain: break;
  }
  throw DenoteError("new_exn has no plain interpretation");
}

}  // namespace ctlgames
