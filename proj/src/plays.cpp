#include "ctlgames/plays.hpp"

#include <algorithm>
#include <map>
#include <sstream>
#include <stdexcept>
#include <tuple>

namespace ctlgames {

bool Move::operator<(const Move& o) const {
  return std::tie(side, node, just, ctl) < std::tie(o.side, o.node, o.just, o.ctl);
}

Game closed_game(ArenaPtr a) { return {std::make_shared<Arena>(), std::move(a)}; }

Game make_game(Arena dom, Arena cod) {
  return {std::make_shared<Arena>(std::move(dom)), std::make_shared<Arena>(std::move(cod))};
}

const ArenaNode& node_of(const Game& g, int side, int node) {
  return side == 0 ? g.dom->nodes[node] : g.cod->nodes[node];
}

bool is_question(const Game& g, const Move& m) { return node_of(g, m.side, m.node).question; }
bool is_exn_move(const Game& g, const Move& m) { return node_of(g, m.side, m.node).exn_answer; }

Player polarity(const Game& g, int side, int node) {
  int d = (side == 0 ? g.dom : g.cod)->depth(node);
  bool even = d % 2 == 0;
  return (side == 1) == even ? Player::O : Player::P;
}

bool is_initial(const Game& g, int side, int node) { return side == 1 && g.cod->nodes[node].parent < 0; }

bool enables(const Game& g, const Move& j, int side, int node) {
  const auto& n = node_of(g, side, node);
  if (side == j.side) return n.parent == j.node;
  return side == 0 && n.parent < 0 && is_initial(g, j.side, j.node);
}

bool is_legal(const Game& g, const Position& s, bool control) {
  for (size_t k = 0; k < s.size(); ++k) {
    const auto& m = s[k];
    const Arena& a = m.side == 0 ? *g.dom : *g.cod;
    if ((m.side != 0 && m.side != 1) || m.node < 0 || m.node >= a.size()) return false;
    if (polarity(g, m) != (k % 2 == 0 ? Player::O : Player::P)) return false;
    if (m.just < 0) {
      if (!is_initial(g, m.side, m.node)) return false;
    } else if (m.just >= static_cast<int>(k) || !enables(g, s[m.just], m.side, m.node)) {
      return false;
    }
    bool q = is_question(g, m);
    if (control) {
      if (!q && m.ctl != kNoCtl) return false;
      if (q && m.ctl != kStar && (m.ctl < 0 || m.ctl >= static_cast<int>(k) || !is_question(g, s[m.ctl])))
        return false;
    } else if (m.ctl != kNoCtl) {
      return false;
    }
  }
  return true;
}

bool is_control_sequence(const Game& g, const Position& s) {
  if (!is_legal(g, s, true)) return false;
  for (const auto& m : s)
    if (m.ctl >= 0 && polarity(g, s[m.ctl]) == polarity(g, m)) return false;
  return true;
}

std::vector<int> pending_table(const Game& g, const Position& s) {
  std::vector<int> t(s.size() + 1, -1);
  for (size_t k = 0; k < s.size(); ++k) {
    if (is_question(g, s[k]))
      t[k + 1] = static_cast<int>(k);
    else
      t[k + 1] = s[k].just < 0 ? -1 : t[s[k].just];
  }
  return t;
}

int pending(const Game& g, const Position& s) { return pending_table(g, s).back(); }

bool is_well_bracketed(const Game& g, const Position& s) {
  auto t = pending_table(g, s);
  for (size_t k = 0; k < s.size(); ++k)
    if (!is_question(g, s[k]) && s[k].just != t[k]) return false;
  return true;
}

bool is_player_well_bracketed(const Game& g, const Position& s) {
  auto t = pending_table(g, s);
  for (size_t k = 0; k < s.size(); ++k)
    if (polarity(g, s[k]) == Player::P && !is_question(g, s[k]) && s[k].just != t[k]) return false;
  return true;
}

namespace {

std::vector<std::vector<int>> open_table(const Game& g, const Position& s) {
  // table[k + 1] = open(s up to and including k)
  std::vector<std::vector<int>> t(s.size() + 1);
  for (size_t k = 0; k < s.size(); ++k) {
    const auto& m = s[k];
    if (!is_question(g, m)) {
      t[k + 1] = m.just < 0 ? std::vector<int>{} : t[m.just];
    } else {
      if (m.ctl >= 0) t[k + 1] = t[m.ctl + 1];
      t[k + 1].push_back(static_cast<int>(k));
    }
  }
  return t;
}

}  // namespace

std::vector<int> open_questions(const Game& g, const Position& s) { return open_table(g, s).back(); }

std::vector<int> open_after(const Game& g, const Position& s, int k) {
  Position prefix(s.begin(), s.begin() + k + 1);
  return open_table(g, prefix).back();
}

Position restrict(const Position& s, const std::vector<bool>& keep, std::vector<int>* kept_index) {
  std::vector<int> idx(s.size(), -1);
  Position r;
  for (size_t k = 0; k < s.size(); ++k) {
    if (!keep[k]) continue;
    Move m = s[k];
    int j = m.just;
    while (j >= 0 && !keep[j]) j = s[j].just;
    m.just = j < 0 ? -1 : idx[j];
    if (m.ctl >= 0) {
      int c = m.ctl;
      while (c >= 0 && !keep[c]) c = s[c].ctl;
      m.ctl = c >= 0 ? idx[c] : kStar;
    }
    idx[k] = static_cast<int>(r.size());
    r.push_back(m);
  }
  if (kept_index) *kept_index = std::move(idx);
  return r;
}

bool is_exception_local(const Game& g, const Position& s) {
  auto t = pending_table(g, s);
  for (size_t k = 1; k < s.size(); k += 2) {
    bool raised = is_exn_move(g, s[k - 1]);
    if (raised != is_exn_move(g, s[k])) return false;
    if (raised && s[k].just != t[k]) return false;
  }
  return true;
}

int ep_prefix_length(const Game& g, const Position& s) {
  auto t = pending_table(g, s);
  size_t i = 0;
  while (i < s.size()) {
    if (!is_exn_move(g, s[i])) {
      ++i;
      continue;
    }
    if (i + 1 >= s.size() || !is_exn_move(g, s[i + 1]) || s[i + 1].just != t[i + 1]) break;
    i += 2;
  }
  return static_cast<int>(i);
}

bool is_exception_propagating(const Game& g, const Position& s) {
  return ep_prefix_length(g, s) == static_cast<int>(s.size());
}

KGame k_game(const Game& g) {
  KGame k;
  Arena dom = erase_exception_answers(*g.dom, &k.dom_map);
  Arena cod = erase_exception_answers(*g.cod, &k.cod_map);
  k.dom_back.assign(dom.size(), -1);
  k.cod_back.assign(cod.size(), -1);
  for (size_t i = 0; i < k.dom_map.size(); ++i)
    if (k.dom_map[i] >= 0) k.dom_back[k.dom_map[i]] = static_cast<int>(i);
  for (size_t i = 0; i < k.cod_map.size(); ++i)
    if (k.cod_map[i] >= 0) k.cod_back[k.cod_map[i]] = static_cast<int>(i);
  k.game = make_game(std::move(dom), std::move(cod));
  return k;
}

Position k_map(const Game& g, const KGame& k, const Position& s) {
  int n = ep_prefix_length(g, s);
  auto t = pending_table(g, s);
  std::vector<int> idx(n, -1);
  Position r;
  for (int i = 0; i < n; ++i) {
    const auto& m = s[i];
    if (is_exn_move(g, m)) continue;
    Move out;
    out.side = m.side;
    out.node = (m.side == 0 ? k.dom_map : k.cod_map)[m.node];
    out.just = m.just < 0 ? -1 : idx[m.just];
    if (is_question(g, m)) out.ctl = t[i] < 0 ? kStar : idx[t[i]];
    idx[i] = static_cast<int>(r.size());
    r.push_back(out);
  }
  return r;
}

std::vector<Move> opponent_moves(const Game& g, const Position& s, bool control) {
  std::vector<Move> base;
  for (int r : g.cod->roots()) base.push_back({1, r, -1, kNoCtl});
  for (size_t j = 0; j < s.size(); ++j) {
    const Arena& a = s[j].side == 0 ? *g.dom : *g.cod;
    for (int c : a.children(s[j].node))
      if (polarity(g, s[j].side, c) == Player::O) base.push_back({s[j].side, c, static_cast<int>(j), kNoCtl});
  }
  if (!control) return base;
  std::vector<Move> out;
  for (auto m : base) {
    if (!is_question(g, m)) {
      out.push_back(m);
      continue;
    }
    m.ctl = kStar;
    out.push_back(m);
    for (size_t j = 0; j < s.size(); ++j)
      if (polarity(g, s[j]) == Player::P && is_question(g, s[j])) {
        m.ctl = static_cast<int>(j);
        out.push_back(m);
      }
  }
  return out;
}

std::string move_id(const Game& g, const Move& m) {
  return (m.side == 0 ? "^" : "") + node_of(g, m.side, m.node).name;
}

std::string format_trace(const Game& g, const Position& s) {
  std::ostringstream out;
  for (size_t k = 0; k < s.size(); ++k) {
    const auto& m = s[k];
    out << k << ' ' << move_id(g, m) << ' ' << (polarity(g, m) == Player::O ? 'O' : 'P') << ' '
        << (is_question(g, m) ? 'Q' : 'A') << " just=" << (m.just < 0 ? std::string("-") : std::to_string(m.just))
        << " ctl=" << (m.ctl == kStar ? std::string("*") : m.ctl < 0 ? std::string("-") : std::to_string(m.ctl))
        << '\n';
  }
  return out.str();
}

Position parse_trace(const Game& g, const std::string& text) {
  std::map<std::string, std::pair<int, int>> ids;
  for (int side = 0; side < 2; ++side) {
    const Arena& a = side == 0 ? *g.dom : *g.cod;
    for (int n = 0; n < a.size(); ++n) ids[(side == 0 ? "^" : "") + a.nodes[n].name] = {side, n};
  }
  Position s;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::istringstream ls(line);
    std::string idx, id, who, qa, just, ctl;
    if (!(ls >> idx >> id >> who >> qa >> just >> ctl) || just.rfind("just=", 0) != 0 || ctl.rfind("ctl=", 0) != 0)
      throw std::invalid_argument("malformed trace line: " + line);
    auto it = ids.find(id);
    if (it == ids.end()) throw std::invalid_argument("unknown move: " + id);
    Move m{it->second.first, it->second.second, -1, kNoCtl};
    just = just.substr(5);
    ctl = ctl.substr(4);
    if (just != "-") m.just = std::stoi(just);
    if (ctl == "*") m.ctl = kStar;
    else if (ctl != "-") m.ctl = std::stoi(ctl);
    s.push_back(m);
  }
  return s;
}

}  // namespace ctlgames
