#include <random>

#include "ctlgames/strategies.hpp"

namespace ctlgames {

namespace {

std::uint64_t mix(std::uint64_t h, std::uint64_t x) {
  h ^= x + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  return h;
}

std::uint64_t hash_position(std::uint64_t seed, const Position& s, bool with_ctl) {
  std::uint64_t h = mix(0xcbf29ce484222325ULL, seed);
  for (const auto& m : s) {
    h = mix(h, static_cast<std::uint64_t>(m.side));
    h = mix(h, static_cast<std::uint64_t>(m.node));
    h = mix(h, static_cast<std::uint64_t>(m.just + 2));
    if (with_ctl) h = mix(h, static_cast<std::uint64_t>(m.ctl + 3));
  }
  return h;
}

class Compact : public Strategy {
 public:
  Compact(Game g, std::uint64_t seed, CompactOptions opts) : Strategy(std::move(g), opts.mode), seed_(seed), o_(opts) {}

  Response respond(const Position& s, Fuel&) const override {
    const Game& g = game();
    int k = static_cast<int>(s.size());
    int p = pending(g, s);
    // propagation is forced, even past the length bound
    if (o_.exception_propagating && is_exn_move(g, s.back())) {
      if (p < 0 || polarity(g, s[p]) != Player::O) return Response::silent();
      const Arena& a = s[p].side == 0 ? *g.dom : *g.cod;
      return Response::play({s[p].side, a.exn_answer_of(s[p].node), p, kNoCtl});
    }
    if (k + 1 > o_.max_len) return Response::silent();
    int initials = 0;
    for (const auto& m : s) initials += is_initial(g, m.side, m.node);
    if (initials > 1) return Response::silent();

    std::mt19937_64 rng(hash_position(seed_, s, !o_.control_blind));
    if (static_cast<int>(rng() % 100) < o_.silence) return Response::silent();

    std::vector<Move> options;
    for (int j = 0; j < k; ++j) {
      const Arena& a = s[j].side == 0 ? *g.dom : *g.cod;
      for (int c : a.children(s[j].node)) {
        Move m{s[j].side, c, j, kNoCtl};
        if (polarity(g, m) == Player::P && allowed(m, p)) options.push_back(m);
      }
      if (is_initial(g, s[j].side, s[j].node))
        for (int r : g.dom->roots()) options.push_back({0, r, j, kNoCtl});
    }
    if (options.empty()) return Response::silent();
    Move m = options[rng() % options.size()];
    if (o_.mode == Mode::Control && is_question(g, m)) m.ctl = control_target(s, p, rng);
    return Response::play(m);
  }

 private:
  bool allowed(const Move& m, int p) const {
    const Game& g = game();
    if (is_exn_move(g, m) && o_.exception_propagating) return false;
    if (!is_question(g, m) && o_.well_bracketed && m.just != p) return false;
    return true;
  }

  int control_target(const Position& s, int p, std::mt19937_64& rng) const {
    if (o_.local) return p < 0 ? kStar : p;
    std::vector<int> targets;
    if (!o_.anchored) targets.push_back(kStar);
    for (int j = 0; j < static_cast<int>(s.size()); ++j)
      if (polarity(game(), s[j]) == Player::O && is_question(game(), s[j])) targets.push_back(j);
    if (targets.empty()) return kStar;
    return targets[rng() % targets.size()];
  }

  std::uint64_t seed_;
  CompactOptions o_;
};

}  // namespace

std::vector<ArenaPtr> small_arenas(Mode mode) {
  Family zero, one{{std::make_shared<Arena>()}};
  Family two{{std::make_shared<Arena>(), std::make_shared<Arena>()}};
  Arena s0 = computation_arena(zero, mode), s1 = computation_arena(one, mode), s2 = computation_arena(two, mode);
  return {
      std::make_shared<Arena>(s1),
      std::make_shared<Arena>(computation_arena(two, mode)),
      std::make_shared<Arena>(function_space(s0, s1)),
      std::make_shared<Arena>(function_space(s1, s1)),
      std::make_shared<Arena>(function_space(s0, s0)),
      std::make_shared<Arena>(function_space(s2, s2)),
      std::make_shared<Arena>(function_space(function_space(s1, s1), s1)),
  };
}

StrategyPtr random_compact(Game g, std::uint64_t seed, const CompactOptions& opts) {
  return std::make_shared<Compact>(std::move(g), seed, opts);
}

}  // namespace ctlgames
