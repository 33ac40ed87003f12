#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "ctlgames/arenas.hpp"
#include "ctlgames/plays.hpp"
#include "ctlgames/syntax.hpp"
#include "ctlgames/typecheck.hpp"

namespace ctlgames {

/// Budget of one top-level query. `per_query` bounds the hidden moves of any
/// single composition while answering; `total` bounds all of them together.
struct Fuel {
  std::int64_t per_query = 2000;
  std::int64_t total = 2000000;
};

struct Response {
  enum Kind { Play, Silent, OutOfFuel, NoWitness };
  Kind kind = Silent;
  Move move{};

  static Response play(Move m) { return {Play, m}; }
  static Response silent() { return {Silent, {}}; }
  static Response out_of_fuel() { return {OutOfFuel, {}}; }
  bool operator==(const Response& o) const { return kind == o.kind && (kind != Play || move == o.move); }
};

std::string response_to_string(const Game& g, const Response& r);

/// A deterministic strategy, presented by its oracle: given a legal position
/// ending with an Opponent move, the Player's reply. Implementations may
/// memoize; they are not safe to share between threads.
class Strategy {
 public:
  Strategy(Game g, Mode m) : game_(std::move(g)), mode_(m) {}
  virtual ~Strategy() = default;
  const Game& game() const { return game_; }
  Mode mode() const { return mode_; }
  virtual Response respond(const Position& s, Fuel& fuel) const = 0;

 private:
  Game game_;
  Mode mode_;
};

using StrategyPtr = std::shared_ptr<const Strategy>;

class ArenaMismatch : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// ---- combinators ----

using NodeRef = std::pair<int, int>;  // (side, node)

/// Copycat given by node links: an Opponent move at `from` is answered at
/// `to`, justified by the partner of its justifier (by itself when initial).
/// Links are entered in both directions; scripts only in one.
StrategyPtr copycat(Game g, Mode mode, const std::vector<std::pair<NodeRef, NodeRef>>& links,
                    const std::vector<std::pair<NodeRef, NodeRef>>& scripts = {});
StrategyPtr identity(ArenaPtr a, Mode mode);
/// The projection from the product `parts` onto part k.
StrategyPtr projection(const std::vector<ArenaPtr>& parts, int k, Mode mode);

StrategyPtr compose(StrategyPtr sigma, StrategyPtr tau);

/// ⟨σ_1, …, σ_n⟩ into the product of the codomains (same domain).
StrategyPtr pairing(ArenaPtr dom, const std::vector<StrategyPtr>& parts, Mode mode);
/// Like pairing, but each part is built on first use.
StrategyPtr lazy_pairing(ArenaPtr dom, const std::vector<ArenaPtr>& cods,
                         std::vector<std::function<StrategyPtr()>> parts, Mode mode);
/// Positions are carried over index for index; `map` sends every move of the
/// inner game to the outer one and must respect enabling.
StrategyPtr rename(StrategyPtr inner, Game outer, std::map<NodeRef, NodeRef> map);
/// Strategy built on first query.
StrategyPtr lazy(Game g, Mode mode, std::function<StrategyPtr()> make);
/// Never responds.
StrategyPtr bottom(Game g, Mode mode);

/// Kleisli extension with strength: from G × Σ{S_j} to Σ⟦T⟧, given
/// body(j) : G × S_j ⇒ Σ⟦T⟧. Exception answers to the inner question are
/// propagated.
StrategyPtr kleisli(ArenaPtr g, const Family& s, const Family& t, Mode mode,
                    std::function<StrategyPtr(int)> body);

/// σ̂: ignores Opponent control pointers, points Player questions at pending.
StrategyPtr hat(StrategyPtr plain);
/// σ̃ on an exception game whose K-image is σ's game.
StrategyPtr tilde(StrategyPtr plain, Game exn_game);

// ---- effects ----

/// Arena of new{T}: Σ((Π_k(T_k ⇒ Σ1)) × Σ⟦T⟧), with read/write moves named.
Arena cell_arena(const TypePtr& content, Mode mode);
/// Arena of callcc{T,S}; moves are named label, caught, ok and jump.
Arena callcc_arena(const TypePtr& t, const TypePtr& s, Mode mode);
/// Σ((Σ0 ⇒ Σ1) × Σ0) or its exception version, moves named q a try ok raise caught.
Arena exn_arena(Mode mode);

StrategyPtr cell_strategy(const TypePtr& content);
StrategyPtr callcc_strategy(const TypePtr& t, const TypePtr& s);
StrategyPtr exn_c_strategy();
StrategyPtr exn_e_strategy();

/// The constants in a given mode (new and callcc lifted by hat or tilde).
StrategyPtr new_constant(const TypePtr& content, Mode mode);
StrategyPtr callcc_constant(const TypePtr& t, const TypePtr& s, Mode mode);
StrategyPtr new_exn_constant(Mode mode);

// ---- denotation ----

class DenoteError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// ⟦M⟧ for a closed elaborated computation, a strategy on Σ⟦T⟧.
StrategyPtr denote(const TermPtr& m, Mode mode);
/// ⟦V⟧ for a closed elaborated value; returns the family index and strategy.
std::pair<int, StrategyPtr> denote_value(const TermPtr& v, Mode mode);

// ---- observation ----

/// Whether the initial question gets a non-exception answer. nullopt when
/// the fuel ran out.
std::optional<bool> probe_top(const StrategyPtr& sigma, const Fuel& fuel);

struct Comparison {
  bool equal = true;
  bool inconclusive = false;  // some query ran out of fuel
  std::int64_t positions = 0;
  std::int64_t skipped = 0;  // Opponent moves with no witness on the left
  std::string counterexample;
};

/// Explores every Opponent move (and, in control games, every control
/// pointer) up to plays of length max_len, comparing replies exactly.
Comparison equal_to_depth(const StrategyPtr& sigma, const StrategyPtr& tau, int max_len, const Fuel& fuel);

/// K(σ) for an exception strategy: Opponent control pointers are realized by
/// raising exceptions until the target question is pending.
StrategyPtr k_functor(StrategyPtr exn_strategy);
/// Walks σ's plays to depth and reports the first sequence that is not
/// exception-propagating, or an empty string.
std::string find_non_propagating(const StrategyPtr& sigma, int max_len, const Fuel& fuel);

bool is_control_blind(const StrategyPtr& sigma, int max_len, const Fuel& fuel);

/// All plays of even length up to max_len, in exploration order.
std::vector<Position> materialize(const StrategyPtr& sigma, int max_len, const Fuel& fuel);

// ---- compact strategies ----

/// Arenas small enough for exhaustive law checks, in the given mode.
std::vector<ArenaPtr> small_arenas(Mode mode = Mode::Plain);

struct CompactOptions {
  Mode mode = Mode::Plain;
  int max_len = 8;
  /// Player answers only the pending question.
  bool well_bracketed = false;
  /// Player questions point to pending; otherwise to a random Opponent question.
  bool local = false;
  /// Replies ignore Opponent control pointers.
  bool control_blind = false;
  /// Player questions point to an Opponent question, never to *.
  bool anchored = false;
  /// Exception games: Player propagates and never raises (plus, when
  /// propagating, Opponent raises are answered by the pending e-move).
  bool exception_propagating = false;
  /// Percentage of positions left without a reply.
  int silence = 15;
};

/// A random deterministic strategy on g whose plays are bounded by max_len;
/// the reply to each position is a hash of the seed and the position.
StrategyPtr random_compact(Game g, std::uint64_t seed, const CompactOptions& opts);

// ---- factorizations ----

/// Local, Player well-bracketed τ on C ⇒ A, C the callcc_{1,0} arena, with
/// Λ(callcc) ; τ = σ for a closed control-blind σ on A. A Player question of
/// σ pointing to * after the first move has no realisation (NoWitness).
StrategyPtr factor_callcc(StrategyPtr sigma);
/// Control-blind τ on E ⇒ A, E the exn_C arena, with exn_C ; τ = σ for a
/// closed control strategy σ on A.
StrategyPtr factor_exn(StrategyPtr sigma);

}  // namespace ctlgames
