#pragma once

#include <string>
#include <vector>

#include "ctlgames/arenas.hpp"

namespace ctlgames {

/// The arena A ⇒ B of a morphism. Closed arenas use an empty domain. Domain
/// moves sit on side 0; a domain root is justified by an occurrence of a
/// codomain root.
struct Game {
  ArenaPtr dom;
  ArenaPtr cod;
};

Game closed_game(ArenaPtr a);
Game make_game(Arena dom, Arena cod);

constexpr int kNoCtl = -1;
constexpr int kStar = -2;

struct Move {
  int side = 1;
  int node = 0;
  int just = -1;  // index of the justifying occurrence, -1 when initial
  int ctl = kNoCtl;  // question occurrence, kStar, or kNoCtl
  bool operator==(const Move& o) const {
    return side == o.side && node == o.node && just == o.just && ctl == o.ctl;
  }
  bool operator!=(const Move& o) const { return !(*this == o); }
  bool operator<(const Move& o) const;
};

using Position = std::vector<Move>;

enum class Player { O, P };

const ArenaNode& node_of(const Game& g, int side, int node);
bool is_question(const Game& g, const Move& m);
bool is_exn_move(const Game& g, const Move& m);
Player polarity(const Game& g, int side, int node);
inline Player polarity(const Game& g, const Move& m) { return polarity(g, m.side, m.node); }
bool is_initial(const Game& g, int side, int node);
/// Whether an occurrence of `j` may justify the move (side, node).
bool enables(const Game& g, const Move& j, int side, int node);

/// Alternation from Opponent, enabling, initial moves are roots. With
/// `control`, questions also carry well-formed control pointers.
bool is_legal(const Game& g, const Position& s, bool control = false);
/// The control-sequence polarity condition: Opponent questions point to
/// Player questions or *, Player questions to Opponent questions or *.
bool is_control_sequence(const Game& g, const Position& s);

/// Pending question after the whole of s, or -1.
int pending(const Game& g, const Position& s);
/// table[k] = pending question of the prefix of length k (table[0] = -1).
std::vector<int> pending_table(const Game& g, const Position& s);
bool is_well_bracketed(const Game& g, const Position& s);
bool is_player_well_bracketed(const Game& g, const Position& s);

/// Open questions after the whole of s, in sequence order.
std::vector<int> open_questions(const Game& g, const Position& s);
/// Open questions after the prefix ending at index k (inclusive).
std::vector<int> open_after(const Game& g, const Position& s, int k);

/// Keeps the occurrences with keep[k]; justifiers are followed through hidden
/// moves and control pointers are rerouted to the most recent open kept move
/// along the hidden move's control chain (or *). Sides and nodes unchanged.
Position restrict(const Position& s, const std::vector<bool>& keep, std::vector<int>* kept_index = nullptr);

bool is_exception_local(const Game& g, const Position& s);
bool is_exception_propagating(const Game& g, const Position& s);
/// Length of the greatest exception-propagating prefix.
int ep_prefix_length(const Game& g, const Position& s);

/// K on games: erases exception answers on both sides.
struct KGame {
  Game game;
  std::vector<int> dom_map, cod_map;  // old node -> new node, -1 for erased
  std::vector<int> dom_back, cod_back;  // new node -> old node
};
KGame k_game(const Game& g);
/// K on sequences: pending control pointers on questions, then exception
/// answers deleted. Non-propagating input is cut to its greatest
/// exception-propagating prefix.
Position k_map(const Game& g, const KGame& k, const Position& s);

/// Moves available to Opponent after s (s of even length). With `control`,
/// questions are offered with every admissible control pointer.
std::vector<Move> opponent_moves(const Game& g, const Position& s, bool control);

std::string move_id(const Game& g, const Move& m);
/// `idx <moveId> [O|P] [Q|A] just=<idx|-> ctl=<idx|*|->`, one line each.
std::string format_trace(const Game& g, const Position& s);
/// Inverse of format_trace; throws std::invalid_argument on unknown moves.
Position parse_trace(const Game& g, const std::string& text);

}  // namespace ctlgames
