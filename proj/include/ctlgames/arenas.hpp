#pragma once

#include <memory>
#include <string>
#include <vector>

#include "ctlgames/syntax.hpp"

namespace ctlgames {

struct ArenaNode {
  int parent = -1;  // -1 for roots
  bool question = true;
  /// Designated exception answer of its parent question.
  bool exn_answer = false;
  std::string name;
};

/// A bipartite labelled forest stored in construction order; a node's parent
/// always precedes it.
struct Arena {
  std::vector<ArenaNode> nodes;

  int size() const { return static_cast<int>(nodes.size()); }
  std::vector<int> roots() const;
  std::vector<int> children(int n) const;
  int depth(int n) const;
  bool is_question(int n) const { return nodes[n].question; }
  /// The exception answer below question q, or -1.
  int exn_answer_of(int q) const;
  bool has_exception_answers() const;

  /// Forest shape, Q/A discipline (answers are enabled by questions) and, if
  /// any exception answers are present, the exception-arena conditions.
  /// Returns an empty string when valid, otherwise the first violation.
  std::string validate() const;
};

using ArenaPtr = std::shared_ptr<const Arena>;

/// Same shape, labels and exception marks (names ignored).
bool arena_equal(const Arena& a, const Arena& b);

/// A set-indexed family of arenas; indices are 0..size-1.
struct Family {
  std::vector<ArenaPtr> members;
  int size() const { return static_cast<int>(members.size()); }
};

enum class Mode { Plain, Control, Exception };
std::string mode_name(Mode m);

// Constructions. Layouts are fixed so that node numbers can be computed:
//   product: the parts' nodes concatenated in order.
//   function_space(A, B): B's nodes, then one copy of A per root of B.
//   lifted_sum: root q, then for each index j the answer a_j followed by the
//   nodes of member j, then (exception variant) the exception answer.

Arena empty_arena();
Arena product(const std::vector<const Arena*>& parts);
Arena product(const Arena& a, const Arena& b);
Arena function_space(const Arena& a, const Arena& b);
Arena lifted_sum(const Family& f);
Arena exn_lifted_sum(const Family& f);
/// U_C: every answer becomes a question.
Arena relabel_answers_as_questions(const Arena& a);
/// U_E: forgets the exception-answer marks.
Arena forget_exn(const Arena& a);
/// K on arenas. `old_to_new` (optional) receives the node map, -1 for erased.
Arena erase_exception_answers(const Arena& a, std::vector<int>* old_to_new = nullptr);

int product_offset(const std::vector<const Arena*>& parts, int k);
/// Node of the copy of A's node `n` grafted under the k-th root of B.
int graft_node(const Arena& a, const Arena& b, int root_index, int n);
/// Answer node a_j of a lifted sum.
int sum_answer(const Family& f, int j);
/// Node of member j's node `n` inside a lifted sum.
int sum_member_node(const Family& f, int j, int n);
/// The exception answer of an exception lifted sum.
int sum_exn_answer(const Family& f);

/// Arena of a computation type: Σ F or Σ_E F.
Arena computation_arena(const Family& f, Mode mode);

/// ⟦S -> T⟧ as the single arena Π_i (S_i ⇒ Σ⟦T⟧).
Arena arrow_arena(const Family& s, const Family& t, Mode mode);
/// Within arrow_arena: node of component i's codomain node n (a node of Σ⟦T⟧).
int arrow_cod_node(const Family& s, const Family& t, Mode mode, int i, int n);
/// Within arrow_arena: node of component i's argument node n (a node of S_i).
int arrow_arg_node(const Family& s, const Family& t, Mode mode, int i, int n);

Family denote_type(const TypePtr& t, Mode mode);

/// Index arithmetic of type families.
int pair_index(const Family& left, const Family& right, int i, int j);
int inj_index(const Family& left, int which, int i);

/// φ_T: per family index i, the node bijection U_C(⟦T⟧_i) -> ⟦T^C⟧_i.
std::vector<std::vector<int>> cps_iso(const TypePtr& t);
/// Checks that `phi` is a bijection preserving labels and enabling.
std::string validate_iso(const Arena& from, const Arena& to, const std::vector<int>& phi);

/// One line per edge, `parent -> child [Q|A] [E]`; roots hang from `*`.
std::string arena_to_dot(const Arena& a);

/// Every type built from 0, 1, *, +, -> with at most `max_size` constructors.
std::vector<TypePtr> enumerate_types(int max_size);

}  // namespace ctlgames
