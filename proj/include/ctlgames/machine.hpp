#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ctlgames/syntax.hpp"
#include "ctlgames/typecheck.hpp"

namespace ctlgames {

struct MachineConfig {
  TermPtr comp;
  std::set<std::string> locs;
  std::map<std::string, TermPtr> store;
  std::set<std::string> exns;
  /// Content types of the allocated locations, for store typing.
  std::map<std::string, TypePtr> loc_types;
  int next_loc = 0;
  int next_exn = 0;

  StoreTyping store_typing() const;
};

MachineConfig initial_config(TermPtr program);

struct Frame {
  enum Kind { Let, Catch } kind;
  /// Let: the bound variable. Catch: the exception name.
  std::string name;
  /// Let: the body. Catch: unused.
  TermPtr body;
  /// Catch: the binder of the handler-delimited thunk.
  std::string binder;
};

/// Spine of an evaluation context, outermost frame first.
using EvalContext = std::vector<Frame>;

struct Decomposition {
  EvalContext context;
  /// Null when the computation is terminal.
  TermPtr redex;
  /// The returned value when terminal.
  TermPtr value;
  bool terminal() const { return redex == nullptr; }
};

Decomposition decompose(const TermPtr& comp);
TermPtr plug(const EvalContext& ctx, TermPtr inner);

/// Outcome of a single step attempt.
struct StepResult {
  enum Kind { Stepped, Terminal, Uncaught, Stuck } kind;
  MachineConfig next;
  std::string exn;
  std::string description;
  /// Name of the rule applied.
  std::string rule;
};

StepResult step(const MachineConfig& cfg);

/// Counts the (position, rule) pairs at which a reduction rule's left-hand side
/// matches the configuration. Written independently of step(), for the
/// determinism check.
int count_matching_rules(const MachineConfig& cfg);

struct Outcome {
  enum Kind { Converged, UncaughtException, OutOfFuel, Stuck } kind;
  TermPtr value;
  std::string exn;
  std::string description;
  std::int64_t steps = 0;
};

std::string outcome_to_string(const Outcome& o);
std::string config_to_string(const MachineConfig& cfg);

using TraceHook = std::function<void(const MachineConfig&, std::int64_t)>;

Outcome run(const TermPtr& program, std::int64_t fuel, const TraceHook& trace = nullptr);
Outcome run_config(MachineConfig cfg, std::int64_t fuel, const TraceHook& trace = nullptr);

/// Raised by converges() when the answer is not determined within the fuel.
class Inconclusive : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// True iff run() reaches [()]. Throws Inconclusive on fuel exhaustion.
bool converges(const TermPtr& program, std::int64_t fuel);

}  // namespace ctlgames
