#pragma once

#include <map>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "ctlgames/syntax.hpp"

namespace ctlgames {

/// Ordered variable bindings; lookup finds the most recent binding.
struct TypingContext {
  std::vector<std::pair<std::string, TypePtr>> vars;

  TypingContext extended(const std::string& x, TypePtr t) const {
    TypingContext c = *this;
    c.vars.emplace_back(x, std::move(t));
    return c;
  }
  TypePtr lookup(const std::string& x) const;
};

/// Types of the location and exception constants occurring in a machine
/// configuration.
struct StoreTyping {
  std::map<std::string, TypePtr> locations;
  std::set<std::string> exceptions;
};

struct Elaborated {
  TypePtr type;
  /// The input with every omitted annotation (constant instances, injection
  /// sums, void and mark result types) filled in.
  TermPtr term;
};

/// Checks `ctx |-v v : T`. `expected` guides instantiation of polymorphic
/// constants and injections; it is a hint, the returned type is synthesized.
Elaborated elaborate_value(const TypingContext& ctx, const TermPtr& v, const TypePtr& expected = nullptr,
                           const StoreTyping* store = nullptr);
Elaborated elaborate_comp(const TypingContext& ctx, const TermPtr& m, const TypePtr& expected = nullptr,
                          const StoreTyping* store = nullptr);

TypePtr typecheck_value(const TypingContext& ctx, const TermPtr& v, const TypePtr& expected = nullptr,
                        const StoreTyping* store = nullptr);
TypePtr typecheck_comp(const TypingContext& ctx, const TermPtr& m, const TypePtr& expected = nullptr,
                       const StoreTyping* store = nullptr);

/// Elaborates a closed program and requires it to have type 1.
TermPtr elaborate_program(const TermPtr& m);

enum class Fragment { L, LR, LRC, LRCE };

/// Smallest fragment containing the term: new puts it in L_R, callcc in
/// L_RC, new_exn (or exception constants) in L_RCE.
Fragment fragment_of(const TermPtr& t);
std::string fragment_name(Fragment f);

}  // namespace ctlgames
