#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "ctlgames/syntax.hpp"
#include "ctlgames/typecheck.hpp"

namespace ctlgames {

struct TranslationOutput {
  TermPtr term;
  TypePtr type;
  Fragment fragment;
};

class TranslationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Exception-passing translation L_RCE -> L_RC.
TypePtr exn_translate_type(const TypePtr& t);
/// Input must be elaborated. Computations of type T become computations of
/// type T^E + 1, values of type T become values of type T^E.
TranslationOutput exn_translate(const TermPtr& t, const TypingContext& ctx = {});

/// CPS translation L_RC -> L_R.
TypePtr cps_translate_type(const TypePtr& t);
/// Input must be elaborated and exception-free. Computations of type T become
/// values of type (T^C -> 0) -> 0. Mark uses the free variable `top_continuation_var()`.
TranslationOutput cps_translate(const TermPtr& t, const TypingContext& ctx = {});

/// The reserved top-level continuation variable (type 1 -> 0).
const std::string& top_continuation_var();
/// The reserved variable receiving an escaped global exception (type 1 -> 0).
const std::string& exception_exit_var();

/// For an elaborated program M^E : 1 + 1, the program (M^E)^C applied to the
/// continuation that passes in1 results to the top-level continuation and
/// in2 results to the exception exit.
TermPtr cps_program_from_exn(const TermPtr& exn_program);

/// Whether a run of `program` reached a call of the top-level continuation
/// on (). nullopt when the fuel ran out.
std::optional<bool> reaches_top_continuation(const TermPtr& program, std::int64_t fuel);

enum class Verdict { Pass, Fail, Inconclusive };
std::string verdict_name(Verdict v);

struct SoundnessReport {
  /// nullopt marks a leg that exhausted its fuel.
  std::optional<bool> direct;
  std::optional<bool> exn;
  std::optional<bool> cps;
  Verdict verdict;
};

/// Runs M, M^E and (M^E)^C under the machine and compares the three.
SoundnessReport check_translation_soundness(const TermPtr& program, std::int64_t fuel);

}  // namespace ctlgames
