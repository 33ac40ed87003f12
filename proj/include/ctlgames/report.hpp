#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ctlgames/strategies.hpp"
#include "ctlgames/translations.hpp"

namespace ctlgames {

struct CheckOptions {
  std::int64_t fuel = 10000;  // machine steps
  Fuel internal{};            // strategy queries
  int depth = 12;             // play length for the K comparison
};

struct CheckRow {
  std::string name;
  std::optional<bool> machine, exn, cps;
  std::optional<bool> probe_control, probe_exn;
  Verdict soundness = Verdict::Inconclusive;
  Verdict adequacy = Verdict::Inconclusive;
  Verdict k = Verdict::Inconclusive;
  double seconds = 0;
  std::string error;
};

CheckRow check_program(const std::string& name, const std::string& source, const CheckOptions& opts);

/// One row per `.ctl` file directly under `dir`, ordered by file name.
std::vector<CheckRow> check_corpus(const std::string& dir, const CheckOptions& opts);

/// Tab-separated rows under a header line. Timings are left out unless asked
/// for, so that reports are reproducible byte for byte.
std::string format_check_tsv(const std::vector<CheckRow>& rows, bool timing = false);
std::string format_check_table(const std::vector<CheckRow>& rows, bool timing = false);

bool any_verdict(const std::vector<CheckRow>& rows, Verdict v);

struct LawOptions {
  std::uint64_t seed = 0;
  int trials = 100;
  int depth = 8;
  Fuel fuel{};
};

struct LawResult {
  std::string name;
  Verdict verdict = Verdict::Pass;
  /// The law is expected to fail; the verdict records whether it did.
  bool expected_failure = false;
  int trials = 0;
  std::string counterexample;
};

std::vector<LawResult> run_laws(const LawOptions& opts);
std::string format_laws(const std::vector<LawResult>& results);

std::string read_file(const std::string& path);

}  // namespace ctlgames
