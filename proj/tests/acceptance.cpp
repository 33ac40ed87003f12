// One line per acceptance criterion; exit status is nonzero if any fails.
#include <chrono>
#include <iostream>
#include <sstream>

#include "ctlgames/arenas.hpp"
#include "ctlgames/report.hpp"

using namespace ctlgames;

#ifndef CTLGAMES_CORPUS_DIR
#define CTLGAMES_CORPUS_DIR "corpus"
#endif

namespace {

int failures = 0;

void report(int n, bool ok, const std::string& what, const std::string& detail) {
  failures += !ok;
  std::cout << (ok ? "PASS " : "FAIL ") << n << " " << what << ": " << detail << std::endl;
}

double since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

std::string secs(double s) {
  std::ostringstream out;
  out.precision(3);
  out << std::fixed << s << "s";
  return out.str();
}

int count_if_not(const std::vector<CheckRow>& rows, Verdict CheckRow::*field) {
  int n = 0;
  for (const auto& r : rows) n += r.*field != Verdict::Pass;
  return n;
}

// Drives σ with the given Opponent moves; empty when σ stops answering.
Position drive(const StrategyPtr& sigma, const std::vector<Move>& opponent) {
  Position s;
  for (const auto& o : opponent) {
    s.push_back(o);
    Fuel f;
    Response r = sigma->respond(s, f);
    if (r.kind != Response::Play) return {};
    s.push_back(r.move);
  }
  return s;
}

Move O(int node, int just, int ctl = kNoCtl) { return {1, node, just, ctl}; }

void corpus_criteria() {
  CheckOptions opts;
  auto t0 = std::chrono::steady_clock::now();
  auto rows = check_corpus(CTLGAMES_CORPUS_DIR, opts);
  // one pass runs all three checks, so its time bounds each of them
  double total = since(t0);
  int n = static_cast<int>(rows.size());

  int bad = count_if_not(rows, &CheckRow::soundness);
  report(1, n >= 25 && bad == 0 && total < 10.0, "translation soundness",
         std::to_string(n) + " programs, " + std::to_string(bad) + " disagreements, " + secs(total));
  bad = count_if_not(rows, &CheckRow::adequacy);
  report(2, n >= 25 && bad == 0, "adequacy", std::to_string(n) + " programs, " + std::to_string(bad) + " mismatches");
  bad = count_if_not(rows, &CheckRow::k);
  report(3, n >= 25 && bad == 0 && total < 60.0, "K-correspondence at length 12",
         std::to_string(n) + " programs, " + std::to_string(bad) + " failures, " + secs(total));
}

void play_criterion() {
  std::vector<std::string> wrong;
  auto expect = [&](const std::string& name, const Game& g, const Position& s, const std::string& trace, bool ok) {
    if (s.empty() || format_trace(g, s) != trace || !ok) wrong.push_back(name);
  };

  auto cc = callcc_strategy(one_type(), zero_type());
  auto s = drive(cc, {O(0, -1), O(4, 1)});
  expect("callcc", cc->game(), s,
         "0 label O Q just=- ctl=-\n1 ok P Q just=0 ctl=-\n2 jump O Q just=1 ctl=-\n3 caught P A just=0 ctl=-\n",
         !s.empty() && is_legal(cc->game(), s) && !is_well_bracketed(cc->game(), s));

  auto ec = exn_c_strategy();
  s = drive(ec, {O(0, -1, kStar), O(2, 1, kStar), O(5, 1, 3)});
  expect("exn_C", ec->game(), s,
         "0 q O Q just=- ctl=*\n1 a P A just=0 ctl=-\n2 try O Q just=1 ctl=*\n3 ok P Q just=2 ctl=2\n"
         "4 raise O Q just=1 ctl=3\n5 caught P A just=2 ctl=-\n",
         !s.empty() && is_control_sequence(ec->game(), s));

  auto ee = exn_e_strategy();
  const Game& g = ee->game();
  s = drive(ee, {O(0, -1), O(2, 1), O(7, 1), O(6, 3)});
  expect("exn_E left", g, s,
         "0 q O Q just=- ctl=-\n1 a P A just=0 ctl=-\n2 try O Q just=1 ctl=-\n3 ok P Q just=2 ctl=-\n"
         "4 raise O Q just=1 ctl=-\n5 e(raise) P A just=4 ctl=-\n6 e(ok) O A just=3 ctl=-\n"
         "7 caught P A just=2 ctl=-\n",
         !s.empty() && is_legal(g, s) && is_player_well_bracketed(g, s));
  s = drive(ee, {O(0, -1), O(2, 1), O(6, 3)});
  expect("exn_E right", g, s,
         "0 q O Q just=- ctl=-\n1 a P A just=0 ctl=-\n2 try O Q just=1 ctl=-\n3 ok P Q just=2 ctl=-\n"
         "4 e(ok) O A just=3 ctl=-\n5 e(try) P A just=2 ctl=-\n",
         !s.empty() && is_legal(g, s) && is_player_well_bracketed(g, s));

  std::string detail = "4 plays";
  for (const auto& w : wrong) detail += ", mismatch in " + w;
  report(4, wrong.empty(), "plays reproduced bit-exactly", detail);
}

bool is_factor_law(const LawResult& r) { return r.name.find("factorization") != std::string::npos; }

void law_criteria() {
  LawOptions opts;
  opts.depth = 8;
  std::string bad;
  for (const auto& r : run_laws(opts)) {
    if (is_factor_law(r)) continue;
    if ((r.verdict == Verdict::Fail) != r.expected_failure || r.verdict == Verdict::Inconclusive) bad += " " + r.name + ";";
  }
  report(5, bad.empty(), "category and functor laws", bad.empty() ? "all laws hold, counterexample found" : bad);

  opts.depth = 10;
  opts.trials = 20;
  std::string fbad;
  int legs = 0;
  for (const auto& r : run_laws(opts)) {
    if (!is_factor_law(r)) continue;
    ++legs;
    if (r.verdict != Verdict::Pass || r.trials != 20) fbad += " " + r.name + ";";
  }
  report(6, legs == 2 && fbad.empty(), "factorization through callcc and exn",
         fbad.empty() ? "20 samples per leg at length 10" : fbad);
}

void arena_criterion() {
  int checked = 0;
  std::string bad;
  for (const auto& t : enumerate_types(6)) {
    auto ex = denote_type(t, Mode::Exception);
    auto sigma_e = exn_lifted_sum(ex);
    Family ue, k;
    for (const auto& a : ex.members) {
      ue.members.push_back(std::make_shared<Arena>(forget_exn(*a)));
      k.members.push_back(std::make_shared<Arena>(erase_exception_answers(*a)));
    }
    ue.members.push_back(std::make_shared<Arena>());
    bool ok = arena_equal(forget_exn(sigma_e), lifted_sum(ue)) && arena_equal(erase_exception_answers(sigma_e), lifted_sum(k));
    auto plain = denote_type(t, Mode::Plain);
    auto cps = denote_type(cps_translate_type(t), Mode::Plain);
    auto phi = cps_iso(t);
    ok = ok && static_cast<int>(phi.size()) == plain.size() && cps.size() == plain.size();
    for (int i = 0; ok && i < plain.size(); ++i)
      ok = validate_iso(relabel_answers_as_questions(*plain.members[i]), *cps.members[i], phi[i]).empty();
    if (!ok) bad += " " + type_to_string(t);
    ++checked;
  }
  report(7, bad.empty(), "arena isomorphisms", std::to_string(checked) + " types of size <= 6" + bad);
}

}  // namespace

int main() {
  corpus_criteria();
  play_criterion();
  law_criteria();
  arena_criterion();
  std::cout << "N/A  8 full abstraction: not reproducible; it quantifies over all contexts and needs definability"
            << std::endl;
  return failures == 0 ? 0 : 1;
}
