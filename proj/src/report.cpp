#include "ctlgames/report.hpp"

#include <algorithm>
#include <chrono>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <random>
#include <sstream>

#include "ctlgames/machine.hpp"
#include "ctlgames/parser.hpp"
#include "ctlgames/typecheck.hpp"

namespace ctlgames {

namespace {

std::string cell(const std::optional<bool>& b) {
  if (!b) return "fuel";
  return *b ? "yes" : "no";
}

Verdict agree(const std::optional<bool>& want, std::initializer_list<std::optional<bool>> got) {
  if (!want) return Verdict::Inconclusive;
  for (const auto& g : got)
    if (!g) return Verdict::Inconclusive;
  for (const auto& g : got)
    if (*g != *want) return Verdict::Fail;
  return Verdict::Pass;
}

std::vector<std::string> row_cells(const CheckRow& r, bool timing) {
  std::vector<std::string> c{r.name,
                             cell(r.machine),
                             cell(r.exn),
                             cell(r.cps),
                             cell(r.probe_control),
                             cell(r.probe_exn),
                             verdict_name(r.soundness),
                             verdict_name(r.adequacy),
                             verdict_name(r.k)};
  if (timing) {
    std::ostringstream t;
    t << std::fixed << std::setprecision(3) << r.seconds;
    c.push_back(t.str());
  }
  c.push_back(r.error);
  return c;
}

std::vector<std::string> header(bool timing) {
  std::vector<std::string> h{"program", "machine", "exn", "cps", "probe_c", "probe_e", "sound", "adequate", "K"};
  if (timing) h.push_back("secs");
  h.push_back("note");
  return h;
}

}  // namespace

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

CheckRow check_program(const std::string& name, const std::string& source, const CheckOptions& opts) {
  CheckRow row;
  row.name = name;
  auto t0 = std::chrono::steady_clock::now();
  try {
    TermPtr m = elaborate_program(parse_program(source));
    SoundnessReport s = check_translation_soundness(m, opts.fuel);
    row.machine = s.direct;
    row.exn = s.exn;
    row.cps = s.cps;
    row.soundness = s.verdict;
    StrategyPtr c = denote(m, Mode::Control);
    StrategyPtr e = denote(m, Mode::Exception);
    row.probe_control = probe_top(c, opts.internal);
    row.probe_exn = probe_top(e, opts.internal);
    row.adequacy = agree(row.machine, {row.probe_control, row.probe_exn});
    Comparison k = equal_to_depth(k_functor(e), c, opts.depth, opts.internal);
    row.k = !k.equal ? Verdict::Fail : k.inconclusive ? Verdict::Inconclusive : Verdict::Pass;
  } catch (const std::exception& ex) {
    row.soundness = row.adequacy = row.k = Verdict::Fail;
    row.error = ex.what();
    std::replace(row.error.begin(), row.error.end(), '\t', ' ');
    std::replace(row.error.begin(), row.error.end(), '\n', ' ');
  }
  row.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
  return row;
}

std::vector<CheckRow> check_corpus(const std::string& dir, const CheckOptions& opts) {
  std::vector<std::filesystem::path> files;
  for (const auto& entry : std::filesystem::directory_iterator(dir))
    if (entry.is_regular_file() && entry.path().extension() == ".ctl") files.push_back(entry.path());
  std::sort(files.begin(), files.end());
  // sequential: the desugarer's fresh-name counter is process-wide
  std::vector<CheckRow> rows;
  for (const auto& f : files) rows.push_back(check_program(f.stem().string(), read_file(f.string()), opts));
  return rows;
}

std::string format_check_tsv(const std::vector<CheckRow>& rows, bool timing) {
  std::ostringstream out;
  auto line = [&](const std::vector<std::string>& cells) {
    for (size_t i = 0; i < cells.size(); ++i) out << (i ? "\t" : "") << cells[i];
    out << "\n";
  };
  line(header(timing));
  for (const auto& r : rows) line(row_cells(r, timing));
  return out.str();
}

std::string format_check_table(const std::vector<CheckRow>& rows, bool timing) {
  std::vector<std::vector<std::string>> all{header(timing)};
  for (const auto& r : rows) all.push_back(row_cells(r, timing));
  std::vector<size_t> width(all[0].size(), 0);
  for (const auto& cells : all)
    for (size_t i = 0; i < cells.size(); ++i) width[i] = std::max(width[i], cells[i].size());
  std::ostringstream out;
  for (const auto& cells : all) {
    std::string line;
    for (size_t i = 0; i < cells.size(); ++i) {
      line += cells[i];
      if (i + 1 < cells.size()) line += std::string(width[i] - cells[i].size() + 2, ' ');
    }
    while (!line.empty() && line.back() == ' ') line.pop_back();
    out << line << "\n";
  }
  return out.str();
}

bool any_verdict(const std::vector<CheckRow>& rows, Verdict v) {
  return std::any_of(rows.begin(), rows.end(),
                     [&](const CheckRow& r) { return r.soundness == v || r.adequacy == v || r.k == v; });
}

// ---------------------------------------------------------------- laws

namespace {

struct Triple {
  StrategyPtr f, g, h;
};

Triple random_triple(std::uint64_t seed, const CompactOptions& opts) {
  auto arenas = small_arenas(opts.mode);
  std::mt19937_64 rng(seed);
  auto pick = [&] { return arenas[rng() % arenas.size()]; };
  ArenaPtr a = pick(), b = pick(), c = pick(), d = pick();
  return {random_compact(Game{a, b}, seed * 3 + 0, opts), random_compact(Game{b, c}, seed * 3 + 1, opts),
          random_compact(Game{c, d}, seed * 3 + 2, opts)};
}

// Accumulates trials of one law, keeping the first counterexample.
struct Law {
  LawResult r;
  Law(std::string name, bool expected_failure = false) {
    r.name = std::move(name);
    r.expected_failure = expected_failure;
  }
  void same(const StrategyPtr& x, const StrategyPtr& y, int depth, const Fuel& fuel, const std::string& tag) {
    Comparison c = equal_to_depth(x, y, depth, fuel);
    if (!c.equal) fail(tag + "\n" + c.counterexample);
    else if (c.inconclusive && r.verdict == Verdict::Pass) r.verdict = Verdict::Inconclusive;
  }
  void fail(const std::string& why) {
    if (r.verdict != Verdict::Fail) r.counterexample = why;
    r.verdict = Verdict::Fail;
  }
};

std::vector<StrategyPtr> closed_samples(const CompactOptions& opts, int count, std::uint64_t seed, int depth,
                                        const Fuel& fuel) {
  auto arenas = small_arenas(Mode::Control);
  auto unit = std::make_shared<Arena>();
  std::vector<StrategyPtr> out;
  for (std::uint64_t s = seed; static_cast<int>(out.size()) < count; ++s) {
    auto sigma = random_compact(Game{unit, arenas[s % arenas.size()]}, 1000 + s, opts);
    if (materialize(sigma, depth, fuel).size() >= 8) out.push_back(sigma);
  }
  return out;
}

}  // namespace

std::vector<LawResult> run_laws(const LawOptions& o) {
  std::vector<LawResult> out;
  auto tag = [](std::uint64_t s) { return "seed " + std::to_string(s); };

  for (Mode mode : {Mode::Plain, Mode::Control}) {
    CompactOptions opts;
    opts.mode = mode;
    Law left("left identity (" + mode_name(mode) + ")"), right("right identity (" + mode_name(mode) + ")"),
        assoc("associativity (" + mode_name(mode) + ")");
    for (int i = 0; i < o.trials; ++i) {
      std::uint64_t s = o.seed + i;
      auto t = random_triple(s, opts);
      left.same(compose(identity(t.f->game().dom, mode), t.f), t.f, o.depth, o.fuel, tag(s));
      right.same(compose(t.f, identity(t.f->game().cod, mode)), t.f, o.depth, o.fuel, tag(s));
      assoc.same(compose(compose(t.f, t.g), t.h), compose(t.f, compose(t.g, t.h)), o.depth, o.fuel, tag(s));
    }
    for (Law* l : {&left, &right, &assoc}) {
      l->r.trials = o.trials;
      out.push_back(l->r);
    }
  }

  {
    CompactOptions opts;
    opts.well_bracketed = true;
    Law l("hat functoriality (well-bracketed)");
    for (int i = 0; i < o.trials; ++i) {
      std::uint64_t s = o.seed + i;
      auto t = random_triple(s, opts);
      l.same(hat(compose(t.f, t.g)), compose(hat(t.f), hat(t.g)), o.depth, o.fuel, tag(s));
    }
    l.r.trials = o.trials;
    out.push_back(l.r);
  }

  {
    Family zero, one{{std::make_shared<Arena>()}};
    auto s1 = std::make_shared<Arena>(lifted_sum(one));
    auto s00 = std::make_shared<Arena>(function_space(lifted_sum(zero), lifted_sum(zero)));
    auto f = copycat(Game{s1, s00}, Mode::Plain, {{{1, 0}, {0, 0}}, {{1, 1}, {0, 1}}});
    auto g = copycat(Game{s00, s1}, Mode::Plain, {{{1, 0}, {0, 0}}, {{1, 1}, {0, 1}}});
    Law iso("sigma1 iso sigma0=>sigma0 (plain)");
    iso.same(compose(g, f), identity(s00, Mode::Plain), o.depth, o.fuel, "g;f");
    iso.same(compose(f, g), identity(s1, Mode::Plain), o.depth, o.fuel, "f;g");
    iso.r.trials = 1;
    out.push_back(iso.r);
    Law lifted("hat(g);hat(f) = id (length 4)", true);
    lifted.same(compose(hat(g), hat(f)), identity(s00, Mode::Control), 4, o.fuel, "hat(g);hat(f)");
    lifted.r.trials = 1;
    out.push_back(lifted.r);
  }

  {
    Law l("K preserves identities");
    for (const auto& a : small_arenas(Mode::Exception)) {
      auto k = std::make_shared<Arena>(erase_exception_answers(*a));
      l.same(k_functor(identity(a, Mode::Exception)), identity(k, Mode::Control), o.depth, o.fuel, arena_to_dot(*a));
      ++l.r.trials;
    }
    out.push_back(l.r);
  }

  {
    CompactOptions opts;
    opts.mode = Mode::Exception;
    opts.exception_propagating = true;
    opts.max_len = 3 * o.depth;
    Law l("exception-propagating composition");
    int n = std::min(o.trials, 50);
    for (int i = 0; i < n; ++i) {
      std::uint64_t s = o.seed + i;
      auto t = random_triple(s, opts);
      auto w = find_non_propagating(compose(t.f, t.g), o.depth, o.fuel);
      if (!w.empty()) l.fail(tag(s) + "\n" + w);
    }
    l.r.trials = n;
    out.push_back(l.r);
  }

  int n = std::min(o.trials, 20);
  {
    CompactOptions opts;
    opts.mode = Mode::Control;
    opts.control_blind = true;
    opts.anchored = true;
    opts.max_len = o.depth;
    opts.silence = 0;
    Law l("callcc factorization (control-blind)");
    auto cc = callcc_constant(one_type(), zero_type(), Mode::Control);
    int i = 0;
    for (const auto& sigma : closed_samples(opts, n, o.seed, o.depth, o.fuel))
      l.same(compose(cc, factor_callcc(sigma)), sigma, o.depth, o.fuel, "sample " + std::to_string(i++));
    l.r.trials = n;
    out.push_back(l.r);
  }
  {
    CompactOptions opts;
    opts.mode = Mode::Control;
    opts.max_len = o.depth;
    opts.silence = 0;
    Law l("exn factorization");
    auto e = exn_c_strategy();
    int i = 0;
    for (const auto& sigma : closed_samples(opts, n, o.seed, o.depth, o.fuel)) {
      auto tau = factor_exn(sigma);
      l.same(compose(e, tau), sigma, o.depth, o.fuel, "sample " + std::to_string(i));
      if (!is_control_blind(tau, o.depth, o.fuel)) l.fail("sample " + std::to_string(i) + ": witness not control-blind");
      ++i;
    }
    l.r.trials = n;
    out.push_back(l.r);
  }
  return out;
}

std::string format_laws(const std::vector<LawResult>& results) {
  std::ostringstream out;
  for (const auto& r : results) {
    std::string v = verdict_name(r.verdict);
    if (r.expected_failure) v = r.verdict == Verdict::Fail ? "expected-fail" : "unexpected-" + v;
    out << r.name << "\t" << v << "\t" << r.trials << "\n";
    if (!r.counterexample.empty()) {
      std::istringstream lines(r.counterexample);
      for (std::string line; std::getline(lines, line);) out << "  " << line << "\n";
    }
  }
  return out.str();
}

}  // namespace ctlgames
