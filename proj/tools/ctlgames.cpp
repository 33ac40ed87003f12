#include <cstdlib>
#include <filesystem>
#include <iostream>
#include <string>

#include "CLI11.hpp"
#include "ctlgames/machine.hpp"
#include "ctlgames/parser.hpp"
#include "ctlgames/report.hpp"
#include "ctlgames/typecheck.hpp"

using namespace ctlgames;

namespace {

TermPtr load_program(const std::string& path) { return elaborate_program(parse_program(read_file(path))); }

Mode parse_mode(const std::string& s) {
  if (s == "plain") return Mode::Plain;
  if (s == "control") return Mode::Control;
  if (s == "exn" || s == "exception") return Mode::Exception;
  throw CLI::ValidationError("--mode", "expected plain, control or exn");
}

std::string default_corpus() {
  const char* env = std::getenv("CTLGAMES_CORPUS");
  return env && *env ? env : "corpus";
}

std::string last_line(const Game& g, const Position& s) {
  std::string t = format_trace(g, s);
  t.pop_back();
  return t.substr(t.rfind('\n') + 1);
}

std::string describe(const Game& g, const Move& m) {
  std::string out = move_id(g, m) + " just=" + (m.just < 0 ? std::string("-") : std::to_string(m.just));
  if (m.ctl != kNoCtl) out += " ctl=" + (m.ctl == kStar ? std::string("*") : std::to_string(m.ctl));
  return out;
}

int explore(const StrategyPtr& sigma, const Fuel& fuel) {
  const Game& g = sigma->game();
  bool control = sigma->mode() == Mode::Control;
  Position s;
  std::cout << "commands: <n> play move n, u undo, t trace, q quit\n";
  for (;;) {
    auto moves = opponent_moves(g, s, control);
    if (moves.empty()) std::cout << "no Opponent moves\n";
    for (size_t i = 0; i < moves.size(); ++i) std::cout << "  [" << i << "] " << describe(g, moves[i]) << "\n";
    std::cout << "> " << std::flush;
    std::string line;
    if (!std::getline(std::cin, line) || line == "q") return 0;
    if (line == "t") {
      std::cout << format_trace(g, s);
      continue;
    }
    if (line == "u") {
      if (s.size() >= 2) s.resize(s.size() - 2);
      continue;
    }
    size_t pick;
    try {
      pick = std::stoul(line);
    } catch (const std::exception&) {
      std::cout << "?\n";
      continue;
    }
    if (pick >= moves.size()) {
      std::cout << "no such move\n";
      continue;
    }
    s.push_back(moves[pick]);
    std::cout << last_line(g, s) << "\n";
    Fuel f = fuel;
    Response r = sigma->respond(s, f);
    if (r.kind != Response::Play) {
      std::cout << response_to_string(g, r) << "\n";
      s.pop_back();
      continue;
    }
    s.push_back(r.move);
    std::cout << last_line(g, s) << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Control games: machine, translations and game models for a call-by-value language"};
  app.require_subcommand(1);

  std::int64_t fuel = 10000;
  std::int64_t internal = 2000;
  int depth = 12;
  std::string file, mode_text = "control";

  auto* run = app.add_subcommand("run", "Evaluate a program on the abstract machine");
  bool trace = false;
  run->add_option("file", file, "Program source")->required();
  run->add_option("--fuel", fuel, "Machine steps");
  run->add_flag("--trace", trace, "Print every configuration");

  auto* translate = app.add_subcommand("translate", "Print a translated program");
  std::string pass = "both";
  translate->add_option("file", file, "Program source")->required();
  translate->add_option("--pass", pass, "exn, cps or both")->check(CLI::IsMember({"exn", "cps", "both"}));

  auto* arena = app.add_subcommand("arena", "Print the arenas denoting a type");
  std::string type_text;
  bool dot = false, sigma = false;
  arena->add_option("type", type_text, "Type, e.g. \"(1 -> 0) -> 1\"")->required();
  arena->add_option("--mode", mode_text, "plain, control or exception");
  arena->add_flag("--dot", dot, "One edge per line: parent -> child Q|A [E]");
  arena->add_flag("--sigma", sigma, "The computation arena over the type instead of its family");

  auto* denote_cmd = app.add_subcommand("denote", "Materialize the play-set of a program");
  denote_cmd->add_option("file", file, "Program source")->required();
  denote_cmd->add_option("--mode", mode_text, "control or exn");
  denote_cmd->add_option("--depth", depth, "Maximum play length");
  denote_cmd->add_option("--fuel", internal, "Internal steps per query");

  auto* explore_cmd = app.add_subcommand("explore", "Play against the denotation of a program");
  explore_cmd->add_option("file", file, "Program source")->required();
  explore_cmd->add_option("--mode", mode_text, "control or exn");
  explore_cmd->add_option("--fuel", internal, "Internal steps per query");

  auto* check = app.add_subcommand("check", "Soundness, adequacy and K checks over a corpus or one file");
  std::string path;
  bool tsv = false, timing = false, allow_inconclusive = false;
  check->add_option("path", path, "Corpus directory or program (default $CTLGAMES_CORPUS, else ./corpus)");
  check->add_option("--fuel", fuel, "Machine steps");
  check->add_option("--internal-fuel", internal, "Internal steps per query");
  check->add_option("--depth", depth, "Play length for the K comparison");
  check->add_flag("--tsv", tsv, "Tab-separated output");
  check->add_flag("--timing", timing, "Add a seconds column");
  check->add_flag("--allow-inconclusive", allow_inconclusive, "Exit 0 when cells ran out of fuel");

  auto* laws = app.add_subcommand("laws", "Property checks on generated strategies");
  LawOptions law_opts;
  laws->add_option("--seed", law_opts.seed, "First seed");
  laws->add_option("--trials", law_opts.trials, "Strategies per law");
  laws->add_option("--depth", law_opts.depth, "Play length");
  laws->add_option("--fuel", internal, "Internal steps per query");

  CLI11_PARSE(app, argc, argv);
  Fuel query_fuel;
  query_fuel.per_query = internal;

  try {
    if (*run) {
      TraceHook hook;
      if (trace) hook = [](const MachineConfig& c, std::int64_t i) { std::cout << i << "\t" << config_to_string(c) << "\n"; };
      Outcome o = run_config(initial_config(load_program(file)), fuel, hook);
      std::cout << outcome_to_string(o) << "\n";
      return 0;
    }
    if (*translate) {
      TermPtr m = load_program(file);
      if (pass == "exn") {
        std::cout << print_term(exn_translate(m).term) << "\n";
      } else if (pass == "cps") {
        std::cout << print_term(cps_translate(m).term) << "\n";
      } else {
        std::cout << print_term(cps_program_from_exn(exn_translate(m).term)) << "\n";
      }
      return 0;
    }
    if (*arena) {
      Mode mode = parse_mode(mode_text);
      Family f = denote_type(parse_type(type_text), mode);
      std::vector<Arena> shown;
      if (sigma) shown.push_back(computation_arena(f, mode));
      else
        for (const auto& a : f.members) shown.push_back(*a);
      for (size_t i = 0; i < shown.size(); ++i) {
        if (shown.size() > 1) std::cout << "# index " << i << "\n";
        if (dot) {
          std::cout << arena_to_dot(shown[i]);
          continue;
        }
        for (int n = 0; n < shown[i].size(); ++n) {
          const auto& node = shown[i].nodes[n];
          std::cout << n << " " << node.name << " " << (node.question ? 'Q' : 'A') << " parent="
                    << (node.parent < 0 ? std::string("-") : std::to_string(node.parent)) << (node.exn_answer ? " E" : "")
                    << "\n";
        }
      }
      return 0;
    }
    if (*denote_cmd || *explore_cmd) {
      Mode mode = parse_mode(mode_text);
      if (mode == Mode::Plain) throw CLI::ValidationError("--mode", "programs denote in control or exn mode");
      StrategyPtr s = denote(load_program(file), mode);
      if (*explore_cmd) return explore(s, query_fuel);
      for (const auto& p : materialize(s, depth, query_fuel)) std::cout << format_trace(s->game(), p) << "\n";
      return 0;
    }
    if (*check) {
      if (path.empty()) path = default_corpus();
      CheckOptions opts;
      opts.fuel = fuel;
      opts.internal = query_fuel;
      opts.depth = depth;
      std::vector<CheckRow> rows;
      if (std::filesystem::is_directory(path)) {
        rows = check_corpus(path, opts);
      } else {
        rows.push_back(check_program(std::filesystem::path(path).stem().string(), read_file(path), opts));
      }
      std::cout << (tsv ? format_check_tsv(rows, timing) : format_check_table(rows, timing));
      if (any_verdict(rows, Verdict::Fail)) return 1;
      if (any_verdict(rows, Verdict::Inconclusive) && !allow_inconclusive) return 2;
      return 0;
    }
    if (*laws) {
      law_opts.fuel = query_fuel;
      auto results = run_laws(law_opts);
      std::cout << format_laws(results);
      for (const auto& r : results)
        if ((r.verdict == Verdict::Fail) != r.expected_failure) return 1;
      return 0;
    }
  } catch (const CLI::Error& e) {
    return app.exit(e);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
