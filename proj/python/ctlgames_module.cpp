#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "ctlgames/machine.hpp"
#include "ctlgames/parser.hpp"
#include "ctlgames/report.hpp"
#include "ctlgames/typecheck.hpp"

namespace py = pybind11;
using namespace ctlgames;

namespace {

TermPtr load(const std::string& source) { return elaborate_program(parse_program(source)); }

Mode to_mode(const std::string& s) {
  if (s == "plain") return Mode::Plain;
  if (s == "control") return Mode::Control;
  if (s == "exn" || s == "exception") return Mode::Exception;
  throw py::value_error("mode must be plain, control or exn");
}

Fuel query_fuel(std::int64_t per_query) {
  Fuel f;
  f.per_query = per_query;
  return f;
}

const char* outcome_kind(Outcome::Kind k) {
  switch (k) {
    case Outcome::Converged:
      return "converged";
    case Outcome::UncaughtException:
      return "uncaught";
    case Outcome::OutOfFuel:
      return "out_of_fuel";
    case Outcome::Stuck:
      return "stuck";
  }
  return "?";
}

py::object tri(const std::optional<bool>& b) { return b ? py::object(py::bool_(*b)) : py::object(py::none()); }

py::dict row_dict(const CheckRow& r) {
  py::dict d;
  d["name"] = r.name;
  d["machine"] = tri(r.machine);
  d["exn"] = tri(r.exn);
  d["cps"] = tri(r.cps);
  d["probe_control"] = tri(r.probe_control);
  d["probe_exn"] = tri(r.probe_exn);
  d["soundness"] = verdict_name(r.soundness);
  d["adequacy"] = verdict_name(r.adequacy);
  d["k"] = verdict_name(r.k);
  d["error"] = r.error;
  return d;
}

// A program's denotation, queried through the trace format.
class PyStrategy {
 public:
  PyStrategy(StrategyPtr s, std::int64_t fuel) : s_(std::move(s)), fuel_(query_fuel(fuel)) {}

  // The Player reply to a position, as one trace line; None when silent.
  py::object respond(const std::string& trace) const {
    Position p = parse_trace(s_->game(), trace);
    Fuel f = fuel_;
    Response r = s_->respond(p, f);
    if (r.kind == Response::OutOfFuel) throw std::runtime_error("out of fuel");
    if (r.kind != Response::Play) return py::none();
    p.push_back(r.move);
    std::string t = format_trace(s_->game(), p);
    t.pop_back();
    return py::str(t.substr(t.rfind('\n') + 1));
  }

  std::vector<std::string> plays(int depth) const {
    std::vector<std::string> out;
    for (const auto& p : materialize(s_, depth, fuel_)) out.push_back(format_trace(s_->game(), p));
    return out;
  }

  py::object converges() const { return tri(probe_top(s_, fuel_)); }

  std::string mode() const { return mode_name(s_->mode()); }

 private:
  StrategyPtr s_;
  Fuel fuel_;
};

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Abstract machine, translations and game models for a call-by-value language with control";

  m.def(
      "run",
      [](const std::string& source, std::int64_t fuel) {
        Outcome o = run(load(source), fuel);
        py::dict d;
        d["kind"] = outcome_kind(o.kind);
        d["steps"] = o.steps;
        d["text"] = outcome_to_string(o);
        return d;
      },
      py::arg("source"), py::arg("fuel") = 10000);

  m.def(
      "translate",
      [](const std::string& source, const std::string& pass) {
        TermPtr t = load(source);
        if (pass == "exn") return print_term(exn_translate(t).term);
        if (pass == "cps") return print_term(cps_translate(t).term);
        if (pass == "both") return print_term(cps_program_from_exn(exn_translate(t).term));
        throw py::value_error("pass must be exn, cps or both");
      },
      py::arg("source"), py::arg("pass") = "both");

  m.def(
      "arena",
      [](const std::string& type, const std::string& mode, bool sigma) {
        Family f = denote_type(parse_type(type), to_mode(mode));
        std::vector<std::string> out;
        if (sigma) out.push_back(arena_to_dot(computation_arena(f, to_mode(mode))));
        else
          for (const auto& a : f.members) out.push_back(arena_to_dot(*a));
        return out;
      },
      py::arg("type"), py::arg("mode") = "plain", py::arg("sigma") = false,
      "Edge lists of the arenas denoting a type, one per family member.");

  py::class_<PyStrategy>(m, "Strategy")
      .def("respond", &PyStrategy::respond, py::arg("trace"))
      .def("plays", &PyStrategy::plays, py::arg("depth") = 12)
      .def("converges", &PyStrategy::converges)
      .def_property_readonly("mode", &PyStrategy::mode);

  m.def(
      "denote",
      [](const std::string& source, const std::string& mode, std::int64_t fuel) {
        return PyStrategy(denote(load(source), to_mode(mode)), fuel);
      },
      py::arg("source"), py::arg("mode") = "control", py::arg("fuel") = 2000);

  m.def(
      "check",
      [](const std::string& source, const std::string& name, std::int64_t fuel, int depth) {
        CheckOptions opts;
        opts.fuel = fuel;
        opts.depth = depth;
        return row_dict(check_program(name, source, opts));
      },
      py::arg("source"), py::arg("name") = "program", py::arg("fuel") = 10000, py::arg("depth") = 12);

  m.def(
      "check_corpus",
      [](const std::string& dir, std::int64_t fuel, int depth) {
        CheckOptions opts;
        opts.fuel = fuel;
        opts.depth = depth;
        py::list out;
        for (const auto& r : check_corpus(dir, opts)) out.append(row_dict(r));
        return out;
      },
      py::arg("dir"), py::arg("fuel") = 10000, py::arg("depth") = 12);

  m.def(
      "laws",
      [](std::uint64_t seed, int trials, int depth) {
        LawOptions o;
        o.seed = seed;
        o.trials = trials;
        o.depth = depth;
        py::list out;
        for (const auto& r : run_laws(o)) {
          py::dict d;
          d["name"] = r.name;
          d["verdict"] = verdict_name(r.verdict);
          d["expected_failure"] = r.expected_failure;
          d["trials"] = r.trials;
          d["counterexample"] = r.counterexample;
          out.append(d);
        }
        return out;
      },
      py::arg("seed") = 0, py::arg("trials") = 10, py::arg("depth") = 8);
}
