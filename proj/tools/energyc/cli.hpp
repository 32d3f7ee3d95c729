#ifndef ENERGYC_CLI_HPP
#define ENERGYC_CLI_HPP

#include "energy/energy.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

namespace energyc {

enum ExitCode : int { Yes = 0, Failure = 1, Error = 2, No = 3 };

struct Options {
  std::string file;
  std::string energy;
  bool witness = false;
  std::size_t depth = 8;
  std::size_t cycle = 4;
  std::string format = "dot";
};

inline energy::EnergyAutomaton read_automaton(const std::string& path, std::istream& in) {
  if (path == "-") return energy::load(in);
  std::ifstream file(path);
  if (!file) throw energy::LoadError("cannot open '" + path + "'");
  return energy::load(file);
}

inline energy::Rational read_energy(const std::string& text) {
  energy::Rational x = energy::parse_rational(text);
  if (x < 0) throw energy::ParseError("--energy must be nonnegative");
  return x;
}

inline const char* yes_no(bool b) { return b ? "yes" : "no"; }

inline int cmd_validate(const Options& o, std::istream& in, std::ostream& out) {
  try {
    auto a = read_automaton(o.file, in);
    out << "valid: " << a.size() << " states, " << a.accepting_count() << " accepting, " << a.transitions().size()
        << " transitions\n";
    return Yes;
  } catch (const std::exception& e) {
    out << "invalid: " << e.what() << "\n";
    return Error;
  }
}

inline int cmd_closure(const Options& o, std::istream& in, std::ostream& out, std::ostream& err) {
  auto a = read_automaton(o.file, in);
  auto block = energy::mat_star_block(a.matrix());
  auto elim = energy::mat_star_elim(a.matrix());
  std::ostringstream body;
  for (std::size_t i : a.user_order())
    for (std::size_t j : a.user_order()) {
      if (block(i, j) != elim(i, j)) {
        err << "error: star algorithms disagree at [" << a.name(i) << "," << a.name(j) << "]: block "
            << block(i, j) << " vs elimination " << elim(i, j) << "\n";
        return Failure;
      }
      body << "[" << a.name(i) << "," << a.name(j) << "] " << block(i, j) << "\n";
    }
  out << body.str();
  return Yes;
}

inline int cmd_behavior(const Options& o, std::istream& in, std::ostream& out, std::ostream& err) {
  auto a = read_automaton(o.file, in);
  if (a.accepting_count() == 0) err << "warning: no accepting state, Buchi behavior is never\n";
  out << "finite: " << energy::finite_behavior(a) << "\n";
  out << "buchi: " << energy::buchi_behavior(a) << "\n";
  return Yes;
}

inline int cmd_decide(const Options& o, bool buchi, std::istream& in, std::ostream& out) {
  auto a = read_automaton(o.file, in);
  auto x0 = read_energy(o.energy);
  bool answer = buchi ? energy::decide_buchi(a, x0) : energy::decide_reach(a, x0);
  std::ostringstream body;
  body << yes_no(answer) << "\n";
  if (o.witness) {
    auto w = buchi ? energy::buchi_lasso(a, x0, o.depth, o.cycle) : energy::reach_bfs(a, x0, o.depth);
    if (w)
      body << energy::to_string(a, *w);
    else
      body << "witness: none within depth " << o.depth << (buchi ? " and cycle " + std::to_string(o.cycle) : "")
           << "\n";
  }
  out << body.str();
  return answer ? Yes : No;
}

/// agree-yes, agree-no, inconclusive (algebra yes, no witness in bounds) or
/// conflict (witness found but algebra says no).
inline std::string verdict(bool algebra, bool oracle) {
  if (algebra && oracle) return "agree-yes";
  if (!algebra && !oracle) return "agree-no";
  return algebra ? "inconclusive" : "conflict";
}

inline int cmd_oracle_check(const Options& o, std::istream& in, std::ostream& out) {
  auto a = read_automaton(o.file, in);
  auto x0 = read_energy(o.energy);
  bool reach = energy::decide_reach(a, x0);
  bool buchi = energy::decide_buchi(a, x0);
  auto rw = energy::reach_bfs(a, x0, o.depth);
  auto bw = energy::buchi_lasso(a, x0, o.depth, o.cycle);
  bool replayed = (!rw || energy::replay(a, *rw)) && (!bw || energy::replay(a, *bw));
  std::string rv = verdict(reach, rw.has_value()), bv = verdict(buchi, bw.has_value());
  out << "reach: algebra=" << yes_no(reach) << " oracle=" << (rw ? "witness" : "none") << " " << rv << "\n";
  out << "buchi: algebra=" << yes_no(buchi) << " oracle=" << (bw ? "witness" : "none") << " " << bv << "\n";
  bool ok = replayed && rv != "conflict" && bv != "conflict";
  out << (ok ? "consistent" : "INCONSISTENT") << "\n";
  return ok ? Yes : Failure;
}

inline int cmd_export(const Options& o, std::istream& in, std::ostream& out) {
  auto a = read_automaton(o.file, in);
  if (o.format == "dot") {
    out << energy::to_dot(a);
    return Yes;
  }
  std::ostringstream body;
  for (std::size_t i : a.user_order())
    body << "state " << a.name(i) << (a.initial(i) ? " initial" : "") << (a.accepting(i) ? " accepting" : "") << "\n";
  for (const auto& t : a.transitions())
    if (!t.label.is_bottom()) body << a.name(t.from) << " -> " << a.name(t.to) << " " << t.label << "\n";
  out << body.str();
  return Yes;
}

/// Runs the command line `args` (without the program name).
inline int run(const std::vector<std::string>& args, std::istream& in, std::ostream& out, std::ostream& err) {
  CLI::App app{"Energy automaton solver", "energyc"};
  app.require_subcommand(1);
  Options o;

  auto file_arg = [&](CLI::App* sub) { sub->add_option("file", o.file, "Automaton document, or - for stdin")->required(); };
  auto energy_arg = [&](CLI::App* sub) {
    sub->add_option("--energy", o.energy, "Initial energy p or p/q")->required();
  };
  auto bounds = [&](CLI::App* sub, bool cycle) {
    sub->add_option("--depth", o.depth, "Oracle search depth")->check(CLI::NonNegativeNumber);
    if (cycle) sub->add_option("--cycle", o.cycle, "Oracle cycle length bound")->check(CLI::PositiveNumber);
  };

  auto* validate = app.add_subcommand("validate", "Check a document");
  file_arg(validate);
  auto* closure = app.add_subcommand("closure", "Print M* (both algorithms, checked for agreement)");
  file_arg(closure);
  auto* behavior = app.add_subcommand("behavior", "Print finite and Buchi behaviors");
  file_arg(behavior);
  auto* reach = app.add_subcommand("reach", "Decide reachability of an accepting state");
  file_arg(reach);
  energy_arg(reach);
  reach->add_flag("--witness", o.witness, "Search for an oracle witness");
  bounds(reach, false);
  auto* buchi = app.add_subcommand("buchi", "Decide Buchi acceptance");
  file_arg(buchi);
  energy_arg(buchi);
  buchi->add_flag("--witness", o.witness, "Search for an oracle witness");
  bounds(buchi, true);
  auto* check = app.add_subcommand("oracle-check", "Compare algebraic decisions against the oracle");
  file_arg(check);
  energy_arg(check);
  bounds(check, true);
  auto* dot = app.add_subcommand("export-dot", "Emit the automaton as a DOT graph");
  file_arg(dot);
  dot->add_option("--format", o.format, "Output format")->check(CLI::IsMember({"text", "dot"}));

  std::vector<const char*> argv{"energyc"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return Yes;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return Error;
  }

  try {
    if (*validate) return cmd_validate(o, in, out);
    if (*closure) return cmd_closure(o, in, out, err);
    if (*behavior) return cmd_behavior(o, in, out, err);
    if (*reach) return cmd_decide(o, false, in, out);
    if (*buchi) return cmd_decide(o, true, in, out);
    if (*check) return cmd_oracle_check(o, in, out);
    return cmd_export(o, in, out);
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return Error;
  }
}

} // namespace energyc

#endif // ENERGYC_CLI_HPP
