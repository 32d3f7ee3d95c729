#ifndef ENERGY_ORACLE_HPP
#define ENERGY_ORACLE_HPP

// Brute-force search over global states (state, energy). Used only to
// cross-check the algebraic decision procedures; a missing witness within
// the bounds proves nothing.

#include "energy/automaton.hpp"

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

namespace energy {

struct Step {
  std::size_t from = 0;
  std::size_t transition = 0;
  std::size_t to = 0;
  EnergyValue energy; ///< after firing
};

struct Witness {
  enum class Kind { FinitePath, Lasso };

  Kind kind = Kind::FinitePath;
  std::size_t start = 0;
  EnergyValue start_energy;
  std::vector<Step> path;
  std::vector<Step> cycle;
  EnergyValue cycle_entry_energy;
};

namespace detail {

struct Node {
  std::size_t state;
  EnergyValue energy;
  std::vector<Step> path;
};

/// Keeps the best energy seen per state; lower or equal energies are
/// dominated since every run from them is also possible from the better one.
class Frontier {
public:
  explicit Frontier(std::size_t n) : best_(n) {}

  bool admit(std::size_t state, const EnergyValue& e) {
    if (best_[state] && e <= *best_[state]) return false;
    best_[state] = e;
    return true;
  }

private:
  std::vector<std::optional<EnergyValue>> best_;
};

/// Breadth-first enumeration of pruned global states up to `depth` steps.
/// The visitor returns true to stop.
template <class Visit>
bool explore(const EnergyAutomaton& a, const Rational& x0, std::size_t depth, Visit&& visit) {
  Frontier seen(a.size());
  std::vector<Node> level;
  for (std::size_t s = 0; s < a.size(); ++s)
    if (a.initial(s) && seen.admit(s, EnergyValue(x0))) level.push_back(Node{s, EnergyValue(x0), {}});
  for (std::size_t d = 0;; ++d) {
    for (const Node& node : level)
      if (visit(node)) return true;
    if (d == depth) return false;
    std::vector<Node> next;
    for (const Node& node : level)
      for (std::size_t t = 0; t < a.transitions().size(); ++t) {
        const Transition& tr = a.transitions()[t];
        if (tr.from != node.state) continue;
        EnergyValue e = tr.label(node.energy);
        if (e.is_bottom() || !seen.admit(tr.to, e)) continue;
        Node child{tr.to, e, node.path};
        child.path.push_back(Step{tr.from, t, tr.to, e});
        next.push_back(std::move(child));
      }
    if (next.empty()) return false;
    level = std::move(next);
  }
}

/// A cycle entered at Top only stands for arbitrarily large finite entries,
/// so it must not lose energy from some finite point on.
inline bool eventually_nondecreasing(const EnergyFunction& g) {
  if (g.is_bottom()) return false;
  if (g.top_start()) return true;
  const Piece& last = g.pieces().back();
  return last.slope > 1 || last.offset() >= 0;
}

inline bool cycle_closes(const EnergyAutomaton& a, const std::vector<Step>& cycle, const EnergyValue& entry,
                         const EnergyValue& exit) {
  if (!entry.is_top()) return exit >= entry;
  EnergyFunction g = identity();
  for (const Step& s : cycle) g = compose(g, a.transitions()[s.transition].label);
  return eventually_nondecreasing(g);
}

/// Cycles of exactly `length` steps from `state` back to itself, through an
/// accepting state, ending at an energy no lower than the entry energy.
inline bool find_cycle(const EnergyAutomaton& a, std::size_t state, const EnergyValue& entry, std::size_t length,
                       std::size_t current, const EnergyValue& energy, bool seen_accepting,
                       std::vector<Step>& cycle) {
  if (cycle.size() == length) return current == state && seen_accepting && cycle_closes(a, cycle, entry, energy);
  for (std::size_t t = 0; t < a.transitions().size(); ++t) {
    const Transition& tr = a.transitions()[t];
    if (tr.from != current) continue;
    EnergyValue e = tr.label(energy);
    if (e.is_bottom()) continue;
    cycle.push_back(Step{tr.from, t, tr.to, e});
    if (find_cycle(a, state, entry, length, tr.to, e, seen_accepting || a.accepting(tr.to), cycle)) return true;
    cycle.pop_back();
  }
  return false;
}

} // namespace detail

/// Finite run from an initial state to an accepting one in at most
/// `max_len` transitions.
inline std::optional<Witness> reach_bfs(const EnergyAutomaton& a, const Rational& x0, std::size_t max_len) {
  std::optional<Witness> found;
  detail::explore(a, x0, max_len, [&](const detail::Node& node) {
    if (!a.accepting(node.state)) return false;
    std::size_t start = node.path.empty() ? node.state : node.path.front().from;
    found = Witness{Witness::Kind::FinitePath, start, EnergyValue(x0), node.path, {}, {}};
    return true;
  });
  return found;
}

/// Stem of at most `max_stem` steps followed by a cycle of at most
/// `max_cycle` steps through an accepting state whose composed label does
/// not lose energy at the entry point. Such a cycle can be repeated forever.
/// Top energies are read as "any finite energy".
inline std::optional<Witness> buchi_lasso(const EnergyAutomaton& a, const Rational& x0, std::size_t max_stem,
                                          std::size_t max_cycle) {
  std::optional<Witness> found;
  detail::explore(a, x0, max_stem, [&](const detail::Node& node) {
    for (std::size_t len = 1; len <= max_cycle; ++len) {
      std::vector<Step> cycle;
      if (detail::find_cycle(a, node.state, node.energy, len, node.state, node.energy, a.accepting(node.state),
                             cycle)) {
        std::size_t start = node.path.empty() ? node.state : node.path.front().from;
        found = Witness{Witness::Kind::Lasso, start, EnergyValue(x0), node.path, std::move(cycle), node.energy};
        return true;
      }
    }
    return false;
  });
  return found;
}

/// Re-runs a witness through the transition labels and checks every claim.
inline bool replay(const EnergyAutomaton& a, const Witness& w) {
  if (w.start >= a.size() || !a.initial(w.start)) return false;
  std::size_t state = w.start;
  EnergyValue energy = w.start_energy;
  auto run = [&](const std::vector<Step>& steps, bool& accepting_seen) {
    for (const Step& s : steps) {
      if (s.transition >= a.transitions().size()) return false;
      const Transition& tr = a.transitions()[s.transition];
      if (s.from != state || tr.from != state || tr.to != s.to) return false;
      energy = tr.label(energy);
      if (energy.is_bottom() || energy != s.energy) return false;
      state = s.to;
      accepting_seen = accepting_seen || a.accepting(state);
    }
    return true;
  };
  bool unused = false;
  if (!run(w.path, unused)) return false;
  if (w.kind == Witness::Kind::FinitePath) return a.accepting(state);

  if (w.cycle.empty() || energy != w.cycle_entry_energy) return false;
  std::size_t entry_state = state;
  bool accepting_seen = a.accepting(state);
  if (!run(w.cycle, accepting_seen)) return false;
  return state == entry_state && accepting_seen && detail::cycle_closes(a, w.cycle, w.cycle_entry_energy, energy);
}

/// One line per step, `from --label--> to @ energy`; the cycle of a lasso
/// follows a `cycle:` line.
inline std::string to_string(const EnergyAutomaton& a, const Witness& w) {
  std::string out = "start " + a.name(w.start) + " @ " + to_string(w.start_energy) + "\n";
  auto steps = [&](const std::vector<Step>& ss) {
    for (const Step& s : ss)
      out += a.name(s.from) + " --" + to_string(a.transitions()[s.transition].label) + "--> " + a.name(s.to) +
             " @ " + to_string(s.energy) + "\n";
  };
  steps(w.path);
  if (w.kind == Witness::Kind::Lasso) {
    out += "cycle:\n";
    steps(w.cycle);
  }
  return out;
}

} // namespace energy

#endif // ENERGY_ORACLE_HPP
