#ifndef ENERGY_AUTOMATON_HPP
#define ENERGY_AUTOMATON_HPP

#include "energy/efun.hpp"
#include "energy/matrix.hpp"
#include "energy/vsem.hpp"

#include <json.hpp>

#include <algorithm>
#include <cstddef>
#include <istream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace energy {

class LoadError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// One edge of the automaton. State indices are internal (accepting first).
struct Transition {
  std::size_t from = 0;
  std::size_t to = 0;
  EnergyFunction label;
};

/// Energy automaton (alpha, M, k). Internally the accepting states occupy
/// indices 0..k-1; the order the states were given in is kept for output.
class EnergyAutomaton {
public:
  /// `initial` and `accepting` hold indices into `names`; so do the
  /// endpoints of `transitions`, which are renumbered on construction.
  EnergyAutomaton(std::vector<std::string> names, const std::vector<std::size_t>& initial,
                  const std::vector<std::size_t>& accepting, std::vector<Transition> transitions) {
    const std::size_t n = names.size();
    if (n == 0) throw LoadError("automaton has no states");
    std::vector<bool> acc(n, false);
    for (std::size_t a : accepting) acc.at(a) = true;

    std::vector<std::size_t> internal_to_user;
    for (int pass = 0; pass < 2; ++pass)
      for (std::size_t u = 0; u < n; ++u)
        if (acc[u] == (pass == 0)) internal_to_user.push_back(u);
    k_ = static_cast<std::size_t>(std::count(acc.begin(), acc.end(), true));
    std::vector<std::size_t> position(n);
    for (std::size_t i = 0; i < n; ++i) position[internal_to_user[i]] = i;
    user_order_ = position;

    names_.resize(n);
    for (std::size_t i = 0; i < n; ++i) names_[i] = std::move(names[internal_to_user[i]]);

    alpha_.assign(n, false);
    for (std::size_t s : initial) alpha_[position.at(s)] = true;
    if (std::find(alpha_.begin(), alpha_.end(), true) == alpha_.end())
      throw LoadError("automaton has no initial state");

    matrix_ = FunctionMatrix(n);
    for (Transition& t : transitions) {
      t.from = position.at(t.from);
      t.to = position.at(t.to);
      matrix_(t.from, t.to) = join(matrix_(t.from, t.to), t.label);
    }
    transitions_ = std::move(transitions);
  }

  std::size_t size() const { return names_.size(); }
  std::size_t accepting_count() const { return k_; }
  bool accepting(std::size_t i) const { return i < k_; }
  bool initial(std::size_t i) const { return alpha_[i]; }
  const std::vector<bool>& alpha() const { return alpha_; }
  const std::string& name(std::size_t i) const { return names_[i]; }
  const FunctionMatrix& matrix() const { return matrix_; }
  const std::vector<Transition>& transitions() const { return transitions_; }
  /// Internal indices listed in the order the states were declared.
  const std::vector<std::size_t>& user_order() const { return user_order_; }

private:
  std::vector<std::string> names_;
  std::vector<std::size_t> user_order_;
  std::size_t k_ = 0;
  std::vector<bool> alpha_;
  FunctionMatrix matrix_;
  std::vector<Transition> transitions_;
};

namespace detail {

inline const nlohmann::json& field(const nlohmann::json& obj, const char* key, const std::string& where) {
  if (!obj.is_object() || !obj.contains(key)) throw LoadError(where + ": missing field '" + key + "'");
  return obj.at(key);
}

inline Rational number(const nlohmann::json& j, const std::string& where) {
  if (!j.is_string()) throw LoadError(where + ": numbers must be strings \"p\" or \"p/q\"");
  try {
    return parse_rational(j.get<std::string>());
  } catch (const ParseError& e) {
    throw LoadError(where + ": " + e.what());
  }
}

inline bool flag(const nlohmann::json& j, const std::string& where) {
  if (!j.is_boolean()) throw LoadError(where + ": expected a boolean");
  return j.get<bool>();
}

inline std::vector<std::string> string_list(const nlohmann::json& doc, const char* key) {
  const auto& list = field(doc, key, "document");
  if (!list.is_array()) throw LoadError(std::string("'") + key + "' must be a list of strings");
  std::vector<std::string> out;
  for (const auto& s : list) {
    if (!s.is_string()) throw LoadError(std::string("'") + key + "' must be a list of strings");
    out.push_back(s.get<std::string>());
  }
  return out;
}

} // namespace detail

/// Parses a function document: "bottom" or
/// {pieces: [{start, start_included, value, slope}], top_start?: {start, included}}.
inline EnergyFunction parse_function(const nlohmann::json& j, const std::string& where = "function") {
  if (j.is_string() && j.get<std::string>() == "bottom") return EnergyFunction::bottom();
  if (!j.is_object()) throw LoadError(where + ": expected \"bottom\" or an object");
  const auto& list = detail::field(j, "pieces", where);
  if (!list.is_array()) throw LoadError(where + ": 'pieces' must be a list");
  std::vector<Piece> pieces;
  for (std::size_t i = 0; i < list.size(); ++i) {
    std::string at = where + " piece " + std::to_string(i);
    const auto& p = list[i];
    pieces.push_back(Piece{detail::number(detail::field(p, "start", at), at),
                           detail::flag(detail::field(p, "start_included", at), at),
                           detail::number(detail::field(p, "value", at), at),
                           detail::number(detail::field(p, "slope", at), at)});
  }
  std::optional<Cut> top;
  if (j.contains("top_start")) {
    const auto& t = j.at("top_start");
    std::string at = where + " top_start";
    top = Cut{detail::number(detail::field(t, "start", at), at), detail::flag(detail::field(t, "included", at), at)};
  }
  if (pieces.empty() && !top) throw LoadError(where + ": no pieces and no top_start (use \"bottom\")");
  try {
    return EnergyFunction::validate(std::move(pieces), std::move(top));
  } catch (const ValidationError& e) {
    throw LoadError(where + ": " + e.what());
  }
}

inline nlohmann::json function_to_json(const EnergyFunction& f) {
  if (f.is_bottom()) return "bottom";
  nlohmann::json pieces = nlohmann::json::array();
  for (const Piece& p : f.pieces())
    pieces.push_back({{"start", to_string(p.start)},
                      {"start_included", p.start_included},
                      {"value", to_string(p.value)},
                      {"slope", to_string(p.slope)}});
  nlohmann::json j = {{"pieces", pieces}};
  if (f.top_start()) j["top_start"] = {{"start", to_string(f.top_start()->at)}, {"included", f.top_start()->included}};
  return j;
}

inline EnergyAutomaton load(const nlohmann::json& doc) {
  if (!doc.is_object()) throw LoadError("document must be an object");
  std::vector<std::string> states = detail::string_list(doc, "states");
  std::map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < states.size(); ++i)
    if (!index.emplace(states[i], i).second) throw LoadError("duplicate state '" + states[i] + "'");
  auto lookup = [&](const std::string& s, const std::string& where) {
    auto it = index.find(s);
    if (it == index.end()) throw LoadError(where + ": unknown state '" + s + "'");
    return it->second;
  };

  std::vector<std::size_t> initial, accepting;
  for (const auto& s : detail::string_list(doc, "initial")) initial.push_back(lookup(s, "initial"));
  for (const auto& s : detail::string_list(doc, "accepting")) accepting.push_back(lookup(s, "accepting"));
  if (initial.empty()) throw LoadError("'initial' must name at least one state");

  const auto& list = detail::field(doc, "transitions", "document");
  if (!list.is_array()) throw LoadError("'transitions' must be a list");
  std::vector<Transition> transitions;
  for (std::size_t i = 0; i < list.size(); ++i) {
    std::string where = "transition " + std::to_string(i);
    const auto& t = list[i];
    auto endpoint = [&](const char* key) {
      const auto& s = detail::field(t, key, where);
      if (!s.is_string()) throw LoadError(where + ": '" + key + "' must be a state name");
      return lookup(s.get<std::string>(), where);
    };
    std::size_t from = endpoint("from"), to = endpoint("to");
    where += " (" + states[from] + " -> " + states[to] + ")";
    transitions.push_back(Transition{from, to, parse_function(detail::field(t, "function", where), where)});
  }
  return EnergyAutomaton(std::move(states), initial, accepting, std::move(transitions));
}

inline EnergyAutomaton load(std::istream& in) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(in);
  } catch (const nlohmann::json::parse_error& e) {
    throw LoadError(std::string("malformed document: ") + e.what());
  }
  return load(doc);
}

/// |A| = alpha M* kappa: joins M*[i][j] over initial i and accepting j.
inline EnergyFunction finite_behavior(const EnergyAutomaton& a) {
  if (a.accepting_count() == 0) return EnergyFunction::bottom();
  FunctionMatrix closure = mat_star_block(a.matrix());
  EnergyFunction r;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a.initial(i))
      for (std::size_t j = 0; j < a.accepting_count(); ++j) r = join(r, closure(i, j));
  return r;
}

/// Per-state Buechi vector: with M = [a b; c d] split after the accepting
/// states, it stacks (a + b d* c)^w over d* c (a + b d* c)^w.
inline TestVector buchi_vector(const EnergyAutomaton& aut) {
  const std::size_t n = aut.size(), k = aut.accepting_count();
  if (k == 0) return TestVector(n);
  const FunctionMatrix& m = aut.matrix();
  if (k == n) return mat_omega(m);

  FunctionMatrix a = m.block(0, 0, k, k);
  FunctionMatrix b = m.block(0, k, k, n - k);
  FunctionMatrix c = m.block(k, 0, n - k, k);
  FunctionMatrix d_star = mat_star_block(m.block(k, k, n - k, n - k));

  TestVector head = mat_omega(mat_join(a, mat_mul(mat_mul(b, d_star), c)));
  TestVector tail = mat_act(mat_mul(d_star, c), head);
  head.insert(head.end(), tail.begin(), tail.end());
  return head;
}

/// ||A||; the Bottom test when there is no accepting state.
inline ThresholdTest buchi_behavior(const EnergyAutomaton& a) { return row_act(a.alpha(), buchi_vector(a)); }

/// Is some accepting state reachable from energy x0?
inline bool decide_reach(const EnergyAutomaton& a, const Rational& x0) {
  return !finite_behavior(a)(EnergyValue(x0)).is_bottom();
}

/// Is there an infinite run from energy x0 visiting accepting states infinitely often?
inline bool decide_buchi(const EnergyAutomaton& a, const Rational& x0) {
  return buchi_behavior(a)(EnergyValue(x0));
}

/// Graphviz rendering in declaration order; Bottom edges are left out.
inline std::string to_dot(const EnergyAutomaton& a) {
  auto quote = [](const std::string& s) {
    std::string q = "\"";
    for (char ch : s) {
      if (ch == '"' || ch == '\\') q += '\\';
      q += ch;
    }
    return q + "\"";
  };
  std::ostringstream os;
  os << "digraph energy_automaton {\n  rankdir=LR;\n";
  for (std::size_t i : a.user_order())
    os << "  " << quote(a.name(i)) << " [shape=" << (a.accepting(i) ? "doublecircle" : "circle") << "];\n";
  std::size_t init = 0;
  for (std::size_t i : a.user_order())
    if (a.initial(i)) {
      os << "  __init" << init << " [shape=point];\n";
      os << "  __init" << init++ << " -> " << quote(a.name(i)) << ";\n";
    }
  for (const Transition& t : a.transitions())
    if (!t.label.is_bottom())
      os << "  " << quote(a.name(t.from)) << " -> " << quote(a.name(t.to)) << " [label=" << quote(to_string(t.label))
         << "];\n";
  os << "}\n";
  return os.str();
}

} // namespace energy

#endif // ENERGY_AUTOMATON_HPP
