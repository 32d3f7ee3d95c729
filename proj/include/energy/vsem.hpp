#ifndef ENERGY_VSEM_HPP
#define ENERGY_VSEM_HPP

// Threshold tests: the Top-continuous, finitely additive maps from energy
// values to {Bottom, Top}. On a chain these are exactly the up-sets
// starting at some cut, plus the constant Bottom map.

#include "energy/efun.hpp"

#include <optional>
#include <ostream>
#include <span>
#include <string>
#include <vector>

namespace energy {

class ThresholdTest {
public:
  /// The Bottom test, which rejects every energy.
  ThresholdTest() = default;

  static ThresholdTest never() { return ThresholdTest(); }
  /// Accepts x > t (strict) or x >= t (weak).
  static ThresholdTest at(const Rational& t, bool strict) { return ThresholdTest(Cut{t, !strict}); }
  static ThresholdTest above(const Rational& t) { return at(t, true); }
  static ThresholdTest from(const Rational& t) { return at(t, false); }
  static ThresholdTest from_cut(std::optional<Cut> c) { return c ? ThresholdTest(*c) : ThresholdTest(); }

  bool is_bottom() const { return !cut_; }
  const std::optional<Cut>& cut() const { return cut_; }
  const Rational& threshold() const { return cut_->at; }
  bool strict() const { return !cut_->included; }

  /// true stands for Top, false for Bottom.
  bool operator()(const EnergyValue& x) const {
    if (!cut_ || x.is_bottom()) return false;
    if (x.is_top()) return true;
    return cut_->covers(x.value());
  }

  friend bool operator==(const ThresholdTest&, const ThresholdTest&) = default;

private:
  explicit ThresholdTest(Cut c) : cut_(std::move(c)) {}

  std::optional<Cut> cut_;
};

inline bool apply(const ThresholdTest& v, const EnergyValue& x) { return v(x); }

/// Pointwise supremum: the larger accepting set wins.
inline ThresholdTest join(const ThresholdTest& v, const ThresholdTest& w) {
  if (v.is_bottom()) return w;
  if (w.is_bottom()) return v;
  return ThresholdTest::from_cut(std::min(*v.cut(), *w.cut()));
}

/// Left action f v = f; v, i.e. x is accepted iff f(x) is accepted by v.
inline ThresholdTest act(const EnergyFunction& f, const ThresholdTest& v) {
  if (f.is_bottom() || v.is_bottom()) return ThresholdTest::never();
  return ThresholdTest::from_cut(detail::first_cut_above(f, 0, v.threshold(), v.strict()));
}

/// Infinite product f f f ...: accepts x iff the orbit of x never reaches
/// Bottom. Orbits with f(x) >= x are nondecreasing and stay defined; orbits
/// with f(x) < x lose a fixed amount per step and die.
inline ThresholdTest omega(const EnergyFunction& f) {
  return ThresholdTest::from_cut(detail::first_cut_above(f, 1, 0, /*strict=*/false));
}

/// f_0 f_1 ... f_{n-1} composed left to right; identity when empty.
inline EnergyFunction compose_all(std::span<const EnergyFunction> fs) {
  EnergyFunction r = EnergyFunction::identity();
  for (const auto& f : fs) r = compose(r, f);
  return r;
}

/// Infinite product of the ultimately periodic sequence stem cycle cycle ...
inline ThresholdTest infinite_product_up(std::span<const EnergyFunction> stem,
                                         std::span<const EnergyFunction> cycle) {
  if (cycle.empty()) throw std::invalid_argument("infinite product needs a nonempty cycle");
  return act(compose_all(stem), omega(compose_all(cycle)));
}

inline std::string to_string(const ThresholdTest& v) {
  if (v.is_bottom()) return "never";
  return (v.strict() ? "above(" : "from(") + to_string(v.threshold()) + ")";
}

inline std::ostream& operator<<(std::ostream& os, const ThresholdTest& v) { return os << to_string(v); }

} // namespace energy

#endif // ENERGY_VSEM_HPP
