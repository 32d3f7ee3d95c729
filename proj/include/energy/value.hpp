#ifndef ENERGY_VALUE_HPP
#define ENERGY_VALUE_HPP

#include "energy/rational.hpp"

#include <compare>
#include <ostream>
#include <string>

namespace energy {

/// An element of the lattice [0, Top] with an extra Bottom below zero.
class EnergyValue {
public:
  enum class Kind { Bottom, Finite, Top };

  EnergyValue() = default;
  EnergyValue(const Rational& x) : kind_(Kind::Finite), value_(x) {}
  EnergyValue(long x) : kind_(Kind::Finite), value_(x) {}

  static EnergyValue bottom() { return EnergyValue(); }
  static EnergyValue top() {
    EnergyValue v;
    v.kind_ = Kind::Top;
    return v;
  }

  Kind kind() const { return kind_; }
  bool is_bottom() const { return kind_ == Kind::Bottom; }
  bool is_top() const { return kind_ == Kind::Top; }
  bool is_finite() const { return kind_ == Kind::Finite; }

  /// Only meaningful for finite values.
  const Rational& value() const { return value_; }

  friend bool operator==(const EnergyValue& a, const EnergyValue& b) {
    return a.kind_ == b.kind_ && (a.kind_ != Kind::Finite || a.value_ == b.value_);
  }

  friend std::strong_ordering operator<=>(const EnergyValue& a, const EnergyValue& b) {
    if (a.kind_ != b.kind_) return static_cast<int>(a.kind_) <=> static_cast<int>(b.kind_);
    if (a.kind_ != Kind::Finite) return std::strong_ordering::equal;
    int c = cmp(a.value_, b.value_);
    return c < 0 ? std::strong_ordering::less
                 : c > 0 ? std::strong_ordering::greater : std::strong_ordering::equal;
  }

  /// Shifts a finite value; Bottom and Top absorb.
  EnergyValue operator+(const Rational& d) const {
    if (!is_finite()) return *this;
    return EnergyValue(Rational(value_ + d));
  }

private:
  Kind kind_ = Kind::Bottom;
  Rational value_;
};

inline const EnergyValue& max(const EnergyValue& a, const EnergyValue& b) { return a < b ? b : a; }

inline std::string to_string(const EnergyValue& v) {
  switch (v.kind()) {
  case EnergyValue::Kind::Bottom: return "bottom";
  case EnergyValue::Kind::Top: return "top";
  default: return to_string(v.value());
  }
}

inline std::ostream& operator<<(std::ostream& os, const EnergyValue& v) { return os << to_string(v); }

} // namespace energy

#endif // ENERGY_VALUE_HPP
