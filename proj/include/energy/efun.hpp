#ifndef ENERGY_EFUN_HPP
#define ENERGY_EFUN_HPP

// Extended energy functions: maps on [0, Top] plus Bottom that satisfy
// f(y) >= f(x) + y - x wherever both sides are defined. The computable
// subclass handled here is piecewise affine with rational data.

#include "energy/rational.hpp"
#include "energy/value.hpp"

#include <algorithm>
#include <cassert>
#include <compare>
#include <cstddef>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace energy {

/// A position on the nonnegative axis that splits points into a left and a
/// right part. Cut{s, true} sits just before s (s lies to its right),
/// Cut{s, false} just after s. Cuts at the same coordinate order
/// included-first.
struct Cut {
  Rational at;
  bool included = true;

  /// True when point x lies to the right of this cut.
  bool covers(const Rational& x) const { return at < x || (at == x && included); }

  friend bool operator==(const Cut& a, const Cut& b) { return a.at == b.at && a.included == b.included; }
  friend std::strong_ordering operator<=>(const Cut& a, const Cut& b) {
    int c = cmp(a.at, b.at);
    if (c != 0) return c < 0 ? std::strong_ordering::less : std::strong_ordering::greater;
    if (a.included == b.included) return std::strong_ordering::equal;
    return a.included ? std::strong_ordering::less : std::strong_ordering::greater;
  }
};

/// Affine segment: value + slope * (x - start) from its start cut up to the
/// next piece (or the Top region). For an open start, value is the limit.
struct Piece {
  Rational start;
  bool start_included = true;
  Rational value;
  Rational slope{1};

  Cut start_cut() const { return Cut{start, start_included}; }
  Rational at(const Rational& x) const {
    Rational y = value + slope * (x - start);
    return y;
  }
  Rational offset() const {
    Rational c = value - slope * start;
    return c;
  }

  friend bool operator==(const Piece& a, const Piece& b) {
    return a.start == b.start && a.start_included == b.start_included && a.value == b.value &&
           a.slope == b.slope;
  }
};

class ValidationError : public std::invalid_argument {
public:
  enum class Kind { SlopeTooSmall, NegativeJump, UnsortedPieces, NegativeValue };

  ValidationError(Kind kind, std::size_t piece)
      : std::invalid_argument(describe(kind, piece)), kind_(kind), piece_(piece) {}

  Kind kind() const { return kind_; }
  std::size_t piece() const { return piece_; }

  static const char* name(Kind k) {
    switch (k) {
    case Kind::SlopeTooSmall: return "SlopeTooSmall";
    case Kind::NegativeJump: return "NegativeJump";
    case Kind::UnsortedPieces: return "UnsortedPieces";
    default: return "NegativeValue";
    }
  }

private:
  static std::string describe(Kind k, std::size_t piece) {
    return std::string(name(k)) + " at piece " + std::to_string(piece);
  }

  Kind kind_;
  std::size_t piece_;
};

class EnergyFunction;
EnergyFunction canonicalize(std::vector<Piece> pieces, std::optional<Cut> top);

/// Extended energy function in canonical form. Either the Bottom function
/// or a (possibly empty) run of pieces followed by an optional Top region.
/// Values are always canonical, so operator== is semantic equality.
class EnergyFunction {
public:
  /// The Bottom function, zero of the semiring.
  EnergyFunction() = default;

  static EnergyFunction bottom() { return EnergyFunction(); }
  static EnergyFunction identity() { return affine(0, true, 0, 1); }

  /// x -> slope * x + offset on the domain starting at (lower, included).
  static EnergyFunction affine(const Rational& lower, bool included, const Rational& value_at_lower,
                               const Rational& slope) {
    return validate({Piece{lower, included, value_at_lower, slope}}, std::nullopt);
  }

  /// Checks the energy-function conditions and returns the canonical form.
  static EnergyFunction validate(std::vector<Piece> pieces, std::optional<Cut> top) {
    for (std::size_t i = 0; i < pieces.size(); ++i) {
      const Piece& p = pieces[i];
      if (p.start < 0 || p.value < 0) throw ValidationError(ValidationError::Kind::NegativeValue, i);
      if (p.slope < 1) throw ValidationError(ValidationError::Kind::SlopeTooSmall, i);
      if (i > 0) {
        const Piece& prev = pieces[i - 1];
        if (!(prev.start_cut() < p.start_cut()))
          throw ValidationError(ValidationError::Kind::UnsortedPieces, i);
        if (p.value < prev.at(p.start)) throw ValidationError(ValidationError::Kind::NegativeJump, i);
      }
    }
    if (top && top->at < 0) throw ValidationError(ValidationError::Kind::NegativeValue, pieces.size());
    return canonicalize(std::move(pieces), std::move(top));
  }

  bool is_bottom() const { return bottom_; }
  const std::vector<Piece>& pieces() const { return pieces_; }
  const std::optional<Cut>& top_start() const { return top_; }

  /// Lower bound of the domain; empty for the Bottom function.
  std::optional<Cut> domain_start() const {
    if (bottom_) return std::nullopt;
    if (!pieces_.empty()) return pieces_.front().start_cut();
    return top_;
  }

  /// Cut where piece i ends: the next piece start, the Top region, or none.
  std::optional<Cut> end_cut(std::size_t i) const {
    if (i + 1 < pieces_.size()) return pieces_[i + 1].start_cut();
    return top_;
  }

  EnergyValue operator()(const EnergyValue& x) const {
    if (bottom_ || x.is_bottom()) return EnergyValue::bottom();
    if (x.is_top()) return EnergyValue::top();
    const Rational& v = x.value();
    if (top_ && top_->covers(v)) return EnergyValue::top();
    for (auto it = pieces_.rbegin(); it != pieces_.rend(); ++it)
      if (it->start_cut().covers(v)) return EnergyValue(it->at(v));
    return EnergyValue::bottom();
  }

  friend bool operator==(const EnergyFunction& a, const EnergyFunction& b) {
    return a.bottom_ == b.bottom_ && a.pieces_ == b.pieces_ && a.top_ == b.top_;
  }

private:
  friend EnergyFunction canonicalize(std::vector<Piece> pieces, std::optional<Cut> top);

  bool bottom_ = true;
  std::vector<Piece> pieces_;
  std::optional<Cut> top_;
};

/// Normal form: shadowed pieces dropped, single-point pieces carry slope 1,
/// continuous boundaries use included starts, and continuous collinear
/// neighbours are merged. Assumes the input already satisfies the
/// energy-function conditions.
inline EnergyFunction canonicalize(std::vector<Piece> pieces, std::optional<Cut> top) {
  if (top) std::erase_if(pieces, [&](const Piece& p) { return p.start_cut() >= *top; });
  EnergyFunction f;
  if (pieces.empty() && !top) return f;

  auto end_cut = [&](std::size_t i) -> std::optional<Cut> {
    if (i + 1 < pieces.size()) return pieces[i + 1].start_cut();
    return top;
  };
  auto is_point = [&](std::size_t i) {
    auto e = end_cut(i);
    return pieces[i].start_included && e && *e == Cut{pieces[i].start, false};
  };

  for (std::size_t i = 0; i < pieces.size(); ++i)
    if (is_point(i)) pieces[i].slope = 1;

  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t i = 0; i + 1 < pieces.size(); ++i) {
      Piece& p = pieces[i];
      Piece& q = pieces[i + 1];
      if (q.value != p.at(q.start)) continue;
      if (is_point(i)) {
        q.start_included = true;
        pieces.erase(pieces.begin() + static_cast<std::ptrdiff_t>(i));
      } else if (is_point(i + 1) || p.slope == q.slope) {
        pieces.erase(pieces.begin() + static_cast<std::ptrdiff_t>(i + 1));
      } else if (!q.start_included) {
        q.start_included = true;
      } else {
        continue;
      }
      changed = true;
      break;
    }
  }

  f.bottom_ = false;
  f.pieces_ = std::move(pieces);
  f.top_ = std::move(top);
  return f;
}

inline EnergyFunction bottom_function() { return EnergyFunction::bottom(); }
inline EnergyFunction identity() { return EnergyFunction::identity(); }

inline EnergyValue eval(const EnergyFunction& f, const EnergyValue& x) { return f(x); }

inline bool equals(const EnergyFunction& f, const EnergyFunction& g) { return f == g; }

namespace detail {

/// Shape of a function around one point: Bottom, Top, or the affine line
/// slope * x + offset.
struct Local {
  enum class Kind { Bottom, Top, Line } kind = Kind::Bottom;
  Rational slope;
  Rational offset;

  static Local bottom() { return {}; }
  static Local top() { return {Kind::Top, {}, {}}; }
  static Local line(Rational m, Rational c) { return {Kind::Line, std::move(m), std::move(c)}; }

  Rational at(const Rational& x) const {
    Rational y = slope * x + offset;
    return y;
  }
};

inline Local local_at(const EnergyFunction& f, const Rational& x) {
  if (f.is_bottom()) return Local::bottom();
  if (f.top_start() && f.top_start()->covers(x)) return Local::top();
  const auto& ps = f.pieces();
  for (auto it = ps.rbegin(); it != ps.rend(); ++it)
    if (it->start_cut().covers(x)) return Local::line(it->slope, it->offset());
  return Local::bottom();
}

/// Coordinates of every cut of f.
inline void collect_breakpoints(const EnergyFunction& f, std::vector<Rational>& out) {
  for (const Piece& p : f.pieces()) out.push_back(p.start);
  if (f.top_start()) out.push_back(f.top_start()->at);
}

inline void normalize_breakpoints(std::vector<Rational>& bps) {
  bps.push_back(0);
  std::erase_if(bps, [](const Rational& b) { return b < 0; });
  std::sort(bps.begin(), bps.end());
  bps.erase(std::unique(bps.begin(), bps.end()), bps.end());
}

/// Sample point strictly inside the open interval after breakpoint i.
inline Rational interval_sample(const std::vector<Rational>& bps, std::size_t i) {
  if (i + 1 < bps.size()) return midpoint(bps[i], bps[i + 1]);
  Rational s = bps[i] + 1;
  return s;
}

/// Builds a canonical function from its local shape on every atom (each
/// breakpoint and each open interval between consecutive breakpoints).
/// `shape(x)` must be constant on each open interval.
template <class Shape>
EnergyFunction assemble(std::vector<Rational> bps, Shape&& shape) {
  normalize_breakpoints(bps);
  std::vector<Piece> pieces;
  std::optional<Cut> top;
  auto emit = [&](const Local& l, const Rational& b, bool included) {
    if (top) return;
    switch (l.kind) {
    case Local::Kind::Bottom: assert(pieces.empty()); break;
    case Local::Kind::Top: top = Cut{b, included}; break;
    case Local::Kind::Line: pieces.push_back(Piece{b, included, l.at(b), l.slope}); break;
    }
  };
  for (std::size_t i = 0; i < bps.size() && !top; ++i) {
    emit(shape(bps[i]), bps[i], true);
    emit(shape(interval_sample(bps, i)), bps[i], false);
  }
  return canonicalize(std::move(pieces), std::move(top));
}

/// First cut from which f(x) - (a*x + b) > 0 (strict) or >= 0 (weak) holds;
/// the Top region always qualifies. Requires a <= 1 so the difference is
/// nondecreasing on the domain of f.
inline std::optional<Cut> first_cut_above(const EnergyFunction& f, const Rational& a, const Rational& b,
                                          bool strict) {
  if (f.is_bottom()) return std::nullopt;
  const auto& ps = f.pieces();
  for (std::size_t i = 0; i < ps.size(); ++i) {
    Cut start = ps[i].start_cut();
    Rational k = ps[i].slope - a;
    Rational d = ps[i].offset() - b;
    Cut candidate;
    if (k == 0) {
      if (strict ? d <= 0 : d < 0) continue;
      candidate = start;
    } else {
      Rational root = -d / k;
      candidate = std::max(start, Cut{root, !strict});
    }
    auto end = f.end_cut(i);
    if (!end || candidate < *end) return candidate;
  }
  return f.top_start();
}

} // namespace detail

/// Pointwise maximum; Bottom values are absorbed.
inline EnergyFunction join(const EnergyFunction& f, const EnergyFunction& g) {
  if (f.is_bottom()) return g;
  if (g.is_bottom()) return f;
  using detail::Local;
  std::vector<Rational> bps;
  detail::collect_breakpoints(f, bps);
  detail::collect_breakpoints(g, bps);
  detail::normalize_breakpoints(bps);

  // Where two lines cross inside an interval the maximum switches sides.
  std::vector<Rational> crossings;
  for (std::size_t i = 0; i < bps.size(); ++i) {
    Rational s = detail::interval_sample(bps, i);
    Local lf = detail::local_at(f, s), lg = detail::local_at(g, s);
    if (lf.kind != Local::Kind::Line || lg.kind != Local::Kind::Line || lf.slope == lg.slope) continue;
    Rational x = (lg.offset - lf.offset) / (lf.slope - lg.slope);
    if (x > bps[i] && (i + 1 == bps.size() || x < bps[i + 1])) crossings.push_back(x);
  }
  bps.insert(bps.end(), crossings.begin(), crossings.end());

  return detail::assemble(std::move(bps), [&](const Rational& x) {
    Local lf = detail::local_at(f, x), lg = detail::local_at(g, x);
    if (lf.kind == Local::Kind::Top || lg.kind == Local::Kind::Top) return Local::top();
    if (lf.kind == Local::Kind::Bottom) return lg;
    if (lg.kind == Local::Kind::Bottom) return lf;
    return lf.at(x) >= lg.at(x) ? lf : lg;
  });
}

/// Diagrammatic composition: apply f first, then g.
inline EnergyFunction compose(const EnergyFunction& f, const EnergyFunction& g) {
  if (f.is_bottom() || g.is_bottom()) return EnergyFunction::bottom();
  using detail::Local;
  std::vector<Rational> bps;
  detail::collect_breakpoints(f, bps);
  std::vector<Rational> targets;
  detail::collect_breakpoints(g, targets);
  for (const Piece& p : f.pieces())
    for (const Rational& t : targets) {
      Rational x = (t - p.offset()) / p.slope;
      bps.push_back(x);
    }

  return detail::assemble(std::move(bps), [&](const Rational& x) {
    Local lf = detail::local_at(f, x);
    if (lf.kind != Local::Kind::Line) return lf;
    Local lg = detail::local_at(g, lf.at(x));
    if (lg.kind != Local::Kind::Line) return lg;
    return Local::line(lg.slope * lf.slope, lg.slope * lf.offset + lg.offset);
  });
}

/// Kleene star: x f* = x where f(x) <= x, Top where f(x) > x.
inline EnergyFunction star(const EnergyFunction& f) {
  auto threshold = detail::first_cut_above(f, 1, 0, /*strict=*/true);
  if (!threshold) return EnergyFunction::identity();
  return canonicalize({Piece{0, true, 0, 1}}, threshold);
}

/// f composed with itself n times; f^0 is the identity.
inline EnergyFunction power(const EnergyFunction& f, unsigned n) {
  EnergyFunction r = EnergyFunction::identity();
  for (unsigned i = 0; i < n; ++i) r = compose(r, f);
  return r;
}

inline std::string to_string(const Cut& c) {
  return "start=" + to_string(c.at) + ", included=" + (c.included ? "true" : "false");
}

/// `bottom`, or `piece(...)` entries and an optional `top(...)`, joined by ';'.
inline std::string to_string(const EnergyFunction& f) {
  if (f.is_bottom()) return "bottom";
  std::string out;
  for (const Piece& p : f.pieces()) {
    if (!out.empty()) out += ';';
    out += "piece(" + to_string(p.start_cut()) + ", value=" + to_string(p.value) +
           ", slope=" + to_string(p.slope) + ")";
  }
  if (f.top_start()) {
    if (!out.empty()) out += ';';
    out += "top(" + to_string(*f.top_start()) + ")";
  }
  return out;
}

inline std::ostream& operator<<(std::ostream& os, const EnergyFunction& f) { return os << to_string(f); }

} // namespace energy

#endif // ENERGY_EFUN_HPP
