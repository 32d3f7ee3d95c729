#ifndef ENERGY_RATIONAL_HPP
#define ENERGY_RATIONAL_HPP

#include <gmpxx.h>

#include <cctype>
#include <stdexcept>
#include <string>
#include <string_view>

namespace energy {

/// Exact rational in lowest terms (GMP keeps the denominator positive).
using Rational = mpq_class;

class ParseError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Parses "p" or "p/q" with an optional leading minus sign.
inline Rational parse_rational(std::string_view text) {
  auto digits = [](std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
      if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
  };
  std::string_view body = text;
  if (!body.empty() && body.front() == '-') body.remove_prefix(1);
  auto slash = body.find('/');
  std::string_view num = body.substr(0, slash);
  std::string_view den = slash == std::string_view::npos ? std::string_view{} : body.substr(slash + 1);
  if (!digits(num) || (slash != std::string_view::npos && !digits(den)))
    throw ParseError("malformed rational '" + std::string(text) + "'");
  Rational r;
  r.set_str(std::string(text), 10);
  if (r.get_den() == 0) throw ParseError("zero denominator in '" + std::string(text) + "'");
  r.canonicalize();
  return r;
}

/// Renders as "p" when the denominator is 1, else "p/q".
inline std::string to_string(const Rational& r) { return r.get_str(); }

inline Rational midpoint(const Rational& a, const Rational& b) {
  Rational m = (a + b) / 2;
  return m;
}

} // namespace energy

#endif // ENERGY_RATIONAL_HPP
