#ifndef ENERGY_TESTS_SUPPORT_HPP
#define ENERGY_TESTS_SUPPORT_HPP

// Shared fixtures for the test suites: the five-edge example automaton,
// random generators, and sampling grids.

#include "energy/energy.hpp"

#include <algorithm>
#include <fstream>
#include <random>
#include <string>
#include <vector>

namespace energy::testing {

inline Rational q(long p, long d = 1) {
  Rational r(p, d);
  r.canonicalize();
  return r;
}

inline Rational R(const char* s) { return parse_rational(s); }

inline EnergyValue V(long p, long d = 1) { return EnergyValue(q(p, d)); }

// Labels of the example automaton, named by edge.
inline EnergyFunction plus2_from2() { return EnergyFunction::affine(2, true, 4, 1); }   // x+2, x >= 2
inline EnergyFunction plus3_above1() { return EnergyFunction::affine(1, false, 4, 1); } // x+3, x > 1
inline EnergyFunction double_minus2() { return EnergyFunction::affine(1, true, 0, 2); } // 2x-2, x >= 1
inline EnergyFunction minus1_above1() { return EnergyFunction::affine(1, false, 0, 1); } // x-1, x > 1
inline EnergyFunction plus1() { return EnergyFunction::affine(0, true, 1, 1); }         // x+1, x >= 0

inline std::vector<EnergyFunction> five_edge_labels() {
  return {plus2_from2(), plus3_above1(), double_minus2(), minus1_above1(), plus1()};
}

inline std::string read_file(const std::string& path) {
  std::ifstream in(path);
  return std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>());
}

inline EnergyAutomaton five_edge() {
  std::ifstream in(std::string(ENERGY_SAMPLES_DIR) + "/five_edge.json");
  return load(in);
}

inline EnergyAutomaton sample(const std::string& name) {
  std::ifstream in(std::string(ENERGY_SAMPLES_DIR) + "/" + name);
  return load(in);
}

class Generator {
public:
  explicit Generator(unsigned seed) : rng_(seed) {}

  int uniform(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(rng_); }
  bool chance(int percent) { return uniform(1, 100) <= percent; }

  /// Small nonnegative rational with denominator 1, 2 or 3.
  Rational small(int max_num) {
    int den = uniform(1, 3);
    return q(uniform(0, max_num * den), den);
  }

  Rational slope() {
    static const long table[][2] = {{1, 1}, {1, 1}, {3, 2}, {2, 1}, {3, 1}, {4, 3}};
    auto& s = table[uniform(0, 5)];
    return q(s[0], s[1]);
  }

  /// Random valid function with up to `max_pieces` pieces.
  EnergyFunction function(int max_pieces = 3) {
    if (chance(5)) return EnergyFunction::bottom();
    std::vector<Piece> pieces;
    int count = uniform(chance(10) ? 0 : 1, max_pieces);
    Rational start = small(3);
    bool included = chance(50);
    Rational value = chance(30) ? Rational(0) : small(3);
    for (int i = 0; i < count; ++i) {
      Piece p{start, included, value, slope()};
      pieces.push_back(p);
      Rational step = small(2);
      bool next_included = chance(50);
      if (step == 0) {
        if (!p.start_included || !next_included) step = q(1, 2);
        else next_included = false;
      }
      start = p.start + step;
      included = next_included;
      value = p.at(start) + (chance(50) ? Rational(0) : small(2));
    }
    std::optional<Cut> top;
    if (pieces.empty() || chance(25)) top = Cut{start + small(2), chance(50)};
    return EnergyFunction::validate(std::move(pieces), top);
  }

  FunctionMatrix matrix(std::size_t n, int max_pieces = 3, int bottom_percent = 40) {
    FunctionMatrix m(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        m(i, j) = chance(bottom_percent) ? EnergyFunction::bottom() : function(max_pieces);
    return m;
  }

  ThresholdTest test() {
    if (chance(15)) return ThresholdTest::never();
    return ThresholdTest::at(small(6), chance(50));
  }

  /// Random automaton with up to `max_states` states and 2-piece labels.
  EnergyAutomaton automaton(int max_states = 3) {
    std::size_t n = static_cast<std::size_t>(uniform(1, max_states));
    std::vector<std::string> names;
    for (std::size_t i = 0; i < n; ++i) names.push_back("q" + std::to_string(i));
    std::vector<std::size_t> initial, accepting;
    for (std::size_t i = 0; i < n; ++i) {
      if (chance(40)) initial.push_back(i);
      if (chance(40)) accepting.push_back(i);
    }
    if (initial.empty()) initial.push_back(static_cast<std::size_t>(uniform(0, static_cast<int>(n) - 1)));
    std::vector<Transition> ts;
    int edges = uniform(0, static_cast<int>(2 * n + 1));
    for (int e = 0; e < edges; ++e) {
      EnergyFunction f = function(2);
      if (f.is_bottom()) continue;
      ts.push_back(Transition{static_cast<std::size_t>(uniform(0, static_cast<int>(n) - 1)),
                              static_cast<std::size_t>(uniform(0, static_cast<int>(n) - 1)), f});
    }
    return EnergyAutomaton(names, initial, accepting, ts);
  }

  std::mt19937& engine() { return rng_; }

private:
  std::mt19937 rng_;
};

/// Breakpoints of the given functions, midpoints between neighbours,
/// breakpoints +/- 1, zero, and a point beyond everything.
inline std::vector<Rational> sample_grid(std::initializer_list<const EnergyFunction*> fs) {
  std::vector<Rational> bps{0};
  for (const EnergyFunction* f : fs) {
    for (const Piece& p : f->pieces()) bps.push_back(p.start);
    if (f->top_start()) bps.push_back(f->top_start()->at);
  }
  std::sort(bps.begin(), bps.end());
  bps.erase(std::unique(bps.begin(), bps.end()), bps.end());
  std::vector<Rational> grid = bps;
  for (std::size_t i = 0; i < bps.size(); ++i) {
    grid.push_back(bps[i] + 1);
    if (bps[i] >= 1) grid.push_back(bps[i] - 1);
    if (i + 1 < bps.size()) grid.push_back((bps[i] + bps[i + 1]) / 2);
  }
  grid.push_back(bps.back() + 7);
  std::sort(grid.begin(), grid.end());
  grid.erase(std::unique(grid.begin(), grid.end()), grid.end());
  return grid;
}

/// Grid padded with random points up to at least `count` entries.
inline std::vector<Rational> sample_points(Generator& gen, std::initializer_list<const EnergyFunction*> fs,
                                           std::size_t count = 50) {
  auto grid = sample_grid(fs);
  while (grid.size() < count) grid.push_back(gen.small(8));
  return grid;
}

/// Survival of x under f f f ... by iterating evaluation. When f(x) < x the
/// orbit must die within ceil((x - l_f) / (x - f(x))) + 1 steps; reports
/// false if it outlives that bound.
inline bool orbit_survives(const EnergyFunction& f, const Rational& x, bool* bound_respected = nullptr) {
  if (bound_respected) *bound_respected = true;
  EnergyValue fx = f(EnergyValue(x));
  if (fx.is_bottom()) return false;
  if (fx.is_top()) return true;
  if (fx.value() >= x) {
    // Nondecreasing orbit: check a handful of steps stay defined.
    EnergyValue y = fx;
    for (int i = 0; i < 12 && y.is_finite(); ++i) {
      EnergyValue z = f(y);
      if (z.is_bottom() || z < y) {
        if (bound_respected) *bound_respected = false;
        return false;
      }
      y = z;
    }
    return true;
  }
  Rational lower = f.domain_start()->at;
  Rational gap = x - fx.value();
  Rational ratio = (x - lower) / gap;
  mpz_class steps = ratio.get_num() / ratio.get_den();
  if (steps * ratio.get_den() != ratio.get_num()) steps += 1;
  steps += 1;
  EnergyValue y(x);
  for (mpz_class n = 0; n <= steps; ++n) {
    y = f(y);
    if (y.is_bottom()) return false;
  }
  if (bound_respected) *bound_respected = false;
  return true;
}

/// Survival of x under stem cycle cycle ... by simulation: after the stem,
/// a full cycle that does not lose energy can be repeated forever, and one
/// that loses energy loses at least that much each round.
inline bool simulate_product(const std::vector<EnergyFunction>& stem, const std::vector<EnergyFunction>& cycle,
                             const Rational& x0) {
  EnergyValue y(x0);
  for (const auto& f : stem) {
    y = f(y);
    if (y.is_bottom()) return false;
  }
  for (int round = 0; round < 100000; ++round) {
    EnergyValue entry = y;
    for (const auto& f : cycle) {
      y = f(y);
      if (y.is_bottom()) return false;
    }
    if (y >= entry) return true;
  }
  throw std::runtime_error("simulate_product: no decision after 100000 rounds");
}

} // namespace energy::testing

#endif // ENERGY_TESTS_SUPPORT_HPP
