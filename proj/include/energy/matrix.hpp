#ifndef ENERGY_MATRIX_HPP
#define ENERGY_MATRIX_HPP

// Matrices over energy functions acting on vectors of threshold tests.
// Products are diagrammatic: (M N)[i][j] = join_k M[i][k] ; N[k][j], so a
// path i -> k -> j applies M[i][k] first.

#include "energy/efun.hpp"
#include "energy/vsem.hpp"

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace energy {

class DimensionMismatch : public std::invalid_argument {
public:
  using std::invalid_argument::invalid_argument;
};

using TestVector = std::vector<ThresholdTest>;

class FunctionMatrix {
public:
  FunctionMatrix() = default;
  FunctionMatrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), entries_(rows * cols) {}
  /// Square n x n matrix of Bottom functions.
  explicit FunctionMatrix(std::size_t n) : FunctionMatrix(n, n) {}

  static FunctionMatrix zero(std::size_t n) { return FunctionMatrix(n); }
  static FunctionMatrix identity(std::size_t n) {
    FunctionMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = EnergyFunction::identity();
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }

  EnergyFunction& operator()(std::size_t i, std::size_t j) { return entries_[i * cols_ + j]; }
  const EnergyFunction& operator()(std::size_t i, std::size_t j) const { return entries_[i * cols_ + j]; }

  /// Copy of rows [r0, r0+nr) x cols [c0, c0+nc).
  FunctionMatrix block(std::size_t r0, std::size_t c0, std::size_t nr, std::size_t nc) const {
    FunctionMatrix b(nr, nc);
    for (std::size_t i = 0; i < nr; ++i)
      for (std::size_t j = 0; j < nc; ++j) b(i, j) = (*this)(r0 + i, c0 + j);
    return b;
  }

  void set_block(std::size_t r0, std::size_t c0, const FunctionMatrix& b) {
    for (std::size_t i = 0; i < b.rows(); ++i)
      for (std::size_t j = 0; j < b.cols(); ++j) (*this)(r0 + i, c0 + j) = b(i, j);
  }

  friend bool operator==(const FunctionMatrix&, const FunctionMatrix&) = default;

private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<EnergyFunction> entries_;
};

inline FunctionMatrix mat_identity(std::size_t n) { return FunctionMatrix::identity(n); }
inline FunctionMatrix mat_zero(std::size_t n) { return FunctionMatrix::zero(n); }

inline FunctionMatrix scalar(const EnergyFunction& f) {
  FunctionMatrix m(1);
  m(0, 0) = f;
  return m;
}

inline FunctionMatrix mat_join(const FunctionMatrix& m, const FunctionMatrix& n) {
  if (m.rows() != n.rows() || m.cols() != n.cols()) throw DimensionMismatch("mat_join: shapes differ");
  FunctionMatrix r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = join(m(i, j), n(i, j));
  return r;
}

inline FunctionMatrix mat_mul(const FunctionMatrix& m, const FunctionMatrix& n) {
  if (m.cols() != n.rows()) throw DimensionMismatch("mat_mul: inner dimensions differ");
  FunctionMatrix r(m.rows(), n.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < n.cols(); ++j) {
      EnergyFunction acc;
      for (std::size_t k = 0; k < m.cols(); ++k) acc = join(acc, compose(m(i, k), n(k, j)));
      r(i, j) = std::move(acc);
    }
  return r;
}

inline TestVector vec_join(const TestVector& v, const TestVector& w) {
  if (v.size() != w.size()) throw DimensionMismatch("vec_join: lengths differ");
  TestVector r(v.size());
  for (std::size_t i = 0; i < v.size(); ++i) r[i] = join(v[i], w[i]);
  return r;
}

/// (M v)[i] = join_j act(M[i][j], v[j]).
inline TestVector mat_act(const FunctionMatrix& m, const TestVector& v) {
  if (m.cols() != v.size()) throw DimensionMismatch("mat_act: vector length differs from column count");
  TestVector r(m.rows());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r[i] = join(r[i], act(m(i, j), v[j]));
  return r;
}

/// Joins the entries of v selected by a 0/1 row vector.
inline ThresholdTest row_act(const std::vector<bool>& alpha, const TestVector& v) {
  if (alpha.size() != v.size()) throw DimensionMismatch("row_act: lengths differ");
  ThresholdTest r;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (alpha[i]) r = join(r, v[i]);
  return r;
}

namespace detail {

inline void require_square(const FunctionMatrix& m, const char* what) {
  if (!m.square() || m.rows() == 0) throw DimensionMismatch(std::string(what) + ": matrix must be square and nonempty");
}

} // namespace detail

/// Star by block decomposition with a 1x1 upper-left block a:
///
///   M* = [ (a + b d* c)*          (a + b d* c)* b d* ]
///        [ (d + c a* b)* c a*     (d + c a* b)*      ]
inline FunctionMatrix mat_star_block(const FunctionMatrix& m) {
  detail::require_square(m, "mat_star_block");
  const std::size_t n = m.rows();
  if (n == 1) return scalar(star(m(0, 0)));

  FunctionMatrix a = m.block(0, 0, 1, 1);
  FunctionMatrix b = m.block(0, 1, 1, n - 1);
  FunctionMatrix c = m.block(1, 0, n - 1, 1);
  FunctionMatrix d = m.block(1, 1, n - 1, n - 1);

  FunctionMatrix d_star = mat_star_block(d);
  FunctionMatrix upper = scalar(star(join(a(0, 0), mat_mul(mat_mul(b, d_star), c)(0, 0))));
  FunctionMatrix a_star = scalar(star(a(0, 0)));
  FunctionMatrix lower = mat_star_block(mat_join(d, mat_mul(mat_mul(c, a_star), b)));

  FunctionMatrix r(n);
  r.set_block(0, 0, upper);
  r.set_block(0, 1, mat_mul(mat_mul(upper, b), d_star));
  r.set_block(1, 0, mat_mul(mat_mul(lower, c), a_star));
  r.set_block(1, 1, lower);
  return r;
}

/// Star by state elimination: for every pivot p,
/// A[i][j] <- A[i][j] + A[i][p] A[p][p]* A[p][j], then add the identity.
inline FunctionMatrix mat_star_elim(const FunctionMatrix& m) {
  detail::require_square(m, "mat_star_elim");
  const std::size_t n = m.rows();
  FunctionMatrix a = m;
  for (std::size_t p = 0; p < n; ++p) {
    EnergyFunction loop = star(a(p, p));
    FunctionMatrix next = a;
    for (std::size_t i = 0; i < n; ++i) {
      if (a(i, p).is_bottom()) continue;
      EnergyFunction into = compose(a(i, p), loop);
      for (std::size_t j = 0; j < n; ++j) next(i, j) = join(a(i, j), compose(into, a(p, j)));
    }
    a = std::move(next);
  }
  return mat_join(a, mat_identity(n));
}

/// Omega by block decomposition with a 1x1 upper-left block a:
///
///   M^w = [ (a + b d* c)^w + (a + b d* c)* b d^w ]
///         [ (d + c a* b)^w + (d + c a* b)* c a^w ]
inline TestVector mat_omega(const FunctionMatrix& m) {
  detail::require_square(m, "mat_omega");
  const std::size_t n = m.rows();
  if (n == 1) return {omega(m(0, 0))};

  FunctionMatrix a = m.block(0, 0, 1, 1);
  FunctionMatrix b = m.block(0, 1, 1, n - 1);
  FunctionMatrix c = m.block(1, 0, n - 1, 1);
  FunctionMatrix d = m.block(1, 1, n - 1, n - 1);

  EnergyFunction upper = join(a(0, 0), mat_mul(mat_mul(b, mat_star_block(d)), c)(0, 0));
  ThresholdTest head = join(omega(upper), act(star(upper), mat_act(b, mat_omega(d))[0]));

  FunctionMatrix lower = mat_join(d, mat_mul(mat_mul(c, scalar(star(a(0, 0)))), b));
  TestVector tail = vec_join(mat_omega(lower), mat_act(mat_star_block(lower), mat_act(c, {omega(a(0, 0))})));

  TestVector r;
  r.reserve(n);
  r.push_back(head);
  r.insert(r.end(), tail.begin(), tail.end());
  return r;
}

} // namespace energy

#endif // ENERGY_MATRIX_HPP
