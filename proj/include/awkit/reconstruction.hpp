#pragma once

#include <cstddef>
#include <utility>
#include <vector>

#include "awkit/core.hpp"
#include "awkit/errors.hpp"
#include "awkit/hermitian.hpp"
#include "awkit/matrix.hpp"
#include "awkit/scalar.hpp"
#include "awkit/tolerances.hpp"

namespace awkit {

/// The first n rows of a k-by-k hermitian matrix with n < k. In that
/// regime these rows carry all the information: every entry outside them
/// is a function of them. The leading n-block must itself be hermitian.
template <ScalarType T>
class PartialWishart {
 public:
  explicit PartialWishart(Matrix<T> rows) : rows_(std::move(rows)) {
    if (rows_.rows() >= rows_.cols())
      throw RegimeError("known rows must number fewer than the matrix dimension");
    const auto top = leading_principal(rows_, rows_.rows());
    if (HermMatrix<T>::max_asymmetry(top) > kAsymmetryRejection * scale_of(rows_))
      throw InvalidMatrixError("leading block of the known rows is not hermitian");
    top_ = HermMatrix<T>::from_full(top);
  }

  static PartialWishart from_full(const HermMatrix<T>& omega, std::size_t n) {
    if (n >= omega.dim())
      throw RegimeError("known rows must number fewer than the matrix dimension");
    Matrix<T> rows(n, omega.dim());
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < omega.dim(); ++j) rows(i, j) = omega.entry(i, j);
    return PartialWishart(std::move(rows));
  }

  std::size_t n() const { return rows_.rows(); }
  std::size_t k() const { return rows_.cols(); }
  const Matrix<T>& rows() const { return rows_; }
  const HermMatrix<T>& top_block() const { return top_; }

  /// The n-by-(k-n) block to the right of the leading n-block.
  Matrix<T> cross_block() const {
    Matrix<T> c(n(), k() - n());
    for (std::size_t i = 0; i < n(); ++i)
      for (std::size_t j = 0; j < k() - n(); ++j) c(i, j) = rows_(i, n() + j);
    return c;
  }

 private:
  Matrix<T> rows_;
  HermMatrix<T> top_;
};

template <ScalarType T>
struct ReconstructionResult {
  HermMatrix<T> omega;
  /// Pivot-ratio conditioning estimate of the leading block that was
  /// inverted.
  double condition_estimate = 1.0;
  /// Set when the estimate crosses the conditioning warning threshold;
  /// the result is still returned but deserves suspicion.
  bool ill_conditioned = false;
};

/// Fills in the full k-by-k matrix from its first n rows. With the leading
/// block W, the cross block C sitting to its right, and column vectors
/// c_l of C, the unknown bottom-right block is
///
///   bottom(l, m) = c_l† W^{-1} c_m,
///
/// computed with one factorization of W reused across all entries. Throws
/// when W is singular relative to the pivot tolerance.
template <ScalarType T>
ReconstructionResult<T> reconstruct(const PartialWishart<T>& p,
                                    const Tolerances& tols = {}) {
  const std::size_t n = p.n();
  const std::size_t k = p.k();
  const Lu<T> lu(p.top_block().matrix());
  if (n > 0 && lu.min_pivot_abs() < tols.pivot * scale_of(p.rows()))
    throw SingularMinorError(lu.min_pivot_abs());
  const Matrix<T> c = p.cross_block();
  const Matrix<T> x = lu.solve(c);
  Matrix<T> full(k, k);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < k; ++j) full(i, j) = p.rows()(i, j);
  for (std::size_t l = 0; l < k - n; ++l)
    for (std::size_t m = l; m < k - n; ++m) {
      T s{};
      for (std::size_t a = 0; a < n; ++a) s += conj_val(c(a, l)) * x(a, m);
      full(n + l, n + m) = s;
    }
  ReconstructionResult<T> r;
  r.omega = HermMatrix<T>::from_upper(full);
  r.condition_estimate = lu.condition_estimate();
  r.ill_conditioned = r.condition_estimate >= kConditionWarning;
  return r;
}

/// Number of real scalar constraints the first n rows impose on the rest
/// of a k-by-k matrix of the form A†A: (k-n)^2 for complex entries,
/// (k-n)(k-n+1)/2 for real ones. Only the n < k regime has any.
inline std::size_t constraint_count(std::size_t n, std::size_t k, Field field) {
  if (n >= k) throw RegimeError("no redundant entries when rows reach the dimension");
  const std::size_t r = k - n;
  return field == Field::Complex ? r * r : r * (r + 1) / 2;
}

/// Residuals of the redundancy constraints on a full k-by-k hermitian
/// matrix whose first n rows are taken as the independent data.
template <ScalarType T>
struct ResidualReport {
  /// (k-n)-by-(k-n) hermitian matrix of entrywise violations. Entry
  /// (l, m) equals the ratio of the bordered determinant over row n+l+1
  /// and column n+m+1 to the leading n-block determinant, evaluated in
  /// its equivalent Schur form omega(n+l, n+m) - c_l† W^{-1} c_m.
  Matrix<T> residuals;
  double max_abs = 0.0;
  std::size_t constraint_count = 0;
};

/// Measures how far the bottom-right (k-n) block of omega sits from the
/// value its first n rows dictate. A matrix of the form A†A with A having
/// n rows satisfies these constraints exactly; max_abs near zero (relative
/// to the matrix scale) certifies consistency. Requires n < k: the n >= k
/// regime has no redundant block to audit.
template <ScalarType T>
ResidualReport<T> consistency_check(const HermMatrix<T>& omega, std::size_t n,
                                    const Tolerances& tols = {}) {
  const std::size_t k = omega.dim();
  if (n >= k) throw RegimeError("no redundant entries when rows reach the dimension");
  ResidualReport<T> rep;
  const std::size_t r = k - n;
  rep.residuals = Matrix<T>(r, r);
  rep.constraint_count = constraint_count(n, k, field_of<T>);
  const auto p = PartialWishart<T>::from_full(omega, n);
  const Lu<T> lu(p.top_block().matrix());
  if (n > 0 && lu.min_pivot_abs() < tols.pivot * scale_of(omega))
    throw SingularMinorError(lu.min_pivot_abs());
  const Matrix<T> c = p.cross_block();
  const Matrix<T> x = lu.solve(c);
  for (std::size_t l = 0; l < r; ++l)
    for (std::size_t m = l; m < r; ++m) {
      T s{};
      for (std::size_t a = 0; a < n; ++a) s += conj_val(c(a, l)) * x(a, m);
      const T res = omega.entry(n + l, n + m) - s;
      rep.residuals(l, m) = res;
      if (m > l) rep.residuals(m, l) = conj_val(res);
      rep.max_abs = std::max(rep.max_abs, abs_val(res));
    }
  return rep;
}

}  // namespace awkit
