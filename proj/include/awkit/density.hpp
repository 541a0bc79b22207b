#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <vector>

#include "awkit/core.hpp"
#include "awkit/errors.hpp"
#include "awkit/hermitian.hpp"
#include "awkit/reconstruction.hpp"
#include "awkit/reduction.hpp"
#include "awkit/scalar.hpp"
#include "awkit/tolerances.hpp"

namespace awkit {

enum class Regime { Wishart, AntiWishart };

/// Which branch of the theory applies: n >= k is the full-rank (Wishart)
/// case, n < k the rank-deficient (Anti-Wishart) one. The n = k boundary
/// belongs to the Wishart branch.
inline Regime regime(std::size_t n, std::size_t k) {
  if (n < 1 || k < 1) throw DomainError("dimensions must be positive");
  return n >= k ? Regime::Wishart : Regime::AntiWishart;
}

/// Unnormalized log density evaluation. Normalization constants are out of
/// scope throughout: two log_value results for the same (n, k, field) are
/// comparable, absolute values are not.
struct LogDensity {
  /// Negative infinity off the support.
  double log_value = -std::numeric_limits<double>::infinity();
  bool support_ok = false;
  /// Largest redundancy-constraint violation; populated only in the n < k
  /// regime, where the density carries constraint factors.
  std::optional<double> residual_max;
};

/// Exponent of the determinant factor in the entrywise density of A†A for
/// an n-by-k matrix A with independent Gaussian entries (weight
/// exp(-tr A†A)): n - k for complex entries, (n - k - 1)/2 for real ones.
/// When n < k the factor applies to the leading n-block determinant.
inline double element_exponent(std::size_t n, std::size_t k, Field field) {
  const double diff = static_cast<double>(n) - static_cast<double>(k);
  return field == Field::Complex ? diff : (diff - 1.0) / 2.0;
}

/// Exponent of the one-body log term in the joint density of the
/// min(n, k) nonzero eigenvalues: |n - k| for complex entries,
/// (|n - k| - 1)/2 for real ones.
inline double eigen_exponent(std::size_t n, std::size_t k, Field field) {
  const double gap = std::abs(static_cast<double>(n) - static_cast<double>(k));
  return field == Field::Complex ? gap : (gap - 1.0) / 2.0;
}

/// Entrywise log density of a k-by-k hermitian matrix under the A†A
/// ensemble with n rows.
///
/// For n >= k the matrix must be positive definite and
///
///   log P = a log det(omega) - tr(omega),  a = element_exponent.
///
/// For n < k the weight involves only the leading n-block,
///
///   log P = a log det(leading n-block) - tr(omega),
///
/// while the remaining entries are pinned by exact redundancy constraints.
/// Those have no finite pointwise density; they are reported through
/// support_ok and residual_max instead of being folded into log_value. A
/// matrix violating them beyond the constraint tolerance is off the
/// support. Support failures are encoded in the result, never thrown.
template <ScalarType T>
LogDensity log_density_elements(const HermMatrix<T>& omega, std::size_t n,
                                const Tolerances& tols = {}) {
  if (n < 1) throw DomainError("row count must be positive");
  const std::size_t k = omega.dim();
  const double a = element_exponent(n, k, field_of<T>);
  LogDensity out;
  if (n >= k) {
    const auto logdet = positive_definite_log_det(omega, tols);
    if (!logdet) return out;
    out.support_ok = true;
    out.log_value = (a != 0.0 ? a * *logdet : 0.0) - omega.trace();
    return out;
  }
  const auto top = HermMatrix<T>::from_full(leading_principal(omega.matrix(), n));
  const auto logdet = positive_definite_log_det(top, tols);
  if (!logdet) return out;
  ResidualReport<T> rep;
  try {
    rep = consistency_check(omega, n, tols);
  } catch (const SingularityError&) {
    return out;
  }
  out.residual_max = rep.max_abs;
  if (rep.max_abs > tols.constraint * scale_of(omega)) return out;
  out.support_ok = true;
  out.log_value = a * *logdet - omega.trace();
  return out;
}

/// The nonzero part of a spectrum drawn from the A†A ensemble, together
/// with the parameters its joint density depends on: min(n, k) values,
/// each nonnegative; beta is 1 for real entries and 2 for complex ones.
/// The |n - k| structural zero modes of the n < k regime are not part of
/// the sample.
struct EigenSample {
  std::vector<double> values;
  int beta = 2;
  std::size_t n = 0;
  std::size_t k = 0;
};

/// Joint log density (unnormalized) of the nonzero eigenvalues:
///
///   sum_i [ a log(l_i) - l_i ] + beta * sum_{i<j} log |l_i - l_j|,
///
/// with a = eigen_exponent. Throws on a negative value or a wrong count;
/// coincident values (vanishing repulsion factor), or a zero value when
/// a > 0, return the negative-infinity sentinel rather than an error so
/// sampling pipelines can score degenerate draws. Values are sorted
/// internally, making the result bit-identical under input permutation.
inline double log_density_eigen(const EigenSample& s) {
  const std::size_t expect = std::min(s.n, s.k);
  if (s.values.size() != expect)
    throw DimensionError("eigenvalue count must equal min(n, k)");
  if (s.beta != 1 && s.beta != 2)
    throw DomainError("beta must be 1 (real) or 2 (complex)");
  for (const double l : s.values)
    if (l < 0.0) throw DomainError("eigenvalues must be nonnegative");
  const double a = eigen_exponent(s.n, s.k, s.beta == 2 ? Field::Complex : Field::Real);
  std::vector<double> v = s.values;
  std::sort(v.begin(), v.end());
  for (std::size_t i = 0; i + 1 < v.size(); ++i)
    if (v[i] == v[i + 1]) return -std::numeric_limits<double>::infinity();
  double sum = 0.0;
  for (const double l : v) {
    if (a != 0.0) sum += a * std::log(l);
    sum -= l;
  }
  for (std::size_t i = 0; i < v.size(); ++i)
    for (std::size_t j = i + 1; j < v.size(); ++j)
      sum += s.beta * std::log(v[j] - v[i]);
  return sum;
}

}  // namespace awkit
