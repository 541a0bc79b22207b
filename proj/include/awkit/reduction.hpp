#pragma once

#include <cmath>
#include <cstddef>
#include <optional>
#include <utility>
#include <vector>

#include "awkit/core.hpp"
#include "awkit/errors.hpp"
#include "awkit/hermitian.hpp"
#include "awkit/matrix.hpp"
#include "awkit/scalar.hpp"
#include "awkit/tolerances.hpp"

namespace awkit {

/// One elimination step: removes the first row and column of a hermitian
/// matrix, folding them into the rest.
///
///   next(a, b) = m(a+1, b+1) - m(a+1, 0) m(0, b+1) / m(0, 0)
///
/// The pivot is the top-left entry. The result is symmetrized by averaging
/// with its conjugate transpose; for exactly hermitian input this is a
/// bitwise no-op. step_index only labels the error on pivot failure.
template <ScalarType T>
HermMatrix<T> reduce_step(const HermMatrix<T>& m, const Tolerances& tols = {},
                          std::size_t step_index = 0) {
  const std::size_t d = m.dim();
  if (d == 0) throw DomainError("cannot reduce an empty matrix");
  const double piv = real_part(m.entry(0, 0));
  if (abs_val(piv) < tols.pivot * scale_of(m)) throw PivotError(step_index, piv);
  const T inv{1.0 / piv};
  Matrix<T> r(d - 1, d - 1);
  for (std::size_t a = 0; a + 1 < d; ++a)
    for (std::size_t b = 0; b + 1 < d; ++b)
      r(a, b) = m.entry(a + 1, b + 1) - m.entry(a + 1, 0) * m.entry(0, b + 1) * inv;
  return HermMatrix<T>::symmetrized(r);
}

/// Full record of a run of elimination steps. steps[0] is the input;
/// steps[s+1] is the matrix after step s. pivots[s] is the top-left entry
/// consumed by step s. terminated_at is set when the run stopped early
/// because the remaining matrix had vanished (relative to the scale of the
/// input), and names the number of steps that were executed.
template <ScalarType T>
struct ReductionTrace {
  std::vector<HermMatrix<T>> steps;
  std::vector<double> pivots;
  std::optional<std::size_t> terminated_at;
};

/// Runs up to max_steps elimination steps. max_steps may not exceed the
/// matrix dimension. At each step the remaining matrix is first checked
/// for vanishing; only a non-vanished matrix has its pivot examined, so a
/// rank-deficient tail terminates the trace instead of raising a pivot
/// error.
template <ScalarType T>
ReductionTrace<T> reduce_trace(const HermMatrix<T>& m, std::size_t max_steps,
                               const Tolerances& tols = {}) {
  if (max_steps > m.dim())
    throw DomainError("cannot run more elimination steps than the matrix dimension");
  ReductionTrace<T> tr;
  tr.steps.push_back(m);
  const double scale0 = scale_of(m);
  for (std::size_t s = 0; s < max_steps; ++s) {
    const HermMatrix<T>& cur = tr.steps.back();
    if (maxabs(cur) < tols.vanish * scale0) {
      tr.terminated_at = s;
      break;
    }
    const double piv = real_part(cur.entry(0, 0));
    if (abs_val(piv) < tols.pivot * scale0) throw PivotError(s, piv);
    tr.pivots.push_back(piv);
    tr.steps.push_back(reduce_step(cur, tols, s));
  }
  return tr;
}

/// Result of rank probing by exhaustive elimination.
struct RankReport {
  /// Number of steps executed before the remainder vanished; equals the
  /// matrix dimension when nothing vanished (full rank).
  std::size_t detected_n = 0;
  /// Largest entry magnitude of the block at which elimination stopped;
  /// 0 when the matrix was reduced away completely.
  double vanishing_norm = 0.0;
  std::vector<double> pivot_history;
};

/// Eliminates until the remaining matrix vanishes or nothing is left. For
/// a Gram matrix A†A of an n-by-k matrix A with n < k this detects n: the
/// remainder vanishes after exactly n steps.
template <ScalarType T>
RankReport detect_rank(const HermMatrix<T>& m, const Tolerances& tols = {}) {
  const auto tr = reduce_trace(m, m.dim(), tols);
  RankReport r;
  r.detected_n = tr.terminated_at.value_or(m.dim());
  r.vanishing_norm = maxabs(tr.steps.back());
  r.pivot_history = tr.pivots;
  return r;
}

/// Log-determinant through the pivot recursion, defined only on the
/// positive definite cone: every elimination pivot must stay positive and
/// clear of the pivot tolerance. Returns nothing otherwise. The empty
/// matrix has determinant 1, hence log 0.
template <ScalarType T>
std::optional<double> positive_definite_log_det(const HermMatrix<T>& m,
                                                const Tolerances& tols = {}) {
  const double scale0 = scale_of(m);
  Matrix<T> cur = m.matrix();
  double sum = 0.0;
  for (std::size_t d = cur.rows(); d > 0; --d) {
    const double piv = real_part(cur(0, 0));
    if (piv <= tols.pivot * scale0) return std::nullopt;
    sum += std::log(piv);
    const T inv{1.0 / piv};
    Matrix<T> next(d - 1, d - 1);
    for (std::size_t a = 0; a + 1 < d; ++a)
      for (std::size_t b = 0; b + 1 < d; ++b)
        next(a, b) = cur(a + 1, b + 1) - cur(a + 1, 0) * cur(0, b + 1) * inv;
    cur = std::move(next);
  }
  return sum;
}

namespace detail {

/// Determinant of the leading i-block, guarded: refuses (by throwing) when
/// the LU of that block ran into a pivot below the tolerance, which would
/// make any ratio against this determinant meaningless.
template <ScalarType T>
T guarded_minor_det(const HermMatrix<T>& m, std::size_t i, const Tolerances& tols) {
  const Lu<T> lu(leading_principal(m.matrix(), i));
  if (i > 0 && lu.min_pivot_abs() < tols.pivot * scale_of(m))
    throw SingularMinorError(lu.min_pivot_abs());
  return lu.determinant();
}

}  // namespace detail

/// Entry (l, m), labels 1-based, of the matrix obtained after i
/// elimination steps, computed directly from the original matrix as a
/// ratio of two determinants:
///
///   det bordered(m, i, l + i, m + i) / det leading(m, i)
///
/// Agrees with running reduce_step i times, but costs two determinants
/// instead of a recursion.
template <ScalarType T>
T reduced_entry_via_ratio(const HermMatrix<T>& om, std::size_t i, std::size_t l,
                          std::size_t m, const Tolerances& tols = {}) {
  const std::size_t d = om.dim();
  if (i >= d) throw DomainError("no entries remain after that many steps");
  if (l < 1 || m < 1 || l > d - i || m > d - i)
    throw DomainError("entry labels outside the reduced matrix");
  const T denom = detail::guarded_minor_det(om, i, tols);
  const T num = determinant(bordered(om.matrix(), i, l + i, m + i));
  return num / denom;
}

/// Whole matrix after i elimination steps via determinant ratios.
template <ScalarType T>
HermMatrix<T> reduced_via_ratio(const HermMatrix<T>& om, std::size_t i,
                                const Tolerances& tols = {}) {
  const std::size_t d = om.dim();
  if (i > d) throw DomainError("cannot run more steps than the matrix dimension");
  const std::size_t r = d - i;
  if (r == 0) return HermMatrix<T>::zero(0);
  const T denom = detail::guarded_minor_det(om, i, tols);
  Matrix<T> upper(r, r);
  for (std::size_t l = 1; l <= r; ++l)
    for (std::size_t m = l; m <= r; ++m)
      upper(l - 1, m - 1) =
          determinant(bordered(om.matrix(), i, l + i, m + i)) / denom;
  return HermMatrix<T>::from_upper(upper);
}

/// Pivot consumed by elimination step i (0-based), as a ratio of
/// consecutive leading-block determinants:
///
///   det leading(m, i + 1) / det leading(m, i)
template <ScalarType T>
double pivot_via_ratio(const HermMatrix<T>& om, std::size_t i,
                       const Tolerances& tols = {}) {
  if (i >= om.dim()) throw DomainError("step index outside the matrix");
  const T denom = detail::guarded_minor_det(om, i, tols);
  const T num = determinant(leading_principal(om.matrix(), i + 1));
  return real_part(num / denom);
}

}  // namespace awkit
