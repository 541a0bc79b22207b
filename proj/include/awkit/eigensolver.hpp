#pragma once

#include <algorithm>
#include <cassert>
#include <cmath>
#include <cstddef>
#include <vector>

#include "awkit/errors.hpp"
#include "awkit/hermitian.hpp"
#include "awkit/matrix.hpp"
#include "awkit/scalar.hpp"

namespace awkit {

struct HermEigenResult {
  /// Eigenvalues in ascending order.
  std::vector<double> eigenvalues;
  /// Largest off-diagonal magnitude at the final sweep.
  double max_offdiag_residual = 0.0;
  std::size_t sweeps = 0;
};

namespace detail {

template <ScalarType T>
double max_offdiag(const Matrix<T>& a) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j)
      if (i != j) worst = std::max(worst, abs_val(a(i, j)));
  return worst;
}

}  // namespace detail

/// Eigenvalues of a hermitian matrix by cyclic Jacobi rotations.
///
/// Each rotation zeroes one off-diagonal pair (p, q): the entry's phase is
/// absorbed into the rotation, reducing the 2-by-2 block to the real
/// symmetric case, which the classic tangent formula diagonalizes.
/// Convergence is declared when the largest off-diagonal magnitude drops
/// below tol times the matrix scale; the cyclic sweep converges
/// quadratically, so the default sweep budget is generous.
template <ScalarType T>
HermEigenResult herm_eigenvalues(const HermMatrix<T>& m, double tol = 1e-12,
                                 std::size_t max_sweeps = 100) {
  const std::size_t d = m.dim();
  HermEigenResult out;
  if (d == 0) return out;
  Matrix<T> a = m.matrix();
  const double stop = tol * scale_of(m);
  out.max_offdiag_residual = detail::max_offdiag(a);
  while (out.max_offdiag_residual > stop) {
    if (out.sweeps == max_sweeps)
      throw ConvergenceError("eigensolver sweep budget exhausted",
                             out.max_offdiag_residual);
    for (std::size_t p = 0; p < d; ++p)
      for (std::size_t q = p + 1; q < d; ++q) {
        const double rho = abs_val(a(p, q));
        if (rho == 0.0) continue;
        const T phase = a(p, q) * T{1.0 / rho};
        const double alpha = real_part(a(p, p));
        const double beta = real_part(a(q, q));
        const double tau = (beta - alpha) / (2.0 * rho);
        const double t =
            (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        const T cphase = conj_val(phase);
        for (std::size_t j = 0; j < d; ++j) {
          const T ajp = a(j, p);
          const T ajq = a(j, q);
          a(j, p) = T{c} * ajp - T{s} * cphase * ajq;
          a(j, q) = T{s} * ajp + T{c} * cphase * ajq;
        }
        for (std::size_t j = 0; j < d; ++j) {
          const T apj = a(p, j);
          const T aqj = a(q, j);
          a(p, j) = T{c} * apj - T{s} * phase * aqj;
          a(q, j) = T{s} * apj + T{c} * phase * aqj;
        }
        a(p, p) = T{alpha - t * rho};
        a(q, q) = T{beta + t * rho};
        a(p, q) = T{};
        a(q, p) = T{};
      }
    ++out.sweeps;
    out.max_offdiag_residual = detail::max_offdiag(a);
  }
  out.eigenvalues.resize(d);
  for (std::size_t i = 0; i < d; ++i) out.eigenvalues[i] = real_part(a(i, i));
  std::sort(out.eigenvalues.begin(), out.eigenvalues.end());
#ifndef NDEBUG
  double sum = 0.0, sumsq = 0.0;
  for (const double l : out.eigenvalues) {
    sum += l;
    sumsq += l * l;
  }
  double frob = 0.0;
  for (const auto& v : m.matrix().entries()) frob += abs_sq(v);
  assert(std::abs(sum - m.trace()) <= 1e-9 * std::max(1.0, std::abs(m.trace())));
  assert(std::abs(sumsq - frob) <= 1e-9 * std::max(1.0, frob));
#endif
  return out;
}

/// Just the ascending eigenvalues.
template <ScalarType T>
std::vector<double> spectrum(const HermMatrix<T>& m) {
  return herm_eigenvalues(m).eigenvalues;
}

}  // namespace awkit
