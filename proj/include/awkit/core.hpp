#pragma once

#include <cstddef>
#include <limits>
#include <numeric>
#include <utility>
#include <vector>

#include "awkit/errors.hpp"
#include "awkit/hermitian.hpp"
#include "awkit/matrix.hpp"
#include "awkit/scalar.hpp"
#include "awkit/tolerances.hpp"

namespace awkit {

template <ScalarType T>
Matrix<T> conj_transpose(const Matrix<T>& a) {
  Matrix<T> r(a.cols(), a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) r(j, i) = conj_val(a(i, j));
  return r;
}

/// Gram matrix A† A of an n-by-k matrix A. Exactly hermitian by
/// construction: the upper triangle is computed and mirrored.
template <ScalarType T>
HermMatrix<T> gram(const Matrix<T>& a) {
  const std::size_t k = a.cols();
  Matrix<T> g(k, k);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = i; j < k; ++j) {
      T s{};
      for (std::size_t r = 0; r < a.rows(); ++r) s += conj_val(a(r, i)) * a(r, j);
      g(i, j) = s;
    }
  return HermMatrix<T>::from_upper(g);
}

/// LU factorization with partial pivoting.
///
/// The factorization itself never fails on singular input; it records the
/// smallest pivot magnitude instead. Only solve() and inverse() refuse to
/// run when an exactly zero pivot was hit. Tolerance-based singularity
/// decisions belong to the call sites, which compare min_pivot_abs()
/// against their own thresholds.
template <ScalarType T>
class Lu {
 public:
  explicit Lu(const Matrix<T>& m) : lu_(m), perm_(m.rows()) {
    if (m.rows() != m.cols())
      throw DimensionError("LU factorization needs a square matrix");
    const std::size_t d = m.rows();
    std::iota(perm_.begin(), perm_.end(), std::size_t{0});
    for (std::size_t col = 0; col < d; ++col) {
      std::size_t best = col;
      double best_abs = abs_val(lu_(col, col));
      for (std::size_t r = col + 1; r < d; ++r) {
        const double a = abs_val(lu_(r, col));
        if (a > best_abs) {
          best_abs = a;
          best = r;
        }
      }
      if (best != col) {
        for (std::size_t c = 0; c < d; ++c) std::swap(lu_(best, c), lu_(col, c));
        std::swap(perm_[best], perm_[col]);
        sign_ = -sign_;
      }
      min_pivot_ = std::min(min_pivot_, best_abs);
      max_pivot_ = std::max(max_pivot_, best_abs);
      if (best_abs == 0.0) {
        singular_ = true;
        continue;
      }
      const T piv = lu_(col, col);
      for (std::size_t r = col + 1; r < d; ++r) {
        const T f = lu_(r, col) / piv;
        lu_(r, col) = f;
        for (std::size_t c = col + 1; c < d; ++c) lu_(r, c) -= f * lu_(col, c);
      }
    }
  }

  std::size_t dim() const { return lu_.rows(); }
  bool is_singular() const { return singular_; }
  double min_pivot_abs() const { return min_pivot_; }
  double max_pivot_abs() const { return max_pivot_; }

  /// Ratio of the largest to the smallest pivot magnitude. A cheap
  /// order-of-magnitude conditioning estimate, not a norm-exact condition
  /// number. 1 for the empty matrix, infinity when singular.
  double condition_estimate() const {
    if (dim() == 0) return 1.0;
    if (singular_ || min_pivot_ == 0.0)
      return std::numeric_limits<double>::infinity();
    return max_pivot_ / min_pivot_;
  }

  /// Signed product of the pivots; 1 for the empty matrix, exact 0 when a
  /// zero pivot was encountered.
  T determinant() const {
    if (singular_) return T{0};
    T p{sign_};
    for (std::size_t i = 0; i < dim(); ++i) p *= lu_(i, i);
    return p;
  }

  std::vector<T> solve(const std::vector<T>& b) const {
    if (b.size() != dim())
      throw DimensionError("right-hand side length does not match matrix");
    if (singular_) throw SingularityError("matrix is exactly singular", 0.0);
    const std::size_t d = dim();
    std::vector<T> x(d);
    for (std::size_t i = 0; i < d; ++i) {
      T s = b[perm_[i]];
      for (std::size_t j = 0; j < i; ++j) s -= lu_(i, j) * x[j];
      x[i] = s;
    }
    for (std::size_t ii = d; ii-- > 0;) {
      T s = x[ii];
      for (std::size_t j = ii + 1; j < d; ++j) s -= lu_(ii, j) * x[j];
      x[ii] = s / lu_(ii, ii);
    }
    return x;
  }

  Matrix<T> solve(const Matrix<T>& b) const {
    if (b.rows() != dim())
      throw DimensionError("right-hand side height does not match matrix");
    Matrix<T> x(dim(), b.cols());
    std::vector<T> col(dim());
    for (std::size_t c = 0; c < b.cols(); ++c) {
      for (std::size_t r = 0; r < dim(); ++r) col[r] = b(r, c);
      const auto sol = solve(col);
      for (std::size_t r = 0; r < dim(); ++r) x(r, c) = sol[r];
    }
    return x;
  }

  Matrix<T> inverse() const { return solve(Matrix<T>::identity(dim())); }

 private:
  Matrix<T> lu_;
  std::vector<std::size_t> perm_;
  double sign_ = 1.0;
  double min_pivot_ = std::numeric_limits<double>::infinity();
  double max_pivot_ = 0.0;
  bool singular_ = false;
};

template <ScalarType T>
T determinant(const Matrix<T>& m) {
  return Lu<T>(m).determinant();
}

/// Top-left i-by-i submatrix. i = 0 gives the empty matrix, whose
/// determinant is 1 by convention.
template <ScalarType T>
Matrix<T> leading_principal(const Matrix<T>& m, std::size_t i) {
  if (i > m.rows() || i > m.cols())
    throw DimensionError("leading principal block exceeds matrix size");
  Matrix<T> r(i, i);
  for (std::size_t a = 0; a < i; ++a)
    for (std::size_t b = 0; b < i; ++b) r(a, b) = m(a, b);
  return r;
}

/// The (i+1)-by-(i+1) matrix built from the leading i-by-i block of a
/// square matrix, bordered by pieces of row l and column m. Row and column
/// labels l, m are 1-based and must point past the leading block, i.e.
/// l, m > i. The corner entry is m(l, m). With l = m = i + 1 the result is
/// just the leading (i+1)-block.
template <ScalarType T>
Matrix<T> bordered(const Matrix<T>& om, std::size_t i, std::size_t l, std::size_t m) {
  if (om.rows() != om.cols()) throw DimensionError("bordered block needs a square matrix");
  const std::size_t d = om.rows();
  if (i >= d) throw DomainError("leading block must leave room for the border");
  if (l <= i || m <= i || l > d || m > d)
    throw DomainError("border labels must lie past the leading block");
  Matrix<T> r(i + 1, i + 1);
  for (std::size_t a = 0; a < i; ++a)
    for (std::size_t b = 0; b < i; ++b) r(a, b) = om(a, b);
  for (std::size_t a = 0; a < i; ++a) r(a, i) = om(a, m - 1);
  for (std::size_t b = 0; b < i; ++b) r(i, b) = om(l - 1, b);
  r(i, i) = om(l - 1, m - 1);
  return r;
}

/// A hermitian matrix split at its first row and column: the real corner
/// entry in the top-left, the border column below it, and the trailing
/// body. This is the split the elimination recursion consumes.
template <ScalarType T>
struct BlockDecomposition {
  double corner = 0.0;
  std::vector<T> border;
  HermMatrix<T> body;
};

template <ScalarType T>
BlockDecomposition<T> block_decompose(const HermMatrix<T>& m) {
  const std::size_t d = m.dim();
  if (d == 0) throw DimensionError("cannot split an empty matrix");
  BlockDecomposition<T> r;
  r.corner = real_part(m.entry(0, 0));
  r.border.resize(d - 1);
  for (std::size_t a = 0; a + 1 < d; ++a) r.border[a] = m.entry(a + 1, 0);
  Matrix<T> body(d - 1, d - 1);
  for (std::size_t i = 0; i + 1 < d; ++i)
    for (std::size_t j = 0; j + 1 < d; ++j) body(i, j) = m.entry(i + 1, j + 1);
  r.body = HermMatrix<T>::from_full(body);
  return r;
}

/// Inverse of block_decompose; the round trip is bit-exact.
template <ScalarType T>
HermMatrix<T> reassemble(const BlockDecomposition<T>& b) {
  const std::size_t d = b.body.dim() + 1;
  if (b.border.size() + 1 != d)
    throw DimensionError("block pieces have inconsistent sizes");
  Matrix<T> full(d, d);
  full(0, 0) = T{b.corner};
  for (std::size_t a = 0; a + 1 < d; ++a) {
    full(a + 1, 0) = b.border[a];
    full(0, a + 1) = conj_val(b.border[a]);
  }
  for (std::size_t i = 0; i + 1 < d; ++i)
    for (std::size_t j = 0; j + 1 < d; ++j) full(i + 1, j + 1) = b.body.entry(i, j);
  return HermMatrix<T>::from_full(full);
}

/// Inverse of a hermitian matrix in the same split form: the body block of
/// the inverse, the border column, and the real corner scalar.
template <ScalarType T>
struct BlockInverse {
  Matrix<T> a_block;
  std::vector<T> b_vec;
  double c_scalar = 0.0;
};

/// Computes the inverse of a hermitian matrix split at its LAST row and
/// column (unlike block_decompose, which splits at the first): with
/// leading body M, border column p above the corner, and real corner s,
///
///   c = 1 / (s - p† M^{-1} p),  b = -c M^{-1} p,
///   A = M^{-1} + c (M^{-1} p)(M^{-1} p)†.
///
/// Throws when the corner Schur complement s - p† M^{-1} p vanishes
/// relative to the matrix scale.
template <ScalarType T>
BlockInverse<T> block_inverse(const HermMatrix<T>& m, const Tolerances& tols = {}) {
  const std::size_t d = m.dim();
  if (d < 2) throw DimensionError("block inverse needs dimension at least 2");
  const Matrix<T> body = leading_principal(m.matrix(), d - 1);
  std::vector<T> psi(d - 1);
  for (std::size_t a = 0; a + 1 < d; ++a) psi[a] = m.entry(a, d - 1);
  const double sigma = real_part(m.entry(d - 1, d - 1));
  const Lu<T> lu(body);
  if (lu.min_pivot_abs() < tols.pivot * scale_of(m))
    throw SingularityError("body block is singular in block inverse", lu.min_pivot_abs());
  const std::vector<T> y = lu.solve(psi);
  double dot = 0.0;
  for (std::size_t i = 0; i < y.size(); ++i)
    dot += real_part(conj_val(psi[i]) * y[i]);
  const double denom = sigma - dot;
  if (abs_val(denom) < tols.pivot * scale_of(m))
    throw SingularityError("corner Schur complement vanishes in block inverse", denom);
  BlockInverse<T> r;
  r.c_scalar = 1.0 / denom;
  r.b_vec.resize(y.size());
  for (std::size_t i = 0; i < y.size(); ++i) r.b_vec[i] = -T{r.c_scalar} * y[i];
  r.a_block = lu.inverse();
  for (std::size_t i = 0; i < y.size(); ++i)
    for (std::size_t j = 0; j < y.size(); ++j)
      r.a_block(i, j) += T{r.c_scalar} * y[i] * conj_val(y[j]);
  return r;
}

/// Assembles the split inverse back into a full matrix.
template <ScalarType T>
Matrix<T> assemble(const BlockInverse<T>& b) {
  const std::size_t d = b.a_block.rows() + 1;
  if (b.a_block.rows() != b.a_block.cols() || b.b_vec.size() + 1 != d)
    throw DimensionError("block pieces have inconsistent sizes");
  Matrix<T> full(d, d);
  for (std::size_t i = 0; i + 1 < d; ++i)
    for (std::size_t j = 0; j + 1 < d; ++j) full(i, j) = b.a_block(i, j);
  for (std::size_t i = 0; i + 1 < d; ++i) {
    full(i, d - 1) = b.b_vec[i];
    full(d - 1, i) = conj_val(b.b_vec[i]);
  }
  full(d - 1, d - 1) = T{b.c_scalar};
  return full;
}

}  // namespace awkit
