#pragma once

#include <cstddef>
#include <vector>

#include "awkit/errors.hpp"
#include "awkit/matrix.hpp"
#include "awkit/scalar.hpp"
#include "awkit/tolerances.hpp"

namespace awkit {

/// Hermitian (real symmetric) matrix wrapper.
///
/// Stores a full dense square matrix but guarantees the hermitian property
/// by construction: every factory either validates it or enforces it.
template <ScalarType T>
class HermMatrix {
 public:
  HermMatrix() = default;

  static HermMatrix zero(std::size_t d) { return HermMatrix(Matrix<T>(d, d)); }

  static HermMatrix identity(std::size_t d) {
    return HermMatrix(Matrix<T>::identity(d));
  }

  static HermMatrix diagonal(const std::vector<double>& diag) {
    Matrix<T> m(diag.size(), diag.size());
    for (std::size_t i = 0; i < diag.size(); ++i) m(i, i) = T{diag[i]};
    return HermMatrix(std::move(m));
  }

  /// Accepts a square matrix that is hermitian up to round-off and
  /// symmetrizes it. Rejects matrices whose asymmetry exceeds the
  /// rejection threshold relative to the matrix scale.
  static HermMatrix from_full(const Matrix<T>& m) {
    if (m.rows() != m.cols())
      throw InvalidMatrixError("hermitian matrix must be square");
    const double asym = max_asymmetry(m);
    if (asym > kAsymmetryRejection * scale_of(m))
      throw InvalidMatrixError("matrix is not hermitian within tolerance");
    return symmetrized(m);
  }

  /// Builds from the upper triangle (diagonal included); the strict lower
  /// triangle of the input is ignored. Diagonal imaginary parts are dropped.
  static HermMatrix from_upper(const Matrix<T>& m) {
    if (m.rows() != m.cols())
      throw InvalidMatrixError("hermitian matrix must be square");
    Matrix<T> r(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i) {
      r(i, i) = T{real_part(m(i, i))};
      for (std::size_t j = i + 1; j < m.cols(); ++j) {
        r(i, j) = m(i, j);
        r(j, i) = conj_val(m(i, j));
      }
    }
    return HermMatrix(std::move(r));
  }

  /// Averages m with its conjugate transpose. No validation.
  static HermMatrix symmetrized(const Matrix<T>& m) {
    if (m.rows() != m.cols())
      throw InvalidMatrixError("hermitian matrix must be square");
    Matrix<T> r(m.rows(), m.cols());
    for (std::size_t i = 0; i < m.rows(); ++i) {
      r(i, i) = T{real_part(m(i, i))};
      for (std::size_t j = i + 1; j < m.cols(); ++j) {
        const T avg = (m(i, j) + conj_val(m(j, i))) * T{0.5};
        r(i, j) = avg;
        r(j, i) = conj_val(avg);
      }
    }
    return HermMatrix(std::move(r));
  }

  /// Largest | m(i,j) - conj(m(j,i)) | over all pairs.
  static double max_asymmetry(const Matrix<T>& m) {
    double worst = 0.0;
    for (std::size_t i = 0; i < m.rows(); ++i)
      for (std::size_t j = i; j < m.cols(); ++j)
        worst = std::max(worst, abs_val(m(i, j) - conj_val(m(j, i))));
    return worst;
  }

  std::size_t dim() const { return mat_.rows(); }
  const T& entry(std::size_t i, std::size_t j) const { return mat_(i, j); }
  const Matrix<T>& matrix() const { return mat_; }

  double trace() const {
    double t = 0.0;
    for (std::size_t i = 0; i < dim(); ++i) t += real_part(mat_(i, i));
    return t;
  }

  std::vector<double> diag() const {
    std::vector<double> d(dim());
    for (std::size_t i = 0; i < dim(); ++i) d[i] = real_part(mat_(i, i));
    return d;
  }

  bool operator==(const HermMatrix&) const = default;

 private:
  explicit HermMatrix(Matrix<T> m) : mat_(std::move(m)) {}

  Matrix<T> mat_;
};

template <ScalarType T>
double maxabs(const HermMatrix<T>& m) {
  return maxabs(m.matrix());
}

template <ScalarType T>
double scale_of(const HermMatrix<T>& m) {
  return scale_of(m.matrix());
}

}  // namespace awkit
