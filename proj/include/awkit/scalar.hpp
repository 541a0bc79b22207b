#pragma once

#include <cmath>
#include <complex>
#include <type_traits>

namespace awkit {

using cplx = std::complex<double>;

/// Entry field of a matrix: real (beta = 1) or complex (beta = 2).
enum class Field { Real, Complex };

template <typename T>
inline constexpr bool is_complex_v = false;
template <>
inline constexpr bool is_complex_v<cplx> = true;

/// The two scalar types the library is instantiated for.
template <typename T>
concept ScalarType = std::is_same_v<T, double> || std::is_same_v<T, cplx>;

template <ScalarType T>
inline constexpr Field field_of = is_complex_v<T> ? Field::Complex : Field::Real;

constexpr int beta_of(Field f) { return f == Field::Complex ? 2 : 1; }

inline double conj_val(double x) { return x; }
inline cplx conj_val(const cplx& z) { return std::conj(z); }

inline double real_part(double x) { return x; }
inline double real_part(const cplx& z) { return z.real(); }

inline double imag_part(double) { return 0.0; }
inline double imag_part(const cplx& z) { return z.imag(); }

inline double abs_sq(double x) { return x * x; }
inline double abs_sq(const cplx& z) { return z.real() * z.real() + z.imag() * z.imag(); }

inline double abs_val(double x) { return std::abs(x); }
inline double abs_val(const cplx& z) { return std::abs(z); }

}  // namespace awkit
