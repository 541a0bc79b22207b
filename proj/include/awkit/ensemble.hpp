#pragma once

#include <cmath>
#include <cstddef>
#include <cstdint>
#include <numbers>
#include <optional>
#include <utility>

#include "awkit/core.hpp"
#include "awkit/errors.hpp"
#include "awkit/hermitian.hpp"
#include "awkit/matrix.hpp"
#include "awkit/scalar.hpp"

namespace awkit {

/// SplitMix64 output scrambler.
inline std::uint64_t mix64(std::uint64_t z) {
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ull;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebull;
  return z ^ (z >> 31);
}

/// Counter-based generator: 64 bits of state advanced by the golden-ratio
/// increment, scrambled on output. Fast, seedable, reproducible.
class SplitMix64 {
 public:
  explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

  std::uint64_t next() {
    state_ += 0x9e3779b97f4a7c15ull;
    return mix64(state_);
  }

 private:
  std::uint64_t state_;
};

/// Derives an independent stream seed for one trial of a run. Trials keyed
/// this way can be generated in any order or in parallel and still produce
/// identical values for a given (seed, trial) pair.
inline std::uint64_t stream_key(std::uint64_t seed, std::uint64_t trial) {
  return mix64(mix64(seed + 0x9e3779b97f4a7c15ull) ^
               (0xda942042e4dd58b5ull * (trial + 1)));
}

/// Standard normal deviates by the polar (rejection) method.
///
/// next_pair() always consumes a fresh accepted point of the unit disk
/// (two generator words per attempt). next() hands out the members of such
/// a pair one at a time, caching the second. A stream used through only
/// one of the two entry points is therefore bit-reproducible.
class NormalStream {
 public:
  explicit NormalStream(std::uint64_t key) : rng_(key) {}

  std::pair<double, double> next_pair() {
    for (;;) {
      const double u = 2.0 * to_unit(rng_.next()) - 1.0;
      const double v = 2.0 * to_unit(rng_.next()) - 1.0;
      const double s = u * u + v * v;
      if (s > 0.0 && s < 1.0) {
        const double f = std::sqrt(-2.0 * std::log(s) / s);
        return {u * f, v * f};
      }
    }
  }

  double next() {
    if (cache_) {
      const double z = *cache_;
      cache_.reset();
      return z;
    }
    const auto [z1, z2] = next_pair();
    cache_ = z2;
    return z1;
  }

 private:
  static double to_unit(std::uint64_t x) { return (x >> 11) * 0x1.0p-53; }

  SplitMix64 rng_;
  std::optional<double> cache_;
};

/// One matrix entry under the Gaussian weight exp(-tr A†A): complex
/// entries take a full normal pair scaled to unit mean square modulus,
/// real entries a single normal with variance one half.
template <ScalarType T>
T sample_entry(NormalStream& g) {
  constexpr double inv_sqrt2 = 1.0 / std::numbers::sqrt2;
  if constexpr (is_complex_v<T>) {
    const auto [a, b] = g.next_pair();
    return T{a * inv_sqrt2, b * inv_sqrt2};
  } else {
    return g.next() * inv_sqrt2;
  }
}

/// n-by-k Gaussian matrix for a given stream key, filled row by row.
template <ScalarType T>
Matrix<T> sample_gaussian(std::size_t n, std::size_t k, std::uint64_t key) {
  NormalStream g(key);
  Matrix<T> a(n, k);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < k; ++j) a(i, j) = sample_entry<T>(g);
  return a;
}

/// One draw of A†A: a k-by-k hermitian matrix of rank min(n, k).
template <ScalarType T>
HermMatrix<T> sample_wishart(std::size_t n, std::size_t k, std::uint64_t key) {
  return gram(sample_gaussian<T>(n, k, key));
}

/// Shape, scalar field, and seed of a sampling run. Functions taking a
/// spec are templated on the scalar type and insist that it matches the
/// declared field.
struct EnsembleSpec {
  std::size_t n = 0;
  std::size_t k = 0;
  Field field = Field::Complex;
  std::uint64_t seed = 0;
};

namespace detail {

template <ScalarType T>
void check_spec(const EnsembleSpec& spec) {
  if (spec.n < 1 || spec.k < 1) throw DomainError("spec dimensions must be positive");
  if (spec.field != field_of<T>)
    throw DomainError("spec field does not match the requested scalar type");
}

}  // namespace detail

/// Trial t of a run draws from the stream keyed by (seed, t); distinct
/// trials are independent and may be generated in any order.
template <ScalarType T>
Matrix<T> sample_gaussian(const EnsembleSpec& spec, std::uint64_t trial = 0) {
  detail::check_spec<T>(spec);
  return sample_gaussian<T>(spec.n, spec.k, stream_key(spec.seed, trial));
}

template <ScalarType T>
HermMatrix<T> sample_wishart(const EnsembleSpec& spec, std::uint64_t trial = 0) {
  detail::check_spec<T>(spec);
  return sample_wishart<T>(spec.n, spec.k, stream_key(spec.seed, trial));
}

}  // namespace awkit
