#include "catch_amalgamated.hpp"

#include <cmath>
#include <cstdint>
#include <set>

#include "awkit/awkit.hpp"
#include "oracles.hpp"

using awkit::cplx;
using awkit::EnsembleSpec;
using awkit::Field;
using awkit::Matrix;

TEST_CASE("generator matches the published reference outputs") {
  awkit::SplitMix64 g(0);
  CHECK(g.next() == 0xe220a8397b1dcdafull);
  CHECK(g.next() == 0x6e789e6aa1b965f4ull);
  CHECK(awkit::mix64(0) == 0);
}

TEST_CASE("stream keys separate trials deterministically") {
  CHECK(awkit::stream_key(5, 0) == awkit::stream_key(5, 0));
  std::set<std::uint64_t> keys;
  for (std::uint64_t t = 0; t < 1000; ++t) keys.insert(awkit::stream_key(7, t));
  CHECK(keys.size() == 1000);
  CHECK(awkit::stream_key(7, 0) != awkit::stream_key(8, 0));
}

TEST_CASE("normal stream singles interleave with pairs") {
  awkit::NormalStream a(99);
  awkit::NormalStream b(99);
  const auto [p1, p2] = a.next_pair();
  CHECK(b.next() == p1);
  CHECK(b.next() == p2);
}

TEST_CASE("normal stream moments") {
  awkit::NormalStream g(2024);
  const std::size_t trials = 100000;
  double sum = 0.0, sumsq = 0.0;
  for (std::size_t i = 0; i < trials; ++i) {
    const double z = g.next();
    sum += z;
    sumsq += z * z;
  }
  const double mean = sum / trials;
  const double var = sumsq / trials - mean * mean;
  CHECK(std::abs(mean) < 4.0 / std::sqrt(static_cast<double>(trials)));
  CHECK(std::abs(var - 1.0) < 0.02);
}

TEST_CASE("complex entries have unit mean square modulus") {
  awkit::NormalStream g(555);
  const std::size_t trials = 100000;
  double acc = 0.0;
  for (std::size_t i = 0; i < trials; ++i)
    acc += awkit::abs_sq(awkit::sample_entry<cplx>(g));
  CHECK(std::abs(acc / trials - 1.0) < 0.02);
}

TEST_CASE("real entries have variance one half") {
  awkit::NormalStream g(556);
  const std::size_t trials = 100000;
  double acc = 0.0;
  for (std::size_t i = 0; i < trials; ++i)
    acc += awkit::abs_sq(awkit::sample_entry<double>(g));
  CHECK(std::abs(acc / trials - 0.5) < 0.01);
}

TEST_CASE("sampling is deterministic and row-major") {
  const EnsembleSpec spec{3, 4, Field::Complex, 12345};
  CHECK(awkit::sample_gaussian<cplx>(spec, 6) ==
        awkit::sample_gaussian<cplx>(spec, 6));
  CHECK_FALSE(awkit::sample_gaussian<cplx>(spec, 6) ==
              awkit::sample_gaussian<cplx>(spec, 7));

  const std::uint64_t key = 31337;
  const auto m = awkit::sample_gaussian<cplx>(1, 2, key);
  awkit::NormalStream g(key);
  CHECK(m(0, 0) == awkit::sample_entry<cplx>(g));
  CHECK(m(0, 1) == awkit::sample_entry<cplx>(g));
}

TEST_CASE("spec field must match the scalar type") {
  const EnsembleSpec spec{2, 2, Field::Complex, 0};
  CHECK_THROWS_AS(awkit::sample_gaussian<double>(spec), awkit::DomainError);
  const EnsembleSpec bad{0, 2, Field::Complex, 0};
  CHECK_THROWS_AS(awkit::sample_gaussian<cplx>(bad), awkit::DomainError);
}

TEST_CASE("thin Gram samples hide their row count") {
  const EnsembleSpec spec{2, 5, Field::Complex, 90210};
  for (std::uint64_t t = 0; t < 10; ++t) {
    const auto omega = awkit::sample_wishart<cplx>(spec, t);
    CHECK(omega.dim() == 5);
    CHECK(awkit::detect_rank(omega).detected_n == 2);
    const auto rep = awkit::consistency_check(omega, 2);
    CHECK(rep.max_abs < 1e-9 * awkit::scale_of(omega));
  }
}

TEST_CASE("pooled spectra are invariant under ensemble rotation") {
  const std::size_t trials = 400;
  const std::size_t bins = 8;
  const double top = 12.0;

  Matrix<cplx> v(3, 1);
  v(0, 0) = cplx{1, 1};
  v(1, 0) = cplx{0, 2};
  v(2, 0) = cplx{2, -1};
  double norm2 = 0.0;
  for (const auto& e : v.entries()) norm2 += awkit::abs_sq(e);
  Matrix<cplx> u = Matrix<cplx>::identity(3);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j)
      u(i, j) -= cplx{2.0 / norm2} * v(i, 0) * awkit::conj_val(v(j, 0));

  auto histogram = [&](std::uint64_t seed, bool rotate) {
    std::vector<double> h(bins, 0.0);
    const EnsembleSpec spec{3, 3, Field::Complex, seed};
    for (std::uint64_t t = 0; t < trials; ++t) {
      auto omega = awkit::sample_wishart<cplx>(spec, t);
      if (rotate)
        omega = awkit::HermMatrix<cplx>::from_full(
            u * omega.matrix() * awkit::conj_transpose(u));
      for (const double l : awkit::spectrum(omega)) {
        auto idx = static_cast<std::size_t>(l / top * bins);
        if (idx >= bins) idx = bins - 1;
        h[idx] += 1.0;
      }
    }
    for (double& c : h) c /= static_cast<double>(trials * 3);
    return h;
  };

  const auto base = histogram(1, false);
  const auto rotated = histogram(2, true);
  for (std::size_t b = 0; b < bins; ++b) {
    const double p = 0.5 * (base[b] + rotated[b]);
    const double sigma =
        std::sqrt(std::max(p * (1.0 - p), 1e-6) * 2.0 / (trials * 3.0));
    CHECK(std::abs(base[b] - rotated[b]) < 5.0 * sigma);
  }
}
