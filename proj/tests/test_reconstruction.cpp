#include "catch_amalgamated.hpp"

#include <cmath>

#include "awkit/awkit.hpp"
#include "oracles.hpp"

using awkit::cplx;
using awkit::HermMatrix;
using awkit::Matrix;
using awkit::PartialWishart;

TEST_CASE("partial data validation") {
  CHECK_THROWS_AS(PartialWishart<double>(Matrix<double>(3, 3)),
                  awkit::RegimeError);
  CHECK_THROWS_AS(PartialWishart<double>(Matrix<double>(4, 3)),
                  awkit::RegimeError);
  CHECK_THROWS_AS(
      PartialWishart<cplx>(Matrix<cplx>{{cplx{1, 0}, cplx{0, 1}, cplx{}},
                                        {cplx{0, 1}, cplx{1, 0}, cplx{}}}),
      awkit::InvalidMatrixError);

  const PartialWishart<double> p(Matrix<double>{{1, 2, 3}, {2, 5, 6}});
  CHECK(p.n() == 2);
  CHECK(p.k() == 3);
  CHECK(p.top_block().matrix() == Matrix<double>{{1, 2}, {2, 5}});
  CHECK(p.cross_block() == Matrix<double>{{3}, {6}});
}

TEST_CASE("from_full slices the leading rows") {
  const auto omega = awkit::sample_wishart<cplx>(2, 5, 42);
  const auto p = PartialWishart<cplx>::from_full(omega, 2);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 5; ++j)
      CHECK(p.rows()(i, j) == omega.entry(i, j));
  CHECK_THROWS_AS(PartialWishart<cplx>::from_full(omega, 5), awkit::RegimeError);
}

TEST_CASE("rank-one closure from a single row") {
  const auto real1 = awkit::reconstruct(PartialWishart<double>(Matrix<double>{{1, 2}}));
  CHECK(real1.omega.matrix() == Matrix<double>{{1, 2}, {2, 4}});

  const auto cx = awkit::reconstruct(PartialWishart<cplx>(
      Matrix<cplx>{{cplx{2, 0}, cplx{1, 1}, cplx{3, 0}}}));
  CHECK(awkit::abs_val(cx.omega.entry(1, 1) - cplx{1, 0}) < 1e-15);
  CHECK(awkit::abs_val(cx.omega.entry(1, 2) - cplx{1.5, -1.5}) < 1e-15);
  CHECK(awkit::abs_val(cx.omega.entry(2, 2) - cplx{4.5, 0}) < 1e-15);
  CHECK(awkit::abs_val(cx.omega.entry(2, 1) - cplx{1.5, 1.5}) < 1e-15);
}

TEST_CASE("round trip against an erased Gram block") {
  const auto a = awkit::sample_gaussian<cplx>(3, 6, 1001);
  const auto omega = awkit::gram(a);
  const auto rec =
      awkit::reconstruct(PartialWishart<cplx>::from_full(omega, 3));
  CHECK(oracles::max_entry_diff(rec.omega, omega) <
        1e-10 * awkit::scale_of(omega));
  CHECK_FALSE(rec.ill_conditioned);
}

TEST_CASE("round trip holds for deterministic integer data") {
  Matrix<double> a(2, 5);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 5; ++j)
      a(i, j) = static_cast<double>(i + 2 * j);
  const auto omega = awkit::gram(a);
  const auto rec = awkit::reconstruct(PartialWishart<double>::from_full(omega, 2));
  CHECK(oracles::max_entry_diff(rec.omega, omega) <
        1e-10 * awkit::scale_of(omega));
}

TEST_CASE("reconstruction output is a consistency fixed point") {
  const auto omega = awkit::sample_wishart<cplx>(3, 8, 77);
  const auto rec = awkit::reconstruct(PartialWishart<cplx>::from_full(omega, 3));
  const auto rep = awkit::consistency_check(rec.omega, 3);
  CHECK(rep.max_abs < 1e-10 * awkit::scale_of(rec.omega));
}

TEST_CASE("reconstruction refuses a singular leading block") {
  CHECK_THROWS_AS(
      awkit::reconstruct(PartialWishart<double>(Matrix<double>{{0, 1}})),
      awkit::SingularMinorError);
}

TEST_CASE("conditioning warning on a graded leading block") {
  const PartialWishart<double> p(Matrix<double>{{1, 0, 0}, {0, 1e-13, 0}});
  CHECK_THROWS_AS(awkit::reconstruct(p), awkit::SingularMinorError);
  awkit::Tolerances loose;
  loose.pivot = 1e-16;
  const auto rec = awkit::reconstruct(p, loose);
  CHECK(rec.ill_conditioned);
  CHECK(rec.condition_estimate >= awkit::kConditionWarning);
}

TEST_CASE("constraint counting per field") {
  CHECK(awkit::constraint_count(1, 3, awkit::Field::Complex) == 4);
  CHECK(awkit::constraint_count(1, 3, awkit::Field::Real) == 3);
  CHECK(awkit::constraint_count(2, 3, awkit::Field::Complex) == 1);
  CHECK(awkit::constraint_count(2, 3, awkit::Field::Real) == 1);
  CHECK_THROWS_AS(awkit::constraint_count(3, 3, awkit::Field::Real),
                  awkit::RegimeError);
}

TEST_CASE("consistency holds on true Gram matrices") {
  const auto omega = awkit::sample_wishart<cplx>(2, 5, 31415);
  const auto rep = awkit::consistency_check(omega, 2);
  CHECK(rep.max_abs < 1e-10 * awkit::scale_of(omega));
  CHECK(rep.constraint_count == 9);
  CHECK(rep.residuals.rows() == 3);
}

TEST_CASE("residuals are affine in the perturbed entry with slope one") {
  const auto omega = awkit::sample_wishart<cplx>(2, 5, 31415);
  const auto before = awkit::consistency_check(omega, 2);
  Matrix<cplx> bumped = omega.matrix();
  bumped(3, 3) += cplx{1, 0};
  const auto after =
      awkit::consistency_check(HermMatrix<cplx>::from_full(bumped), 2);
  const cplx delta = after.residuals(1, 1) - before.residuals(1, 1);
  CHECK(awkit::abs_val(delta - cplx{1, 0}) < 1e-12);
  CHECK(awkit::abs_val(after.residuals(1, 1) - cplx{1, 0}) < 1e-12);
}

TEST_CASE("consistency check rejects the full-rank regime") {
  const auto omega = awkit::sample_wishart<cplx>(5, 3, 8);
  CHECK_THROWS_AS(awkit::consistency_check(omega, 3), awkit::RegimeError);
  CHECK_THROWS_AS(awkit::consistency_check(omega, 4), awkit::RegimeError);
}

TEST_CASE("real-field round trips at several shapes") {
  const std::pair<std::size_t, std::size_t> shapes[] = {
      {1, 3}, {2, 5}, {4, 9}, {8, 16}};
  for (const auto& [n, k] : shapes) {
    const auto omega = awkit::sample_wishart<double>(
        n, k, awkit::stream_key(2024, n * 100 + k));
    const auto rec =
        awkit::reconstruct(PartialWishart<double>::from_full(omega, n));
    CHECK(oracles::max_entry_diff(rec.omega, omega) <
          1e-9 * awkit::scale_of(omega));
  }
}
