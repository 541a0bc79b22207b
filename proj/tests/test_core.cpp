#include "catch_amalgamated.hpp"

#include <cmath>

#include "awkit/awkit.hpp"
#include "oracles.hpp"

using awkit::cplx;
using awkit::HermMatrix;
using awkit::Matrix;

namespace {
const cplx I{0.0, 1.0};
}

TEST_CASE("matrix construction and shape checks") {
  Matrix<double> m{{1, 2}, {3, 4}};
  CHECK(m.rows() == 2);
  CHECK(m.cols() == 2);
  CHECK(m(1, 0) == 3.0);
  CHECK_THROWS_AS((Matrix<double>{{1, 2}, {3}}), awkit::DimensionError);
  CHECK_THROWS_AS(Matrix<double>(2, 2, {1.0, 2.0, 3.0}), awkit::DimensionError);
  CHECK(Matrix<double>().empty());
  CHECK(awkit::scale_of(Matrix<double>()) == 1.0);
  CHECK(Matrix<double>::identity(3)(2, 2) == 1.0);
  CHECK_THROWS_AS(m + Matrix<double>(3, 3), awkit::DimensionError);
  CHECK_THROWS_AS(m * Matrix<double>(3, 3), awkit::DimensionError);
}

TEST_CASE("matrix arithmetic") {
  Matrix<double> a{{1, 2}, {3, 4}};
  Matrix<double> b{{5, 6}, {7, 8}};
  CHECK(a + b == Matrix<double>{{6, 8}, {10, 12}});
  CHECK(b - a == Matrix<double>{{4, 4}, {4, 4}});
  CHECK(2.0 * a == Matrix<double>{{2, 4}, {6, 8}});
  CHECK(a * b == Matrix<double>{{19, 22}, {43, 50}});
  CHECK(awkit::maxabs(a) == 4.0);
  CHECK(awkit::scale_of(Matrix<double>{{0.25}}) == 1.0);
}

TEST_CASE("conj_transpose basics") {
  CHECK(awkit::conj_transpose(Matrix<double>{{1, 2}, {3, 4}}) ==
        Matrix<double>{{1, 3}, {2, 4}});
  CHECK(awkit::conj_transpose(Matrix<cplx>{{I}}) == Matrix<cplx>{{-I}});
  const auto a = awkit::sample_gaussian<cplx>(3, 5, 11);
  CHECK(awkit::conj_transpose(awkit::conj_transpose(a)) == a);
}

TEST_CASE("gram matrix examples and oracle comparison") {
  CHECK(awkit::gram(Matrix<double>{{1, 2}}).matrix() ==
        Matrix<double>{{1, 2}, {2, 4}});
  CHECK(awkit::gram(Matrix<double>::identity(3)) ==
        HermMatrix<double>::identity(3));
  const auto a = awkit::sample_gaussian<cplx>(2, 4, 5);
  const auto g = awkit::gram(a);
  CHECK(oracles::max_entry_diff(g.matrix(), oracles::naive_gram(a)) < 1e-12);
  CHECK(HermMatrix<cplx>::max_asymmetry(g.matrix()) == 0.0);
}

TEST_CASE("gram matrices are positive semidefinite") {
  for (std::uint64_t s = 0; s < 5; ++s) {
    const auto g = awkit::sample_wishart<cplx>(3, 6, awkit::stream_key(21, s));
    for (const double l : awkit::spectrum(g)) CHECK(l >= -1e-10 * g.trace());
  }
}

TEST_CASE("determinant conventions") {
  CHECK(awkit::determinant(Matrix<double>()) == 1.0);
  CHECK(awkit::determinant(Matrix<double>{{2, 0}, {0, 3}}) == 6.0);
  for (std::size_t d = 0; d <= 16; ++d)
    CHECK(awkit::determinant(Matrix<double>::identity(d)) == 1.0);
}

TEST_CASE("determinant matches cofactor-expansion oracle") {
  for (std::uint64_t s = 0; s < 8; ++s) {
    const auto a = awkit::sample_gaussian<cplx>(4, 4, awkit::stream_key(7, s));
    const cplx got = awkit::determinant(a);
    const cplx want = oracles::cofactor_det(a);
    CHECK(awkit::abs_val(got - want) <
          1e-12 * std::max(1.0, awkit::abs_val(want)));
  }
}

TEST_CASE("determinant multiplicativity") {
  for (std::uint64_t s = 0; s < 10; ++s) {
    const auto m = awkit::sample_gaussian<cplx>(4, 4, awkit::stream_key(31, 2 * s));
    const auto n = awkit::sample_gaussian<cplx>(4, 4, awkit::stream_key(31, 2 * s + 1));
    const cplx lhs = awkit::determinant(m * n);
    const cplx rhs = awkit::determinant(m) * awkit::determinant(n);
    CHECK(awkit::abs_val(lhs - rhs) < 1e-10 * std::max(1.0, awkit::abs_val(rhs)));
  }
}

TEST_CASE("LU handles singular matrices without throwing") {
  const awkit::Lu<double> lu(Matrix<double>{{1, 2}, {2, 4}});
  CHECK(lu.is_singular());
  CHECK(lu.determinant() == 0.0);
  CHECK(lu.condition_estimate() == std::numeric_limits<double>::infinity());
  CHECK_THROWS_AS(lu.solve(std::vector<double>{1, 1}), awkit::SingularityError);
  CHECK_THROWS_AS(lu.inverse(), awkit::SingularityError);
}

TEST_CASE("LU solve and inverse on random systems") {
  for (std::uint64_t s = 0; s < 5; ++s) {
    const auto a = awkit::sample_gaussian<cplx>(5, 5, awkit::stream_key(13, s));
    const awkit::Lu<cplx> lu(a);
    std::vector<cplx> b(5);
    for (std::size_t i = 0; i < 5; ++i) b[i] = cplx(double(i) + 1.0, -1.0);
    const auto x = lu.solve(b);
    for (std::size_t i = 0; i < 5; ++i) {
      cplx acc{};
      for (std::size_t j = 0; j < 5; ++j) acc += a(i, j) * x[j];
      CHECK(awkit::abs_val(acc - b[i]) < 1e-10);
    }
    CHECK(oracles::max_entry_diff(a * lu.inverse(), Matrix<cplx>::identity(5)) < 1e-10);
  }
  CHECK(awkit::Lu<double>(Matrix<double>::identity(4)).condition_estimate() == 1.0);
  CHECK(awkit::Lu<double>(Matrix<double>()).condition_estimate() == 1.0);
  CHECK_THROWS_AS(awkit::Lu<double>(Matrix<double>(2, 3)), awkit::DimensionError);
}

TEST_CASE("leading principal blocks") {
  const Matrix<double> m{{1, 2, 3}, {2, 5, 6}, {3, 6, 9}};
  CHECK(awkit::leading_principal(m, 3) == m);
  CHECK(awkit::leading_principal(m, 0).empty());
  CHECK(awkit::leading_principal(m, 2) == Matrix<double>{{1, 2}, {2, 5}});
  CHECK_THROWS_AS(awkit::leading_principal(m, 4), awkit::DimensionError);
}

TEST_CASE("bordered submatrices") {
  const Matrix<double> m{{1, 2, 3}, {2, 5, 6}, {3, 6, 9}};
  CHECK(awkit::bordered(m, 0, 2, 3) == Matrix<double>{{6}});
  CHECK(awkit::bordered(m, 1, 2, 3) == Matrix<double>{{1, 3}, {2, 6}});
  CHECK(awkit::bordered(m, 1, 2, 2) == awkit::leading_principal(m, 2));
  CHECK(awkit::bordered(m, 2, 3, 3) == m);
  CHECK_THROWS_AS(awkit::bordered(m, 1, 1, 3), awkit::DomainError);
  CHECK_THROWS_AS(awkit::bordered(m, 1, 2, 4), awkit::DomainError);
  CHECK_THROWS_AS(awkit::bordered(m, 3, 4, 4), awkit::DomainError);
}

TEST_CASE("hermitian wrapper enforces structure") {
  CHECK_THROWS_AS(HermMatrix<double>::from_full(Matrix<double>{{1, 2}, {3, 4}}),
                  awkit::InvalidMatrixError);
  CHECK_THROWS_AS(HermMatrix<double>::from_full(Matrix<double>(2, 3)),
                  awkit::InvalidMatrixError);
  const auto h = HermMatrix<cplx>::from_upper(
      Matrix<cplx>{{cplx{1, 5}, cplx{2, 3}}, {cplx{9, 9}, cplx{4, -5}}});
  CHECK(h.entry(0, 0) == cplx{1, 0});
  CHECK(h.entry(1, 1) == cplx{4, 0});
  CHECK(h.entry(1, 0) == cplx{2, -3});
  CHECK(h.trace() == 5.0);
  CHECK(h.diag() == std::vector<double>{1.0, 4.0});
  const auto s = HermMatrix<double>::symmetrized(Matrix<double>{{1, 4}, {2, 1}});
  CHECK(s.entry(0, 1) == 3.0);
  CHECK(s.entry(1, 0) == 3.0);
  CHECK(HermMatrix<double>::diagonal({2, 3}).matrix() ==
        Matrix<double>{{2, 0}, {0, 3}});
}

TEST_CASE("from_full accepts round-off asymmetry and symmetrizes") {
  Matrix<double> m{{1, 2}, {2 + 1e-12, 4}};
  const auto h = HermMatrix<double>::from_full(m);
  CHECK(h.entry(0, 1) == h.entry(1, 0));
  m(1, 0) = 2.1;
  CHECK_THROWS_AS(HermMatrix<double>::from_full(m), awkit::InvalidMatrixError);
}

TEST_CASE("block decomposition splits at the first row and column") {
  const auto b = awkit::block_decompose(
      HermMatrix<double>::from_full(Matrix<double>{{1, 2}, {2, 4}}));
  CHECK(b.corner == 1.0);
  CHECK(b.border == std::vector<double>{2.0});
  CHECK(b.body.matrix() == Matrix<double>{{4}});

  const auto e = awkit::block_decompose(HermMatrix<double>::identity(3));
  CHECK(e.corner == 1.0);
  CHECK(e.border == std::vector<double>(2, 0.0));
  CHECK(e.body == HermMatrix<double>::identity(2));

  CHECK_THROWS_AS(awkit::block_decompose(HermMatrix<double>::zero(0)),
                  awkit::DimensionError);
}

TEST_CASE("block decomposition round trip is bit-exact") {
  const auto h = awkit::random_hermitian<cplx>(5, 99);
  CHECK(awkit::reassemble(awkit::block_decompose(h)) == h);
}

TEST_CASE("block inverse on diagonal examples") {
  const auto i2 = awkit::block_inverse(HermMatrix<cplx>::identity(2));
  CHECK(i2.a_block == Matrix<cplx>{{cplx{1, 0}}});
  CHECK(i2.b_vec == std::vector<cplx>{cplx{}});
  CHECK(i2.c_scalar == 1.0);

  const auto d = awkit::block_inverse(HermMatrix<double>::diagonal({2, 4}));
  CHECK(d.a_block == Matrix<double>{{0.5}});
  CHECK(d.b_vec == std::vector<double>{0.0});
  CHECK(d.c_scalar == 0.25);
}

TEST_CASE("block inverse reassembles to the true inverse") {
  for (std::uint64_t s = 0; s < 5; ++s) {
    const auto h = oracles::random_pd<cplx>(4, awkit::stream_key(77, s));
    const auto inv = awkit::assemble(awkit::block_inverse(h));
    CHECK(oracles::max_entry_diff(inv * h.matrix(), Matrix<cplx>::identity(4)) <
          1e-10);
  }
}

TEST_CASE("block inverse rejects degenerate inputs") {
  CHECK_THROWS_AS(awkit::block_inverse(HermMatrix<double>::identity(1)),
                  awkit::DimensionError);
  CHECK_THROWS_AS(
      awkit::block_inverse(HermMatrix<double>::from_full(
          Matrix<double>{{0, 0, 1}, {0, 0, 0}, {1, 0, 0}})),
      awkit::SingularityError);
  CHECK_THROWS_AS(
      awkit::block_inverse(HermMatrix<double>::from_full(
          Matrix<double>{{1, 1}, {1, 1}})),
      awkit::SingularityError);
}
