#include <random>

#include "bgg/errors.hpp"
#include "bgg/linalg.hpp"
#include "doctest.h"

using namespace bgg;
using namespace bgg::linalg;

namespace {

Matrix random_matrix(std::mt19937& rng, std::size_t rows, std::size_t cols, int spread = 3) {
  std::uniform_int_distribution<int> dist(-spread, spread);
  std::uniform_int_distribution<int> sparsity(0, 2);
  Matrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j)
      if (sparsity(rng) == 0) m(i, j) = make_rational(dist(rng), 1 + (dist(rng) + spread) % 3);
  return m;
}

}  // namespace

TEST_CASE("rank and nullspace of a small matrix") {
  Matrix a = Matrix::from_rows({{1, 2, 3}, {2, 4, 6}, {1, 0, 1}});
  CHECK(rank(a) == 2);
  Matrix n = nullspace(a);
  REQUIRE(n.cols() == 1);
  CHECK((a * n).is_zero());
}

TEST_CASE("solve and inverse") {
  Matrix a = Matrix::from_rows({{2, 1}, {1, 1}});
  Matrix inv = inverse(a);
  CHECK(a * inv == Matrix::identity(2));
  CHECK_FALSE(solve(Matrix::from_rows({{1, 1}, {2, 2}}), Matrix::from_rows({{1}, {3}})).has_value());
  CHECK_THROWS_AS(inverse(Matrix::from_rows({{1, 1}, {2, 2}})), ConsistencyError);
}

TEST_CASE("random matrices: rank-nullity, RREF pivots, sparse agrees with dense") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 40; ++trial) {
    const std::size_t r = 1 + rng() % 7, c = 1 + rng() % 7;
    Matrix a = random_matrix(rng, r, c);
    Matrix b = random_matrix(rng, c, 1 + rng() % 5);
    CHECK(rank(a) + nullspace(a).cols() == c);
    CHECK((a * nullspace(a)).is_zero());
    CHECK(rank(a) == rank(transpose(a)));
    CHECK(independent_columns(a).size() == rank(a));

    SparseMatrix sa(r, c), sb(b.rows(), b.cols());
    for (std::size_t i = 0; i < r; ++i)
      for (std::size_t j = 0; j < c; ++j) sa.add(i, j, a(i, j));
    for (std::size_t i = 0; i < b.rows(); ++i)
      for (std::size_t j = 0; j < b.cols(); ++j) sb.add(i, j, b(i, j));
    CHECK((sa * sb).to_dense() == a * b);
    if (r == c) CHECK(commutator(sa, sa).is_zero());

    auto x = solve(a, a * b);
    REQUIRE(x.has_value());
    CHECK(a * (*x) == a * b);
  }
}

TEST_CASE("certified rank and kernel agree with rational elimination") {
  std::mt19937 rng(11);
  for (int trial = 0; trial < 60; ++trial) {
    const std::size_t r = 1 + rng() % 9, c = 1 + rng() % 9;
    // Low-rank products exercise nontrivial kernels.
    const std::size_t inner = 1 + rng() % 4;
    Matrix a = random_matrix(rng, r, inner) * random_matrix(rng, inner, c);
    SparseMatrix sa = SparseMatrix::from_dense(a);
    CertifiedEchelon e = certified_echelon(sa);
    CHECK(e.rank == rank(a));
    CHECK(e.kernel.cols() + e.rank == c);
    CHECK((a * e.kernel).is_zero());
    CHECK(rank(e.kernel) == e.kernel.cols());
    CHECK(rank(select_columns(a, e.pivots)) == e.rank);
    CHECK(modular_rank(sa) == e.rank);
  }
}

TEST_CASE("certified elimination: several primes, then the rational fallback") {
  // A kernel entry of 2^40 needs more than one modulus to reconstruct.
  SparseMatrix a(1, 2);
  a.add(0, 0, 1);
  a.add(0, 1, Rational(mpz_class(1) << 40));
  CertifiedEchelon e = certified_echelon(a);
  CHECK_FALSE(e.used_fallback);
  CHECK(e.rank == 1);
  CHECK((a.to_dense() * e.kernel).is_zero());
  CHECK(e.kernel(0, 0) == -Rational(mpz_class(1) << 40));

  // 2^400 is beyond every combined modulus.
  SparseMatrix big(1, 2);
  big.add(0, 0, 1);
  big.add(0, 1, Rational(mpz_class(1) << 400));
  CertifiedEchelon eb = certified_echelon(big);
  CHECK(eb.used_fallback);
  CHECK(eb.rank == 1);
  CHECK((big.to_dense() * eb.kernel).is_zero());

  // Denominator divisible by the first modulus.
  SparseMatrix b(2, 2);
  b.add(0, 0, Rational(mpz_class(1), (mpz_class(1) << 61) - 1));
  b.add(1, 1, 3);
  CHECK(certified_rank(b) == 2);
  CHECK(modular_rank(b) == 2);

  SparseMatrix small(2, 3);
  small.add(0, 0, make_rational(1, 3));
  small.add(0, 1, make_rational(-2, 7));
  small.add(1, 2, 5);
  CertifiedEchelon es = certified_echelon(small);
  CHECK_FALSE(es.used_fallback);
  CHECK(es.rank == 2);
  CHECK((small.to_dense() * es.kernel).is_zero());

  CHECK(certified_rank(SparseMatrix(0, 4)) == 0);
  CHECK(certified_nullspace(SparseMatrix(3, 0)).cols() == 0);
  CHECK(certified_nullspace(SparseMatrix(0, 3)).cols() == 3);
}

TEST_CASE("sparse stacking and transpose") {
  Matrix a = Matrix::from_rows({{1, 0}, {2, 3}});
  Matrix b = Matrix::from_rows({{0, 5}, {7, 0}});
  SparseMatrix sa = SparseMatrix::from_dense(a), sb = SparseMatrix::from_dense(b);
  CHECK(sparse_hstack({&sa, &sb}, 2).to_dense() == hstack({&a, &b}, 2));
  CHECK(sparse_vstack({&sa, &sb}, 2).to_dense() == vstack(a, b));
  CHECK(transpose(sa).to_dense() == transpose(a));
}
