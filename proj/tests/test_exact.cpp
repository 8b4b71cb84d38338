#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "k3cusps/exact.hpp"
#include "k3cusps/oracles.hpp"

using namespace k3cusps;

namespace {

IntMatrix random_matrix(std::mt19937& rng, std::size_t r, std::size_t c,
                        int lo, int hi) {
  std::uniform_int_distribution<int> dist(lo, hi);
  IntMatrix m(r, c);
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < c; ++j) m(i, j) = dist(rng);
  return m;
}

bool is_diagonal(const IntMatrix& m) {
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      if (i != j && m(i, j) != 0) return false;
  return true;
}

}  // namespace

TEST_CASE("smith normal form on [[2,1],[1,2]]") {
  auto m = IntMatrix::from_rows({{2, 1}, {1, 2}});
  auto s = smith_normal_form(m);
  CHECK(s.d == IntMatrix::from_rows({{1, 0}, {0, 3}}));
  CHECK(s.u * m * s.v == s.d);
  CHECK(abs(determinant(s.u)) == 1);
  CHECK(abs(determinant(s.v)) == 1);
}

TEST_CASE("smith normal form of identity and hyperbolic gram") {
  auto id = IntMatrix::identity(4);
  auto s = smith_normal_form(id);
  CHECK(s.d == id);

  auto u = IntMatrix::from_rows({{0, 1}, {1, 0}});
  auto su = smith_normal_form(u);
  CHECK(su.d == IntMatrix::identity(2));
  CHECK(su.u * u * su.v == su.d);
}

TEST_CASE("smith normal form properties on random matrices") {
  std::mt19937 rng(20260811);
  for (int trial = 0; trial < 60; ++trial) {
    std::size_t r = 1 + rng() % 5, c = 1 + rng() % 5;
    IntMatrix m = random_matrix(rng, r, c, -9, 9);
    auto s = smith_normal_form(m);
    CHECK(s.u * m * s.v == s.d);
    CHECK(is_diagonal(s.d));
    CHECK(abs(determinant(s.u)) == 1);
    CHECK(abs(determinant(s.v)) == 1);
    std::size_t k = std::min(r, c);
    for (std::size_t i = 0; i < k; ++i) CHECK(s.d(i, i) >= 0);
    for (std::size_t i = 0; i + 1 < k; ++i) {
      if (s.d(i, i) != 0) CHECK(s.d(i + 1, i + 1) % s.d(i, i) == 0);
      if (s.d(i, i) == 0) CHECK(s.d(i + 1, i + 1) == 0);
    }
    if (r == c) {
      Int prod = 1;
      for (std::size_t i = 0; i < k; ++i) prod *= s.d(i, i);
      CHECK(abs(prod) == abs(determinant(m)));
    }
  }
}

TEST_CASE("hermite form: redundant generators reduce to a basis") {
  // columns (3,0), (0,3), (1,1) span an index-3 sublattice of Z^2
  auto gens = IntMatrix::from_rows({{3, 0, 1}, {0, 3, 1}});
  auto basis = column_span_basis(gens);
  CHECK(basis == IntMatrix::from_rows({{3, 1}, {0, 1}}));

  // membership of each original generator in the span of the basis
  auto inv = RatMatrix(basis).inverse();
  for (std::size_t j = 0; j < gens.cols(); ++j) {
    RatMatrix v(2, 1);
    v(0, 0) = Rat(gens(0, j));
    v(1, 0) = Rat(gens(1, j));
    CHECK((inv * v).is_integral());
  }
  // and the basis columns lie in the original span (solve with oracle)
  CHECK(oracles::spans_same_lattice(gens, basis));
}

TEST_CASE("hermite form identity and strict rank requirement") {
  CHECK(hermite_normal_form(IntMatrix::identity(3)) == IntMatrix::identity(3));
  auto col = IntMatrix::from_rows({{2}, {4}});
  CHECK(hermite_normal_form(col) == col);
  auto dep = IntMatrix::from_rows({{1, 2}, {2, 4}});
  CHECK_THROWS_WITH_AS(hermite_normal_form(dep),
                       doctest::Contains("RankDeficient"), Error);
}

TEST_CASE("signature of small grams") {
  auto u = IntMatrix::from_rows({{0, 1}, {1, 0}});
  CHECK(signature(u) == MatSignature{1, 0, 1});
  CHECK(signature(IntMatrix(3, 3)) == MatSignature{0, 3, 0});
  auto nonsym = IntMatrix::from_rows({{0, 1}, {2, 0}});
  CHECK_THROWS_AS((void)signature(nonsym), Error);
}

TEST_CASE("signature agrees with the principal-minor oracle on E8") {
  IntMatrix e8 = oracles::e8_gram();
  CHECK(oracles::positive_definite_by_minors(e8));
  CHECK(signature(e8) == MatSignature{8, 0, 0});
  CHECK(signature(-e8) == MatSignature{0, 0, 8});
}

TEST_CASE("signature matches congruence-diagonalization oracle") {
  std::mt19937 rng(7);
  for (int trial = 0; trial < 40; ++trial) {
    std::size_t n = 1 + rng() % 5;
    IntMatrix m = random_matrix(rng, n, n, -6, 6);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < i; ++j) m(j, i) = m(i, j);
    auto s = signature(m);
    CHECK(s.positive + s.zero + s.negative == n);
    CHECK(s == oracles::signature_by_congruence(m));
  }
}

TEST_CASE("determinant examples") {
  auto a2 = IntMatrix::from_rows({{2, -1}, {-1, 2}});
  CHECK(determinant(a2) == 3);
  auto u3 = IntMatrix::from_rows({{0, 3}, {3, 0}});
  CHECK(determinant(u3) == -9);
  CHECK(determinant(IntMatrix(0, 0)) == 1);
  CHECK_THROWS_AS((void)determinant(IntMatrix(2, 3)), Error);
}

TEST_CASE("determinant equals Leibniz oracle and SNF product on random") {
  std::mt19937 rng(99);
  for (int trial = 0; trial < 50; ++trial) {
    std::size_t n = 1 + rng() % 4;
    IntMatrix m = random_matrix(rng, n, n, -7, 7);
    Int d = determinant(m);
    CHECK(d == oracles::determinant_leibniz(m));
    auto s = smith_normal_form(m);
    Int prod = 1;
    for (std::size_t i = 0; i < n; ++i) prod *= s.d(i, i);
    CHECK(abs(prod) == abs(d));
  }
}

TEST_CASE("rational helpers") {
  CHECK(rat_mod2(Rat(-2, 3)) == Rat(4, 3));
  CHECK(rat_mod1(Rat(7, 3)) == Rat(1, 3));
  CHECK(rat_mod2(Rat(4)) == 0);
  CHECK(rat_floor(Rat(-1, 2)) == -1);
  CHECK(rat_to_string(Rat(29, 30)) == "29/30");
  CHECK(rat_to_string(Rat(-6)) == "-6");
  CHECK(rat_from_string("61/30") == Rat(61, 30));
  CHECK(rat_from_string("-87") == Rat(-87));
  CHECK_THROWS_AS(rat_from_string("x/y"), Error);
}

TEST_CASE("primes") {
  CHECK(is_prime(Int(97)));
  CHECK_FALSE(is_prime(Int(91)));
  CHECK(prime_factors(Int(90)) == std::vector<Int>{2, 3, 5});
}
