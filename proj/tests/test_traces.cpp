#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "k3cusps/traces.hpp"

using namespace k3cusps;

namespace {
const EigenvalueMultiset kConjPair{0, 2, 2};   // w, w, w^2, w^2
const EigenvalueMultiset kAllOnes{4, 0, 0};    // 1, 1, 1, 1
const EigenvalueMultiset kMixed{2, 1, 1};      // 1, 1, w, w^2
}  // namespace

TEST_CASE("eisenstein arithmetic") {
  Eisenstein w(0, 1);
  Eisenstein w2 = w * w;
  CHECK(w2 == Eisenstein(-1, -1));
  CHECK(w * w2 == Eisenstein(1, 0));      // w^3 = 1
  CHECK(w + w2 + Eisenstein(1) == Eisenstein(0));  // 1 + w + w^2 = 0
  CHECK(Eisenstein(2, 3) * Eisenstein(1, -1) ==
        Eisenstein(2 + 3, -2 + 3 + 3));
  CHECK_FALSE(w.is_rational());
}

TEST_CASE("traces of eigenvalue multisets") {
  CHECK(kConjPair.trace() == Eisenstein(-2, 0));
  CHECK(kAllOnes.trace() == Eisenstein(4, 0));
  CHECK(kMixed.trace() == Eisenstein(1, 0));
}

TEST_CASE("exterior square") {
  CHECK(exterior_square(kConjPair) == EigenvalueMultiset{4, 1, 1});
  CHECK(exterior_square(kAllOnes) == EigenvalueMultiset{6, 0, 0});
  CHECK(exterior_square(kMixed) == EigenvalueMultiset{2, 2, 2});
  CHECK_THROWS_WITH_AS(exterior_square(EigenvalueMultiset{1, 1, 1}),
                       doctest::Contains("WrongSize"), Error);
}

TEST_CASE("exterior square determinant identity") {
  // the product of the 6 pairwise products is the cube of the product;
  // in exponent form over Z/3 with multiplicities
  std::mt19937 rng(3);
  for (int t = 0; t < 50; ++t) {
    long long a = rng() % 5, b = rng() % 5;
    if (a + b > 4) continue;
    EigenvalueMultiset e{a, b, 4 - a - b};
    EigenvalueMultiset sq = exterior_square(e);
    long long pow_in = (e.omegas + 2 * e.omega2s) % 3;
    long long pow_out = (sq.omegas + 2 * sq.omega2s) % 3;
    CHECK(pow_out == 3 * pow_in % 3);
    CHECK(sq.size() == 6);
  }
}

TEST_CASE("fixed point counts") {
  CHECK(lefschetz_number(kConjPair) == 9);
  CHECK(lefschetz_number(kAllOnes) == 0);
  CHECK(lefschetz_number(kMixed) == 0);
  // a conjugation-asymmetric multiset has an irrational trace sum
  CHECK_THROWS_WITH_AS(lefschetz_number(EigenvalueMultiset{2, 2, 0}),
                       doctest::Contains("NonRationalTrace"), Error);
}

TEST_CASE("lefschetz number is rational for conjugation-stable input") {
  for (long long a = 0; a <= 4; ++a)
    for (long long b = 0; 2 * b + a <= 4; ++b) {
      if (a + 2 * b != 4) continue;
      EigenvalueMultiset e{a, b, b};
      CHECK_NOTHROW((void)lefschetz_number(e));
    }
}

TEST_CASE("invariant dimensions") {
  CHECK(invariant_dimension(exterior_square(kConjPair)) == 4);
  CHECK(invariant_dimension(kMixed) == 2);
  CHECK(invariant_dimension(kConjPair) == 0);
}

TEST_CASE("H^2 keeps the polarization classes in all three cases") {
  // conjugation-stable H^1 eigenvalues leave at least a hyperplane class
  // and its dual invariant on H^2
  for (const EigenvalueMultiset& e : {kConjPair, kAllOnes, kMixed})
    CHECK(invariant_dimension(exterior_square(e)) >= 2);
}

TEST_CASE("endomorphism table at p-rank 2") {
  auto table = mumford_filter(2);
  REQUIRE(table.size() == 8);
  std::vector<int> rho;
  for (const auto& row : table) rho.push_back(row.rho);
  CHECK(rho == std::vector<int>{1, 2, 3, 1, 2, 1, 4, 2});
  std::vector<std::string> excluded;
  for (const auto& row : table)
    if (!row.admissible) excluded.push_back(row.type);
  CHECK(excluded == std::vector<std::string>{"III-ii", "IV-ii", "IV-iii"});
  CHECK(max_admissible_rho(table) == 3);
  // rho = eta * dimD and dimD = e * d^2 throughout
  for (const auto& row : table) {
    CHECK(Rat(row.rho) == row.eta * Rat(row.dim_d));
    CHECK(row.dim_d == row.e * row.d * row.d);
  }
}

TEST_CASE("endomorphism table at p-rank 1") {
  auto table = mumford_filter(1);
  for (const auto& row : table)
    CHECK(row.admissible == (row.dim_d <= 1));
  CHECK(max_admissible_rho(table) == 1);
}

TEST_CASE("bad p-rank") {
  CHECK_THROWS_WITH_AS(mumford_filter(0), doctest::Contains("BadPRank"), Error);
  CHECK_THROWS_AS(mumford_filter(3), Error);
}
