#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "k3cusps/codes.hpp"
#include "k3cusps/fqf.hpp"
#include "k3cusps/glue.hpp"

using namespace k3cusps;

namespace {

// affine functions on the nine points of F_3^2: constants plus the two
// coordinate functionals
TernaryCode affine_code() {
  return code_from_digits(9, {{1, 1, 1, 1, 1, 1, 1, 1, 1},
                              {0, 0, 0, 1, 1, 1, 2, 2, 2},
                              {0, 1, 2, 0, 1, 2, 0, 1, 2}});
}

// the complement of L in the even unimodular (3,19) lattice; its negated
// disc form is q_L
Lattice m_lattice() {
  return direct_sum({rescale(standard_lattice("U", 1), 3),
                     standard_lattice("A2", 1)});
}

// plain digit-vector arithmetic, independent of the bitsliced kernel
std::map<int, long long> weight_enumerator_oracle(
    const std::vector<std::vector<int>>& gens) {
  std::size_t k = gens.size(), n = gens.empty() ? 0 : gens[0].size();
  std::map<int, long long> dist;
  std::vector<int> coeff(k, 0);
  while (true) {
    std::vector<int> word(n, 0);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < n; ++j)
        word[j] = (word[j] + coeff[i] * gens[i][j]) % 3;
    int weight = 0;
    for (int d : word) weight += d != 0;
    ++dist[weight];
    std::size_t i = k;
    bool done = true;
    while (i-- > 0) {
      if (coeff[i] < 2) {
        ++coeff[i];
        done = false;
        break;
      }
      coeff[i] = 0;
    }
    if (done || k == 0) break;
  }
  return dist;
}

}  // namespace

TEST_CASE("bitsliced words behave like digit vectors") {
  std::mt19937 rng(17);
  for (int t = 0; t < 200; ++t) {
    std::vector<int> a(9), b(9);
    for (int i = 0; i < 9; ++i) {
      a[i] = rng() % 3;
      b[i] = rng() % 3;
    }
    F3Word wa = F3Word::from_digits(a), wb = F3Word::from_digits(b);
    std::vector<int> sum(9);
    for (int i = 0; i < 9; ++i) sum[i] = (a[i] + b[i]) % 3;
    CHECK(wa.add(wb) == F3Word::from_digits(sum));
    CHECK(wa.add(wa.negated()).is_zero());
    int wt = 0;
    for (int d : a) wt += d != 0;
    CHECK(wa.weight() == wt);
  }
}

TEST_CASE("weight enumerator of the affine-functions code") {
  auto dist = weight_enumerator(affine_code());
  std::map<int, long long> expect{{0, 1}, {6, 24}, {9, 2}};
  CHECK(dist == expect);
  CHECK(dist == weight_enumerator_oracle(affine_code().generator_digits()));
}

TEST_CASE("weight enumerator of tiny codes") {
  CHECK(weight_enumerator(make_code(9, {})) ==
        std::map<int, long long>{{0, 1}});
  TernaryCode rep = code_from_digits(9, {{1, 1, 1, 1, 1, 1, 1, 1, 1}});
  CHECK(weight_enumerator(rep) == std::map<int, long long>{{0, 1}, {9, 2}});
}

TEST_CASE("code search finds the weight-{6,9} class") {
  auto reps = search_codes(9, 3, {6, 9});
  REQUIRE(!reps.empty());
  // the affine-functions code belongs to one of the classes
  bool member = false;
  for (const TernaryCode& c : reps)
    if (monomial_equivalent(affine_code(), c).equivalent) member = true;
  CHECK(member);
  // representatives are pairwise inequivalent
  for (std::size_t i = 0; i < reps.size(); ++i)
    for (std::size_t j = i + 1; j < reps.size(); ++j)
      CHECK_FALSE(monomial_equivalent(reps[i], reps[j]).equivalent);
  // and their overlattices all sit in one genus
  for (std::size_t i = 0; i + 1 < reps.size(); ++i)
    CHECK(genus_equal(code_to_overlattice(reps[i]).lattice,
                      code_to_overlattice(reps[i + 1]).lattice));
}

TEST_CASE("no 3-dimensional code with only weight-9 words") {
  CHECK(search_codes(9, 3, {9}).empty());
}

TEST_CASE("the repetition class is the only weight-9 line") {
  auto reps = search_codes(9, 1, {9});
  REQUIRE(reps.size() == 1);
  CHECK(reps[0] == code_from_digits(9, {{1, 1, 1, 1, 1, 1, 1, 1, 1}}));
}

TEST_CASE("search budget") {
  CHECK_THROWS_WITH_AS(search_codes(9, 5, {6, 9}),
                       doctest::Contains("BudgetExceeded"), Error);
}

TEST_CASE("monomial equivalence basics") {
  TernaryCode c = affine_code();
  auto self = monomial_equivalent(c, c);
  CHECK(self.equivalent);

  // swap two coordinates
  std::vector<std::vector<int>> swapped;
  for (auto row : c.generator_digits()) {
    std::swap(row[0], row[1]);
    swapped.push_back(row);
  }
  auto w = monomial_equivalent(c, code_from_digits(9, swapped));
  CHECK(w.equivalent);

  // different weight distribution cannot be equivalent
  TernaryCode other = code_from_digits(9, {{1, 1, 1, 1, 1, 1, 0, 0, 0},
                                           {0, 0, 0, 1, 1, 1, 2, 2, 0},
                                           {0, 1, 2, 0, 1, 2, 0, 1, 0}});
  CHECK_FALSE(monomial_equivalent(c, other).equivalent);
}

TEST_CASE("random monomial images preserve the weight enumerator") {
  std::mt19937 rng(23);
  TernaryCode c = affine_code();
  for (int t = 0; t < 20; ++t) {
    std::vector<int> perm(9), sign(9);
    for (int i = 0; i < 9; ++i) perm[i] = i;
    std::shuffle(perm.begin(), perm.end(), rng);
    for (int i = 0; i < 9; ++i) sign[i] = (rng() % 2) ? 1 : 2;
    std::vector<std::vector<int>> moved;
    for (const auto& row : c.generator_digits()) {
      std::vector<int> img(9);
      for (int i = 0; i < 9; ++i) img[perm[i]] = row[i] * sign[i] % 3;
      moved.push_back(img);
    }
    TernaryCode image = code_from_digits(9, moved);
    CHECK(weight_enumerator(image) == weight_enumerator(c));
    CHECK(monomial_equivalent(c, image).equivalent);
  }
}

TEST_CASE("codewords are isotropic exactly when the weight is 0 mod 3") {
  FiniteQuadraticForm f = disc_form(a2_nine());
  REQUIRE(f.ngens() == 9);
  for (const F3Word& w : affine_code().all_words()) {
    FqfElement x;
    for (int i = 0; i < 9; ++i) x.push_back(w.get(i));
    CHECK((f.eval_q(x) == 0) == (w.weight() % 3 == 0));
  }
  // and on a code with words of every weight class
  TernaryCode probe = code_from_digits(9, {{1, 0, 0, 0, 0, 0, 0, 0, 0},
                                           {0, 1, 1, 0, 0, 0, 0, 0, 0}});
  for (const F3Word& w : probe.all_words()) {
    FqfElement x;
    for (int i = 0; i < 9; ++i) x.push_back(w.get(i));
    CHECK((f.eval_q(x) == 0) == (w.weight() % 3 == 0));
  }
}

TEST_CASE("overlattice from the affine code") {
  CodeLatticeResult r = code_to_overlattice(affine_code());
  auto inv = invariants(r.lattice);
  CHECK(inv.rank == 18);
  CHECK(inv.det == 27);  // 3^(9-2*3)
  CHECK(inv.even);
  CHECK(inv.sig == MatSignature{0, 0, 18});
  // q_L = -q_M
  CHECK(fqf_isomorphic(disc_form(r.lattice), negate(disc_form(m_lattice())))
            .isomorphic);
  // exactly 27 root pairs, all inside A2^9
  RootCount rc = verify_no_extra_roots(r.lattice, r.curve_basis);
  CHECK(rc.total_pairs == 27);
  CHECK(rc.outside_pairs == 0);
}

TEST_CASE("overlattice of the zero code is the root lattice itself") {
  CodeLatticeResult r = code_to_overlattice(make_code(9, {}));
  CHECK(r.lattice.gram == a2_nine().gram);
  RootCount rc = verify_no_extra_roots(r.lattice, r.curve_basis);
  CHECK(rc.total_pairs == 27);
  CHECK(rc.outside_pairs == 0);
}

TEST_CASE("a weight-3 word glues but produces roots outside A2^9") {
  TernaryCode w3 = code_from_digits(9, {{1, 1, 1, 0, 0, 0, 0, 0, 0}});
  // weight 3 = 0 mod 3 is isotropic, so the gluing itself succeeds
  CodeLatticeResult r = code_to_overlattice(w3);
  CHECK(abs(determinant(r.lattice.gram)) == 2187);  // 3^7
  RootCount rc = verify_no_extra_roots(r.lattice, r.curve_basis);
  CHECK(rc.outside_pairs >= 1);
  // the glue vector itself has square -2
  CHECK(rc.total_pairs > 27);

  // a weight-1 word is genuinely non-isotropic
  TernaryCode w1 = code_from_digits(9, {{1, 0, 0, 0, 0, 0, 0, 0, 0}});
  CHECK_THROWS_WITH_AS(code_to_overlattice(w1),
                       doctest::Contains("NotIsotropic"), Error);
}

TEST_CASE("triple cover class") {
  GlueClass v = triple_cover_class(affine_code());
  CHECK(v.norm == Rat(-6));
  CHECK(v.dual_coords == std::vector<Int>(9, Int(1)));
  // v.C_i = 0 and v.C_i' = -1 for every cusp
  Lattice base = a2_nine();
  for (int blk = 0; blk < 9; ++blk) {
    Rat with_c = 0, with_cp = 0;
    for (std::size_t j = 0; j < 18; ++j) {
      with_c += Rat(base.gram(2 * blk, j)) * v.curve_coords[j];
      with_cp += Rat(base.gram(2 * blk + 1, j)) * v.curve_coords[j];
    }
    CHECK(with_c == 0);
    CHECK(with_cp == Rat(-1));
  }
  CHECK_THROWS_WITH_AS(triple_cover_class(make_code(9, {})),
                       doctest::Contains("NoWeight9Word"), Error);
}

TEST_CASE("triple cover class normalizes words with 2s by curve swaps") {
  // a code whose only full-weight words have mixed digits
  TernaryCode c = code_from_digits(9, {{1, 1, 1, 1, 1, 1, 2, 2, 2},
                                       {0, 0, 0, 1, 1, 1, 1, 1, 1}});
  GlueClass v = triple_cover_class(c);
  CHECK(v.norm == Rat(-6));
  bool any_swap = false;
  for (bool s : v.swapped) any_swap |= s;
  CHECK(any_swap);
}
