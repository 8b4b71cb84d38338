#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <random>

#include "k3cusps/codes.hpp"
#include "k3cusps/glue.hpp"

using namespace k3cusps;

namespace {

Lattice u3() { return rescale(standard_lattice("U", 1), 3); }

// complement of L in the even unimodular (3,19) lattice
Lattice m_lattice() {
  return direct_sum({u3(), standard_lattice("A2", 1)});
}

// the even hyperbolic N = M(-1) of rank 4 and determinant -27
Lattice n_lattice() {
  return direct_sum({u3(), standard_lattice("A2", -1)});
}

Lattice n0_lattice() {
  return direct_sum({standard_lattice("U", 1), standard_lattice("E6", -1),
                     standard_lattice("E6", -1), standard_lattice("A4", -1),
                     standard_lattice("A1", -1)});
}

}  // namespace

TEST_CASE("overlattice of U(3) along an isotropic line is U") {
  Lattice l = u3();
  FiniteQuadraticForm f = disc_form(l);
  auto subs = enumerate_isotropic_subgroups(f, Int(3));
  REQUIRE(subs.size() == 2);
  for (const Subgroup& h : subs) {
    OverlatticeResult r = overlattice(l, h);
    CHECK(determinant(r.lattice.gram) == -1);
    CHECK(is_even(r.lattice));
    CHECK(genus_equal(r.lattice, standard_lattice("U", 1)));
  }
}

TEST_CASE("overlattice along the trivial subgroup is the identity") {
  Lattice l = m_lattice();
  Subgroup triv = make_subgroup(disc_form(l), {});
  OverlatticeResult r = overlattice(l, triv);
  CHECK(r.lattice.gram == l.gram);
  CHECK(r.sublattice_basis == IntMatrix::identity(4));
}

TEST_CASE("overlattice rejects non-isotropic subgroups") {
  Lattice a2 = standard_lattice("A2", -1);
  FiniteQuadraticForm f = disc_form(a2);
  Subgroup bad = make_subgroup(f, {{Int(1)}});
  CHECK_THROWS_WITH_AS(overlattice(a2, bad), doctest::Contains("NotIsotropic"),
                       Error);
}

TEST_CASE("overlattice determinant law on randomized glue data") {
  // det(L_H) * |H|^2 = det(L) over isotropic subgroups of U(3)^k
  std::mt19937 rng(20260811);
  int instances = 0;
  for (std::size_t k = 1; k <= 3 && instances < 50; ++k) {
    std::vector<Lattice> copies(k, u3());
    Lattice l = direct_sum(copies);
    Int det_l = determinant(l.gram);
    auto subs = enumerate_isotropic_subgroups(disc_form(l));
    std::shuffle(subs.begin(), subs.end(), rng);
    std::size_t take =
        std::min<std::size_t>(subs.size(), k == 1 ? 3 : k == 2 ? 17 : 30);
    for (std::size_t i = 0; i < take && instances < 50; ++i, ++instances) {
      OverlatticeResult r = overlattice(l, subs[i]);
      Int det_h = determinant(r.lattice.gram);
      CHECK(det_h * subs[i].order() * subs[i].order() == det_l);
      CHECK(is_even(r.lattice));
    }
  }
  CHECK(instances == 50);
}

TEST_CASE("glue to unimodular: A2 pairs") {
  GlueVerdict v = glues_to_unimodular(standard_lattice("A2", 1),
                                      standard_lattice("A2", -1));
  CHECK(v.feasible);
  CHECK(v.obstruction == Obstruction::None);
  CHECK(v.glued_signature == MatSignature{2, 0, 2});

  // oracle: actually build the index-3 overlattice of the sum and check it
  Lattice sum = direct_sum({standard_lattice("A2", 1), standard_lattice("A2", -1)});
  auto subs = enumerate_isotropic_subgroups(disc_form(sum), Int(3));
  REQUIRE(!subs.empty());
  bool unimodular_found = false;
  for (const Subgroup& h : subs) {
    OverlatticeResult r = overlattice(sum, h);
    if (abs(determinant(r.lattice.gram)) == 1) unimodular_found = true;
  }
  CHECK(unimodular_found);
}

TEST_CASE("glue to unimodular: N against itself fails at the form level") {
  GlueVerdict v = glues_to_unimodular(n_lattice(), n_lattice());
  CHECK_FALSE(v.feasible);
  CHECK(v.obstruction == Obstruction::FormMismatch);
}

TEST_CASE("glue to unimodular: trivial forms") {
  GlueVerdict v = glues_to_unimodular(standard_lattice("U", 1),
                                      standard_lattice("U", 1));
  CHECK(v.feasible);
}

TEST_CASE("embedding obstructions") {
  // the rank-18 overlattice with A_L = (Z/3)^3, modeled by its invariants:
  // use M(-1)'s form via a synthetic rank-18 carrier is overkill here; the
  // obstruction op takes the actual lattice, so use A2(-1)^9's overlattice
  // stand-in: rank 18, det 27 is what matters. Build it from the glue code
  // in the codes tests; here exercise the documented paper cases directly
  // with N0.
  Lattice n0 = n0_lattice();
  for (Int p : {Int(7), Int(13)}) {
    GlueVerdict v = embedding_obstruction(n0, AmbientSpec::supersingular(p, 2));
    CHECK_FALSE(v.feasible);
    CHECK(v.obstruction == Obstruction::LengthBound);
  }
  GlueVerdict ok = embedding_obstruction(n0, AmbientSpec::k3_unimodular());
  CHECK(ok.feasible);

  CHECK_THROWS_WITH_AS(
      embedding_obstruction(n0, AmbientSpec::supersingular(3, 2)),
      doctest::Contains("NotCoprime"), Error);
  CHECK_THROWS_WITH_AS(
      embedding_obstruction(n0, AmbientSpec{10, MatSignature{1, 0, 9}, {}}),
      doctest::Contains("BadAmbient"), Error);
}

TEST_CASE("embedding obstructions for the rank-18 overlattice itself") {
  TernaryCode code = code_from_digits(9, {{1, 1, 1, 1, 1, 1, 1, 1, 1},
                                          {0, 0, 0, 1, 1, 1, 2, 2, 2},
                                          {0, 1, 2, 0, 1, 2, 0, 1, 2}});
  Lattice l = code_to_overlattice(code).lattice;
  REQUIRE(l.rank() == 18);
  REQUIRE(abs(determinant(l.gram)) == 27);

  // into the even unimodular rank-22 reference: no length obstruction
  CHECK(embedding_obstruction(l, AmbientSpec::k3_unimodular()).feasible);

  // into an Artin-invariant-3 ambient: length 6 > 4
  GlueVerdict v = embedding_obstruction(l, AmbientSpec::supersingular(5, 3));
  CHECK_FALSE(v.feasible);
  CHECK(v.obstruction == Obstruction::LengthBound);
}

TEST_CASE("theorem-2 pipeline across primes") {
  for (Int p = 5; p <= 97; ++p) {
    if (!is_prime(p)) continue;
    GlueVerdict v = theorem2_pipeline(p, 2);
    bool expect = (p % 3) == 2;
    CHECK(v.feasible == expect);
    if (!expect) CHECK(v.obstruction == Obstruction::FormMismatch);
    for (std::size_t sigma : {3, 4, 5}) {
      GlueVerdict w = theorem2_pipeline(p, sigma);
      CHECK_FALSE(w.feasible);
      CHECK(w.obstruction == Obstruction::LengthBound);
    }
  }
}

TEST_CASE("theorem-2 pipeline edge cases") {
  CHECK(theorem2_pipeline(5, 1).feasible);
  CHECK_THROWS_WITH_AS(theorem2_pipeline(3, 2),
                       doctest::Contains("BadCharacteristic"), Error);
  CHECK_THROWS_WITH_AS(theorem2_pipeline(2, 2),
                       doctest::Contains("BadCharacteristic"), Error);
  CHECK_THROWS_AS(theorem2_pipeline(15, 2), Error);
}

TEST_CASE("pipeline witnesses and reports") {
  GlueVerdict yes = theorem2_pipeline(5, 2);
  CHECK(yes.feasible);
  CHECK(!yes.witness.empty());
  GlueVerdict no = theorem2_pipeline(7, 2);
  CHECK(no.details.find("q_N = -q_N") != std::string::npos);
}
