#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <algorithm>

#include "k3cusps/fqf.hpp"
#include "k3cusps/lattice.hpp"
#include "k3cusps/oracles.hpp"

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

std::vector<Rat> q_value_multiset(const FiniteQuadraticForm& f) {
  std::vector<Rat> out;
  for (const FqfElement& x : f.all_elements()) out.push_back(f.eval_q(x));
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("disc form of A2(-1) against the explicit dual-quotient oracle") {
  Lattice a2m = standard_lattice("A2", -1);
  FiniteQuadraticForm f = disc_form(a2m);
  REQUIRE(f.orders == std::vector<Int>{3});
  // the dual generator (C + 2C')/3 has square -2/3 = 4/3 mod 2Z
  CHECK(f.q[0] == Rat(4, 3));

  auto oracle = oracles::brute_disc_form(a2m.gram);
  CHECK(oracle.order == 3);
  CHECK(oracle.q_values == q_value_multiset(f));
}

TEST_CASE("disc form of the positive A2 and of unimodular lattices") {
  FiniteQuadraticForm f = disc_form(standard_lattice("A2", 1));
  REQUIRE(f.orders == std::vector<Int>{3});
  CHECK(f.q[0] == Rat(2, 3));

  CHECK(disc_form(standard_lattice("U", 1)).ngens() == 0);
  CHECK(disc_form(standard_lattice("E8", -1)).ngens() == 0);
}

TEST_CASE("disc form of U(3)") {
  FiniteQuadraticForm f = disc_form(u3());
  REQUIRE(f.orders == std::vector<Int>{3, 3});
  CHECK(f.q[0] == 0);
  CHECK(f.q[1] == 0);
  CHECK((f.b[0][1] == Rat(1, 3) || f.b[0][1] == Rat(2, 3)));
  auto oracle = oracles::brute_disc_form(u3().gram);
  CHECK(oracle.order == 9);
  CHECK(oracle.q_values == q_value_multiset(f));
}

TEST_CASE("disc form oracle on more rank-2 lattices") {
  for (const Lattice& l :
       {standard_lattice("A1", -1), standard_lattice("<4>", 1),
        rescale(standard_lattice("A1", 1), 3)}) {
    FiniteQuadraticForm f = disc_form(l);
    auto oracle = oracles::brute_disc_form(l.gram);
    Int order = 1;
    for (const Int& d : f.orders) order *= d;
    CHECK(oracle.order == order);
    CHECK(oracle.q_values == q_value_multiset(f));
  }
}

TEST_CASE("disc form rejects odd and degenerate input") {
  CHECK_THROWS_WITH_AS(disc_form(standard_lattice("<3>", 1)),
                       doctest::Contains("NotEven"), Error);
  Lattice deg = make_lattice(IntMatrix::from_rows({{2, 2}, {2, 2}}));
  CHECK_THROWS_WITH_AS(disc_form(deg), doctest::Contains("Degenerate"), Error);
}

TEST_CASE("group order equals |det|") {
  for (const Lattice& l : {m_lattice(), n_lattice(), n0_lattice(),
                           standard_lattice("E6", -1), standard_lattice("A4", -1)}) {
    FiniteQuadraticForm f = disc_form(l);
    CHECK(f.order() == abs(determinant(l.gram)));
  }
}

TEST_CASE("negation") {
  FiniteQuadraticForm f = disc_form(standard_lattice("A2", -1));
  FiniteQuadraticForm g = negate(f);
  CHECK(g.q[0] == Rat(2, 3));  // -4/3 mod 2
  CHECK(negate(g).q == f.q);
  CHECK(negate(disc_form(standard_lattice("U", 1))).ngens() == 0);
}

TEST_CASE("disc form of the negated lattice is the negated form") {
  for (const Lattice& l :
       {standard_lattice("A2", -1), standard_lattice("E6", 1),
        standard_lattice("A4", -1), standard_lattice("D5", -1), u3()}) {
    FiniteQuadraticForm left = disc_form(rescale(l, -1));
    FiniteQuadraticForm right = negate(disc_form(l));
    CHECK(fqf_isomorphic(left, right).isomorphic);
  }
}

TEST_CASE("p-length") {
  // (Z/p)^(2 sigma) at p
  FiniteQuadraticForm lambda;
  lambda.orders = {5, 5, 5, 5};
  lambda.q.assign(4, Rat(2, 5));
  lambda.b.assign(4, std::vector<Rat>(4, Rat(0)));
  for (int i = 0; i < 4; ++i) lambda.b[i][i] = rat_mod1(lambda.q[i]);
  CHECK(p_length(lambda, 5) == 4);
  CHECK(p_length(lambda, 3) == 0);

  // order-27 exponent-3 group has 3-length 3
  FiniteQuadraticForm ql = negate(disc_form(m_lattice()));
  CHECK(ql.order() == 27);
  CHECK(p_length(ql, 3) == 3);

  // length is bounded by the rank for every catalog lattice
  for (const Lattice& l :
       {standard_lattice("A2", -1), standard_lattice("E6", -1),
        standard_lattice("E8", -1), standard_lattice("A4", -1),
        standard_lattice("A1", -1), standard_lattice("D5", -1), u3(),
        m_lattice(), n_lattice(), n0_lattice()}) {
    FiniteQuadraticForm f = disc_form(l);
    for (const Int& p : prime_factors(f.order()))
      CHECK(p_length(f, p) <= l.rank());
  }
}

TEST_CASE("isotropic subgroup enumeration on U(3)") {
  FiniteQuadraticForm f = disc_form(u3());
  auto subs = enumerate_isotropic_subgroups(f);
  REQUIRE(subs.size() == 3);  // trivial plus the two generator lines
  CHECK(subs[0].order() == 1);
  CHECK(subs[1].order() == 3);
  CHECK(subs[2].order() == 3);
  // every element of every subgroup is isotropic
  for (const Subgroup& s : subs)
    for (const FqfElement& e : s.elements) CHECK(f.eval_q(e) == 0);

  auto only3 = enumerate_isotropic_subgroups(f, Int(3));
  CHECK(only3.size() == 2);
}

TEST_CASE("N0 has no nonzero isotropic classes") {
  FiniteQuadraticForm f = disc_form(n0_lattice());
  CHECK(f.order() == 90);
  auto subs = enumerate_isotropic_subgroups(f);
  REQUIRE(subs.size() == 1);
  CHECK(subs[0].order() == 1);
}

TEST_CASE("trivial form has only the trivial subgroup") {
  FiniteQuadraticForm f = disc_form(standard_lattice("U", 1));
  auto subs = enumerate_isotropic_subgroups(f);
  CHECK(subs.size() == 1);
}

TEST_CASE("restriction") {
  FiniteQuadraticForm f = disc_form(u3());
  // restrict to <g1>
  Subgroup line = make_subgroup(f, {{Int(1), Int(0)}});
  FiniteQuadraticForm r = restrict_form(f, line);
  REQUIRE(r.orders == std::vector<Int>{3});
  CHECK(r.q[0] == 0);

  // restrict to the full group: isomorphic to the original
  Subgroup full = make_subgroup(f, {{Int(1), Int(0)}, {Int(0), Int(1)}});
  CHECK(fqf_isomorphic(restrict_form(f, full), f).isomorphic);

  // trivial subgroup
  Subgroup triv = make_subgroup(f, {});
  CHECK(restrict_form(f, triv).ngens() == 0);
}

TEST_CASE("form isomorphism: q_L vs q_N, and the sign obstruction") {
  // q_L = -q_M is also the disc form of N = M(-1) up to isomorphism
  FiniteQuadraticForm ql = negate(disc_form(m_lattice()));
  FiniteQuadraticForm qn = disc_form(n_lattice());
  auto iso = fqf_isomorphic(ql, qn);
  CHECK(iso.isomorphic);
  REQUIRE(iso.images.size() == 3);

  // q_N = -q_N fails: the obstruction behind the p = 1 mod 3 case
  CHECK_FALSE(fqf_isomorphic(qn, negate(qn)).isomorphic);

  // trivial vs trivial
  CHECK(fqf_isomorphic(FiniteQuadraticForm{}, FiniteQuadraticForm{}).isomorphic);
}

TEST_CASE("form isomorphism is an equivalence relation on the corpus") {
  std::vector<FiniteQuadraticForm> corpus{
      disc_form(standard_lattice("A2", 1)),
      disc_form(standard_lattice("A2", -1)),
      disc_form(u3()),
      disc_form(standard_lattice("A4", -1)),
      disc_form(standard_lattice("A1", -1)),
      disc_form(standard_lattice("D5", -1)),
      negate(disc_form(m_lattice())),
      disc_form(n0_lattice()),
  };
  std::size_t n = corpus.size();
  std::vector<std::vector<bool>> rel(n, std::vector<bool>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      rel[i][j] = fqf_isomorphic(corpus[i], corpus[j]).isomorphic;
  for (std::size_t i = 0; i < n; ++i) CHECK(rel[i][i]);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) CHECK(rel[i][j] == rel[j][i]);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t k = 0; k < n; ++k)
        if (rel[i][j] && rel[j][k]) CHECK(rel[i][k]);
}

TEST_CASE("isomorphic forms share order, p-lengths and q-multisets") {
  FiniteQuadraticForm a = negate(disc_form(m_lattice()));
  FiniteQuadraticForm b = disc_form(n_lattice());
  REQUIRE(fqf_isomorphic(a, b).isomorphic);
  CHECK(a.order() == b.order());
  for (const Int& p : prime_factors(a.order()))
    CHECK(p_length(a, p) == p_length(b, p));
  CHECK(q_value_multiset(a) == q_value_multiset(b));
}

TEST_CASE("primary parts and scaling") {
  FiniteQuadraticForm f = disc_form(n0_lattice());  // Z/3 x Z/3 x Z/5 x Z/2
  CHECK(primary_part(f, 3).form.order() == 9);
  CHECK(primary_part(f, 5).form.order() == 5);
  CHECK(primary_part(f, 2).form.order() == 2);

  FiniteQuadraticForm qn = disc_form(n_lattice());
  // scaling by p = 1 mod 3 fixes the form; p = -1 mod 3 negates it
  CHECK(fqf_isomorphic(scale_form(qn, 7), qn).isomorphic);
  CHECK(fqf_isomorphic(scale_form(qn, 5), negate(qn)).isomorphic);
  CHECK_THROWS_WITH_AS(scale_form(qn, 3), doctest::Contains("BadScale"), Error);
}

TEST_CASE("group budget") {
  // eleven Z/3 factors push the order past 3^10
  FiniteQuadraticForm big;
  big.orders.assign(11, Int(3));
  big.q.assign(11, Rat(2, 3));
  big.b.assign(11, std::vector<Rat>(11, Rat(0)));
  for (int i = 0; i < 11; ++i) big.b[i][i] = rat_mod1(big.q[i]);
  CHECK_THROWS_WITH_AS(enumerate_isotropic_subgroups(big),
                       doctest::Contains("BudgetExceeded"), Error);
  CHECK_THROWS_WITH_AS(fqf_isomorphic(big, big),
                       doctest::Contains("BudgetExceeded"), Error);
}

TEST_CASE("scaled complement model matches p * q_N on the 3-part") {
  // disc form of N(p) restricted to its 3-primary part vs p * q_N
  FiniteQuadraticForm qn = disc_form(n_lattice());
  for (Int p : {Int(5), Int(7), Int(11), Int(13)}) {
    Lattice np = rescale(n_lattice(), p);
    FiniteQuadraticForm f = disc_form(np);
    FiniteQuadraticForm three_part = primary_part(f, 3).form;
    FiniteQuadraticForm target = scale_form(qn, p);
    CHECK(fqf_isomorphic(three_part, target).isomorphic);
  }
}
