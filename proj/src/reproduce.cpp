#include "k3cusps/reproduce.hpp"

#include <algorithm>
#include <chrono>
#include <random>
#include <sstream>

#include "k3cusps/codes.hpp"
#include "k3cusps/elliptic.hpp"
#include "k3cusps/glue.hpp"
#include "k3cusps/oracles.hpp"
#include "k3cusps/traces.hpp"

namespace k3cusps {

namespace {

Lattice u3() { return rescale(standard_lattice("U", 1), 3); }

Lattice m_lattice() {
  return direct_sum({u3(), standard_lattice("A2", 1)});
}

Lattice n0_lattice() {
  return direct_sum({standard_lattice("U", 1), standard_lattice("E6", -1),
                     standard_lattice("E6", -1), standard_lattice("A4", -1),
                     standard_lattice("A1", -1)});
}

struct Check {
  std::ostringstream details;
  bool pass = true;

  void expect(bool ok, const std::string& what) {
    if (!ok) {
      pass = false;
      details << "FAILED: " << what << "; ";
    } else {
      details << what << "; ";
    }
  }
};

CriterionResult finish(int id, std::string name, std::string anchor, Check& c,
                       std::chrono::steady_clock::time_point start) {
  CriterionResult r;
  r.id = id;
  r.name = std::move(name);
  r.anchor = std::move(anchor);
  r.pass = c.pass;
  r.details = c.details.str();
  r.elapsed_ms = std::chrono::duration_cast<std::chrono::milliseconds>(
                     std::chrono::steady_clock::now() - start)
                     .count();
  return r;
}

CriterionResult criterion_code_search() {
  auto start = std::chrono::steady_clock::now();
  Check c;
  auto reps = search_codes(9, 3, {6, 9});
  c.expect(!reps.empty(), "search found " + std::to_string(reps.size()) +
                              " class(es) of weight-{6,9} codes");
  FiniteQuadraticForm target = negate(disc_form(m_lattice()));
  for (const TernaryCode& code : reps) {
    CodeLatticeResult r = code_to_overlattice(code);
    c.expect(abs(determinant(r.lattice.gram)) == 27, "|det L| = 27");
    RootCount rc = verify_no_extra_roots(r.lattice, r.curve_basis);
    c.expect(rc.total_pairs == 27, "27 root pairs");
    c.expect(rc.outside_pairs == 0, "no roots outside A2^9");
    c.expect(fqf_isomorphic(disc_form(r.lattice), target).isomorphic,
             "q_L = -q_M for M = U(3)+A2 of signature (3,1)");
  }
  return finish(1, "code-search",
                "index-27 overlattice: every weight-{6,9} glue code gives "
                "det 27, 27 roots inside A2^9, q_L = -q_M",
                c, start);
}

CriterionResult criterion_weight3() {
  auto start = std::chrono::steady_clock::now();
  Check c;
  TernaryCode w3 = code_from_digits(9, {{1, 1, 1, 0, 0, 0, 0, 0, 0}});
  CodeLatticeResult r = code_to_overlattice(w3);
  RootCount rc = verify_no_extra_roots(r.lattice, r.curve_basis);
  c.expect(rc.outside_pairs >= 1,
           "weight-3 glue word yields " + std::to_string(rc.outside_pairs) +
               " root pair(s) outside A2^9");
  return finish(2, "weight-3-exclusion",
                "a weight-3 glue vector is a (-2)-class outside A2^9", c,
                start);
}

CriterionResult criterion_theorem2() {
  auto start = std::chrono::steady_clock::now();
  Check c;
  bool sweep = true;
  for (Int p = 5; p <= 97; ++p) {
    if (!is_prime(p) || p == 3) continue;
    GlueVerdict v = theorem2_pipeline(p, 2);
    if (v.feasible != (p % 3 == 2)) sweep = false;
    if (!v.feasible && v.obstruction != Obstruction::FormMismatch)
      sweep = false;
    for (std::size_t sigma : {3, 4, 5}) {
      GlueVerdict w = theorem2_pipeline(p, sigma);
      if (w.feasible || w.obstruction != Obstruction::LengthBound)
        sweep = false;
    }
  }
  c.expect(sweep,
           "for all primes 5 <= p <= 97: sigma=2 feasible iff p = 2 mod 3; "
           "sigma in {3,4,5} always LengthBound");
  return finish(3, "theorem2-pipeline",
                "supersingular with nine cusps forces sigma <= 2, and "
                "sigma = 2 forces p = -1 mod 3",
                c, start);
}

CriterionResult criterion_duality() {
  auto start = std::chrono::steady_clock::now();
  Check c;
  Lattice left = direct_sum({u3(), standard_lattice("A2", 1)});
  Lattice right = direct_sum({standard_lattice("U", 1),
                              standard_lattice("A2", 1)});
  c.expect(genus_equal(dual_rescaled(left, 3), right),
           "(U(3)+A2)^v(3) lies in the genus of U+A2");
  Lattice a2 = standard_lattice("A2", 1);
  c.expect(isometric_definite(dual_rescaled(a2, 3), a2).isometric,
           "A2^v(3) is isometric to A2");
  return finish(4, "duality-chain",
                "N^v(3) = U + A2 and A2^v(3) = A2", c, start);
}

CriterionResult criterion_lefschetz() {
  auto start = std::chrono::steady_clock::now();
  Check c;
  EigenvalueMultiset conj{0, 2, 2}, ones{4, 0, 0};
  c.expect(lefschetz_number(conj) == 9, "eigenvalues w,w,w2,w2 give 9 fixed points");
  c.expect(lefschetz_number(ones) == 0, "eigenvalues 1,1,1,1 give 0");
  EigenvalueMultiset h2 = exterior_square(conj);
  c.expect(h2 == EigenvalueMultiset{4, 1, 1}, "H^2 eigenvalues 1,1,1,1,w,w2");
  c.expect(invariant_dimension(h2) == 4, "invariant H^2 dimension 4");
  return finish(5, "lefschetz-suite",
                "order-3 action: 9 fixed points; H^2 eigenvalues "
                "1,1,1,1,w,w2 with invariant dimension 4",
                c, start);
}

CriterionResult criterion_mumford() {
  auto start = std::chrono::steady_clock::now();
  Check c;
  auto table = mumford_filter(2);
  std::vector<int> rho;
  std::vector<std::string> excluded;
  for (const auto& row : table) {
    rho.push_back(row.rho);
    if (!row.admissible) excluded.push_back(row.type);
  }
  c.expect(rho == std::vector<int>{1, 2, 3, 1, 2, 1, 4, 2},
           "rho column reads 1,2,3,1,2,1,4,2");
  c.expect(excluded == std::vector<std::string>{"III-ii", "IV-ii", "IV-iii"},
           "excluded rows are exactly III-ii, IV-ii, IV-iii");
  c.expect(max_admissible_rho(table) == 3, "max admissible rho = 3");
  return finish(6, "mumford-filter",
                "endomorphism table: rho column 1,2,3,1,2,1,4,2; "
                "rho(A) <= 3 for simple abelian surfaces",
                c, start);
}

CriterionResult criterion_heights() {
  auto start = std::chrono::steady_clock::now();
  Check c;
  FiberConfiguration fx{{fiber_from_name("IV*"), fiber_from_name("IV*"),
                         fiber_from_name("I", 5), fiber_from_name("I", 2),
                         fiber_from_name("I", 1)}};
  FiberConfiguration fy{{fiber_from_name("IV*"), fiber_from_name("IV*"),
                         fiber_from_name("I*", 1), fiber_from_name("I", 1)}};
  c.expect(euler_number(fx) == 24, "euler sum 24 for 2IV*+I5+I2+I1");
  c.expect(euler_number(fy) == 24, "euler sum 24 for 2IV*+I1*+I1");
  c.expect(section_height(fx, {0, {1, 0, 2, 1, 0}}).height == Rat(29, 30),
           "height 29/30");
  c.expect(section_height(fx, {1, {1, 1, 1, 1, 0}}).height == Rat(61, 30),
           "height 61/30");
  c.expect(section_height(fx, {0, {1, 1, 0, 1, 0}}).height == Rat(5, 6),
           "height 5/6");
  c.expect(section_height(fy, {0, {1, 0, 2, 0}}).height == Rat(17, 12),
           "height 17/12");
  c.expect(shioda_tate_disc(fx, {{Rat(29, 30)}}, 1) == Rat(-87),
           "det NS = -87");
  c.expect(shioda_tate_disc(fx, {{Rat(61, 30)}}, 1) == Rat(-183),
           "det NS = -183");
  return finish(7, "heights-and-discriminants",
                "section heights 29/30, 61/30, 5/6, 17/12; "
                "det NS = -87 and -183; euler sums 24",
                c, start);
}

CriterionResult criterion_n0() {
  auto start = std::chrono::steady_clock::now();
  Check c;
  Lattice n0 = n0_lattice();
  c.expect(abs(determinant(n0.gram)) == 90, "|det N0| = 90");
  OverlatticeScan scan = ns_overlattice_scan(n0);
  c.expect(scan.nonzero_isotropic_count == 0,
           "A_N0 has no nonzero isotropic classes");
  c.expect(!scan.proper_even_overlattice_exists,
           "no proper even overlattice of N0");
  for (Int p : {Int(7), Int(13)}) {
    GlueVerdict v = embedding_obstruction(n0, AmbientSpec::supersingular(p, 2));
    c.expect(!v.feasible && v.obstruction == Obstruction::LengthBound,
             "LengthBound against sigma = 2 at p = " + p.str());
  }
  return finish(8, "n0-rigidity",
                "N0 = U+2E6+A4+A1: det 90, rigid (no overlattice), and "
                "2*sigma <= 3 blocks supersingular sigma = 2",
                c, start);
}

CriterionResult criterion_oracles() {
  auto start = std::chrono::steady_clock::now();
  Check c;
  // short vector enumeration vs exhaustive box search
  bool vectors_ok = true;
  for (const Lattice& l :
       {standard_lattice("A2", 1), standard_lattice("A2", -1),
        standard_lattice("A4", -1), standard_lattice("A1", -1)}) {
    auto fast = short_vectors(l, 4);
    auto slow = oracles::box_short_vectors(l.gram, 4);
    if (fast.size() != slow.size()) {
      vectors_ok = false;
      continue;
    }
    for (std::size_t i = 0; i < fast.size(); ++i)
      if (fast[i].coords != slow[i].coords || fast[i].norm != slow[i].norm)
        vectors_ok = false;
  }
  c.expect(vectors_ok,
           "short vectors match the box-search oracle at bound 4 on the "
           "definite rank <= 4 catalog");

  // form isomorphism is an equivalence relation on the 8-form corpus
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
  bool equiv_ok = true;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      rel[i][j] = fqf_isomorphic(corpus[i], corpus[j]).isomorphic;
  for (std::size_t i = 0; i < n; ++i)
    if (!rel[i][i]) equiv_ok = false;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      if (rel[i][j] != rel[j][i]) equiv_ok = false;
      for (std::size_t k = 0; k < n; ++k)
        if (rel[i][j] && rel[j][k] && !rel[i][k]) equiv_ok = false;
    }
  c.expect(equiv_ok,
           "form isomorphism is reflexive, symmetric and transitive on the "
           "8-form corpus");

  // determinant law on 50 randomized isotropic glue instances
  std::mt19937 rng(20260811);
  int instances = 0;
  bool det_ok = true;
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
      if (determinant(r.lattice.gram) * subs[i].order() * subs[i].order() !=
          det_l)
        det_ok = false;
    }
  }
  c.expect(det_ok && instances == 50,
           "det(overlattice) * |H|^2 = det(L) on 50 randomized glue "
           "instances over U(3)^k");
  return finish(9, "oracle-equivalence",
                "enumeration, form isomorphism and gluing agree with "
                "independent oracles",
                c, start);
}

}  // namespace

std::vector<CriterionResult> run_acceptance_suite() {
  return {criterion_code_search(), criterion_weight3(), criterion_theorem2(),
          criterion_duality(),     criterion_lefschetz(), criterion_mumford(),
          criterion_heights(),     criterion_n0(),        criterion_oracles()};
}

}  // namespace k3cusps
