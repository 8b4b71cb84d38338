#include "k3cusps/glue.hpp"

#include <sstream>

namespace k3cusps {

std::string obstruction_name(Obstruction o) {
  switch (o) {
    case Obstruction::None:
      return "None";
    case Obstruction::LengthBound:
      return "LengthBound";
    case Obstruction::FormMismatch:
      return "FormMismatch";
  }
  return "?";
}

OverlatticeResult overlattice(const Lattice& l, const Subgroup& h) {
  DiscFormData data = disc_form_with_lifts(l);
  const FiniteQuadraticForm& f = data.form;
  for (const FqfElement& e : h.elements) {
    if (e.size() != f.ngens())
      throw Error("NotIsotropic", "subgroup does not live on this form");
    if (f.eval_q(e) != 0) {
      std::ostringstream os;
      os << "element (";
      for (std::size_t i = 0; i < e.size(); ++i)
        os << (i ? "," : "") << e[i];
      os << ") has q = " << rat_to_string(f.eval_q(e));
      throw Error("NotIsotropic", os.str());
    }
  }
  for (const FqfElement& x : h.elements)
    for (const FqfElement& y : h.elements)
      if (f.eval_b(x, y) != 0)
        throw Error("NotIsotropic", "bilinear form does not vanish on subgroup");

  std::size_t n = l.rank();
  if (h.generators.empty() || n == 0)
    return {l, IntMatrix::identity(n)};

  // common denominator of the lifted generators
  Int den = 1;
  std::vector<std::vector<Rat>> lifts;
  for (const FqfElement& g : h.generators) {
    std::vector<Rat> lift(n, Rat(0));
    for (std::size_t c = 0; c < f.ngens(); ++c)
      for (std::size_t i = 0; i < n; ++i)
        lift[i] += Rat(g[c]) * data.lifts(i, c);
    for (const Rat& v : lift) {
      Int d = denominator(v);
      den = den / gcd(den, d) * d;
    }
    lifts.push_back(std::move(lift));
  }
  IntMatrix gens(n, n + lifts.size());
  for (std::size_t i = 0; i < n; ++i) gens(i, i) = den;
  for (std::size_t j = 0; j < lifts.size(); ++j)
    for (std::size_t i = 0; i < n; ++i) {
      Rat scaled = Rat(den) * lifts[j][i];
      gens(i, n + j) = numerator(scaled);
    }
  IntMatrix k = column_span_basis(gens);
  if (k.cols() != n) throw Error("NonIntegralResult", "overlattice rank drop");
  RatMatrix basis(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) basis(i, j) = Rat(k(i, j), den);
  RatMatrix gram_rat = basis.transposed() * RatMatrix(l.gram) * basis;
  if (!gram_rat.is_integral())
    throw Error("NonIntegralResult", "glued Gram is not integral");
  IntMatrix gram = gram_rat.to_int();
  for (std::size_t i = 0; i < n; ++i)
    if (gram(i, i) % 2 != 0)
      throw Error("NonIntegralResult", "glued Gram is not even");

  // index and determinant bookkeeping
  Int det_l = determinant(l.gram);
  Int det_h = determinant(gram);
  if (det_h * h.order() * h.order() != det_l)
    throw Error("NonIntegralResult", "index does not match subgroup order");

  // basis of L inside the overlattice: solve basis * X = I
  RatMatrix x = basis.inverse();
  if (!x.is_integral())
    throw Error("NonIntegralResult", "sublattice basis is not integral");
  return {make_lattice(std::move(gram),
                       l.label.empty() ? "" : l.label + "^glue"),
          x.to_int()};
}

GlueVerdict glues_to_unimodular(const Lattice& l1, const Lattice& l2) {
  FiniteQuadraticForm f1 = disc_form(l1);
  FiniteQuadraticForm f2 = disc_form(l2);
  GlueVerdict v;
  FqfIsomorphism iso = fqf_isomorphic(f1, negate(f2));
  if (!iso.isomorphic) {
    v.feasible = false;
    v.obstruction = Obstruction::FormMismatch;
    v.details = "q(L1) is not isomorphic to -q(L2)";
    return v;
  }
  v.feasible = true;
  v.obstruction = Obstruction::None;
  MatSignature s1 = signature(l1.gram), s2 = signature(l2.gram);
  v.glued_signature =
      MatSignature{s1.positive + s2.positive, s1.zero + s2.zero,
                   s1.negative + s2.negative};
  v.witness = iso.images;
  v.details = "glue subgroup exists; glued signature (" +
              std::to_string(v.glued_signature.positive) + "," +
              std::to_string(v.glued_signature.negative) + ")";
  return v;
}

AmbientSpec AmbientSpec::k3_unimodular() {
  return AmbientSpec{22, MatSignature{3, 0, 19}, {}};
}

AmbientSpec AmbientSpec::supersingular(const Int& p, std::size_t sigma) {
  return AmbientSpec{22, MatSignature{1, 0, 21}, {{p, 2 * sigma}}};
}

GlueVerdict embedding_obstruction(const Lattice& l, const AmbientSpec& ambient) {
  LatticeInvariants inv = invariants(l);
  if (inv.det == 0) throw Error("Degenerate", "degenerate lattice");
  if (inv.rank >= ambient.rank)
    throw Error("BadAmbient", "ambient rank must exceed rank of L");
  Int ambient_disc = 1;
  for (const auto& [p, len] : ambient.elementary)
    for (std::size_t i = 0; i < len; ++i) ambient_disc *= p;
  if (gcd(inv.det, ambient_disc) != 1)
    throw Error("NotCoprime",
                "discriminants share a factor; outside the coprime setting");

  std::size_t comp_rank = ambient.rank - inv.rank;
  GlueVerdict v;
  // the ambient discriminant group must be carried by the complement
  for (const auto& [p, len] : ambient.elementary) {
    if (len > comp_rank) {
      v.feasible = false;
      v.obstruction = Obstruction::LengthBound;
      std::ostringstream os;
      os << "ambient discriminant has p-length " << len << " at p = " << p
         << ", exceeding the complement rank " << comp_rank;
      v.details = os.str();
      return v;
    }
  }
  // and so must a copy of A_L
  FiniteQuadraticForm f = disc_form(l);
  for (const Int& p : prime_factors(inv.det)) {
    std::size_t len = p_length(f, p);
    if (len > comp_rank) {
      v.feasible = false;
      v.obstruction = Obstruction::LengthBound;
      std::ostringstream os;
      os << "A_L has p-length " << len << " at p = " << p
         << ", exceeding the complement rank " << comp_rank;
      v.details = os.str();
      return v;
    }
  }
  v.feasible = true;
  v.obstruction = Obstruction::None;
  v.details = "no length obstruction against a primitive embedding";
  return v;
}

GlueVerdict theorem2_pipeline(const Int& p, std::size_t sigma) {
  if (p == 3 || p < 2 || !is_prime(p))
    throw Error("BadCharacteristic", "pipeline needs a prime p > 3");
  if (p == 2)
    throw Error("BadCharacteristic",
                "p = 2 is excluded, as for the even-lattice computations");
  if (sigma == 0) throw Error("BadAmbient", "Artin invariant is >= 1");

  // L has rank 18 and A_L = (Z/3)^3; the complement in the rank-22 ambient
  // has rank 4.
  constexpr std::size_t kComplementRank = 4;
  GlueVerdict v;
  if (sigma >= 3) {
    v.feasible = false;
    v.obstruction = Obstruction::LengthBound;
    std::ostringstream os;
    os << "A_Lambda = (Z/" << p << ")^" << 2 * sigma << " needs length "
       << 2 * sigma << " <= " << kComplementRank
       << " on the orthogonal complement; fails for sigma = " << sigma;
    v.details = os.str();
    return v;
  }
  if (sigma == 1) {
    v.feasible = true;
    v.obstruction = Obstruction::None;
    v.details =
        "sigma = 1: no obstruction from this pipeline (the Artin invariant 1 "
        "surface is attained)";
    return v;
  }

  // sigma = 2: the complement scaled by 1/p is the even hyperbolic
  // N = U(3) + A2(-1), and gluing forces q_L = -(p * q_N). Independently
  // q_L = q_N via N = M(-1) with M = U(3) + A2(+1) of signature (3,1), so
  // the comparison succeeds exactly when p * q_N = -q_N.
  Lattice n_lat = direct_sum({rescale(standard_lattice("U", 1), 3),
                              standard_lattice("A2", -1)});
  Lattice m_lat = direct_sum({rescale(standard_lattice("U", 1), 3),
                              standard_lattice("A2", 1)});
  FiniteQuadraticForm q_n = disc_form(n_lat);
  FiniteQuadraticForm q_l = negate(disc_form(m_lat));
  if (!fqf_isomorphic(q_l, q_n).isomorphic)
    throw Error("Internal", "q_L = q_N consistency check failed");

  FiniteQuadraticForm target = negate(scale_form(q_n, p));
  FqfIsomorphism iso = fqf_isomorphic(q_l, target);
  if (iso.isomorphic) {
    v.feasible = true;
    v.obstruction = Obstruction::None;
    v.witness = iso.images;
    std::ostringstream os;
    os << "p = " << p << " = -1 mod 3: q_L = -(p * q_N); glue subgroup exists";
    v.details = os.str();
  } else {
    v.feasible = false;
    v.obstruction = Obstruction::FormMismatch;
    std::ostringstream os;
    os << "p = " << p << " = 1 mod 3: q_L = -(p * q_N) would force q_N = -q_N, "
       << "which fails (gluing N to itself would give an even unimodular "
       << "lattice of signature (2,6))";
    v.details = os.str();
  }
  return v;
}

}  // namespace k3cusps
