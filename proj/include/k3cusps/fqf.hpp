#pragma once

#include <optional>
#include <vector>

#include "k3cusps/exact.hpp"
#include "k3cusps/lattice.hpp"

namespace k3cusps {

// Element of a finite quadratic form: residues against the generator orders.
using FqfElement = std::vector<Int>;

// Finite abelian group with q: G -> Q/2Z and the induced b: G x G -> Q/Z,
// presented on generators whose orders form a divisor chain d1 | d2 | ...
// Canonical representatives: q in [0,2), b in [0,1), b(g,g) = q(g) mod 1.
struct FiniteQuadraticForm {
  std::vector<Int> orders;
  std::vector<Rat> q;
  std::vector<std::vector<Rat>> b;

  std::size_t ngens() const { return orders.size(); }
  Int order() const;

  FqfElement zero() const { return FqfElement(orders.size(), 0); }
  FqfElement reduce(FqfElement x) const;
  FqfElement add(const FqfElement& x, const FqfElement& y) const;
  FqfElement scalar(const Int& k, const FqfElement& x) const;
  Int element_order(const FqfElement& x) const;
  Rat eval_q(const FqfElement& x) const;                      // mod 2Z
  Rat eval_b(const FqfElement& x, const FqfElement& y) const; // mod Z

  std::vector<FqfElement> all_elements() const;
};

// A_L = L^v / L for an even nondegenerate lattice, plus the rational lifts of
// the generators (columns, in the coordinates of L's basis) used for gluing.
struct DiscFormData {
  FiniteQuadraticForm form;
  RatMatrix lifts;
};
DiscFormData disc_form_with_lifts(const Lattice& l);
FiniteQuadraticForm disc_form(const Lattice& l);

FiniteQuadraticForm negate(const FiniteQuadraticForm& f);

// Minimal number of generators of the p-primary part.
std::size_t p_length(const FiniteQuadraticForm& f, const Int& p);

// Subgroup of a form's underlying group; closed under addition by
// construction (make_subgroup computes and validates the closure).
struct Subgroup {
  std::vector<FqfElement> generators;
  std::vector<FqfElement> elements;  // sorted, includes 0
  Int order() const { return Int(elements.size()); }
};
Subgroup make_subgroup(const FiniteQuadraticForm& f,
                       std::vector<FqfElement> generators);

// All subgroups with q = 0 (mod 2Z) and b = 0 (mod Z) identically, the
// trivial subgroup included, canonically ordered. Isotropy is checked on
// every element, not just generators. Group order budget: 3^10.
std::vector<Subgroup> enumerate_isotropic_subgroups(
    const FiniteQuadraticForm& f,
    const std::optional<Int>& order_filter = std::nullopt);

// The form induced on a subgroup, on the subgroup's own canonical generators.
FiniteQuadraticForm restrict_form(const FiniteQuadraticForm& f,
                                  const Subgroup& s);

struct FqfIsomorphism {
  bool isomorphic = false;
  // images of f1's generators inside f2, when isomorphic
  std::vector<FqfElement> images;
};

// Group isomorphism preserving q (hence b), found by backtracking over
// generator images after splitting into p-primary orthogonal parts.
// Group order budget: 3^10.
FqfIsomorphism fqf_isomorphic(const FiniteQuadraticForm& f1,
                              const FiniteQuadraticForm& f2);

// p-primary part, with bookkeeping to map part elements back to the ambient
// group: part generator i is multipliers[i] * (ambient generator indices[i]).
struct PrimaryPart {
  FiniteQuadraticForm form;
  std::vector<std::size_t> indices;
  std::vector<Int> multipliers;
};
PrimaryPart primary_part(const FiniteQuadraticForm& f, const Int& p);

// q -> n*q, b -> n*b for n coprime to the group order.
FiniteQuadraticForm scale_form(const FiniteQuadraticForm& f, const Int& n);

}  // namespace k3cusps
