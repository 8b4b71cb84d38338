#pragma once

#include <string>
#include <vector>

#include "k3cusps/fqf.hpp"
#include "k3cusps/lattice.hpp"

namespace k3cusps {

enum class Obstruction { None, LengthBound, FormMismatch };

std::string obstruction_name(Obstruction o);

// Outcome of a gluing / embedding feasibility check. feasible means no
// obstruction was detected by the checks this module implements.
struct GlueVerdict {
  bool feasible = false;
  Obstruction obstruction = Obstruction::None;
  std::string details;
  // generator images of the witnessing form isomorphism, when one exists
  std::vector<FqfElement> witness;
  MatSignature glued_signature;  // populated by glues_to_unimodular
};

// The finite-index extension of L determined by an isotropic subgroup H of
// its discriminant form: L subset L_H subset L^v with [L_H : L] = |H| and
// det(L_H) = det(L) / |H|^2. Gram is returned together with the basis of L
// inside L_H (columns), which downstream root bookkeeping needs.
struct OverlatticeResult {
  Lattice lattice;
  IntMatrix sublattice_basis;
};
OverlatticeResult overlattice(const Lattice& l, const Subgroup& h);

// Gluing L1 + L2 to an even unimodular lattice is possible exactly when
// q(L1) and -q(L2) are isomorphic.
GlueVerdict glues_to_unimodular(const Lattice& l1, const Lattice& l2);

// Ambient lattice described by invariants only: rank, signature and an
// elementary discriminant group  prod (Z/p)^length.
struct AmbientSpec {
  std::size_t rank = 0;
  MatSignature sig;
  std::vector<std::pair<Int, std::size_t>> elementary;  // (p, length)

  static AmbientSpec k3_unimodular();                     // rank 22, (3,19)
  static AmbientSpec supersingular(const Int& p, std::size_t sigma);
};

// Length obstructions against a primitive embedding of L into the ambient
// lattice, in the coprime-discriminant setting: both the ambient discriminant
// group and A_L must fit into the discriminant group of the rank
// rank(ambient) - rank(L) orthogonal complement.
GlueVerdict embedding_obstruction(const Lattice& l, const AmbientSpec& ambient);

// Decision procedure for a supersingular K3 with nine cusps in
// characteristic p: Artin invariant sigma >= 3 dies by the length bound;
// sigma = 2 reduces to comparing q_L with -(p * q_N) for N = U(3) + A2,
// which succeeds exactly when p = -1 mod 3; sigma = 1 is unobstructed.
GlueVerdict theorem2_pipeline(const Int& p, std::size_t sigma);

}  // namespace k3cusps
