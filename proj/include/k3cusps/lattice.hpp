#pragma once

#include <optional>
#include <string>
#include <vector>

#include "k3cusps/exact.hpp"

namespace k3cusps {

// Even integral lattice, carried by its Gram matrix. Values are immutable
// after construction; all operations below are pure.
struct Lattice {
  IntMatrix gram;
  std::string label;

  std::size_t rank() const { return gram.rows(); }
};

Lattice make_lattice(IntMatrix gram, std::string label = "");

// Catalog: A_n, D_n (n >= 4), E6, E7, E8 (Cartan matrices scaled by sign),
// U (hyperbolic plane, sign ignored), and rank-1 <n>. Root lattices with
// sign -1 carry the (-2)-curve convention used inside Neron-Severi groups.
Lattice standard_lattice(const std::string& name, int sign);

Lattice direct_sum(const std::vector<Lattice>& summands);

Lattice rescale(const Lattice& l, const Int& n);

// Divide every Gram entry by p; the p-divisible case of scaling by 1/p.
Lattice scale_down(const Lattice& l, const Int& p);

// L^v(n): Gram = n * gram^-1, which must be integral.
Lattice dual_rescaled(const Lattice& l, const Int& n);

struct LatticeInvariants {
  std::size_t rank = 0;
  MatSignature sig;
  Int det;
  bool even = false;
};
LatticeInvariants invariants(const Lattice& l);

bool is_even(const Lattice& l);

struct ShortVector {
  std::vector<Int> coords;
  Int norm;
};

// All v != 0 with |v.v| <= bound in a definite lattice, one representative
// per +-pair (first nonzero coordinate positive), lexicographically sorted.
// Exact rational Cholesky plus bounded tree search; no floating point.
std::vector<ShortVector> short_vectors(const Lattice& l, const Int& bound);

struct IsometryWitness {
  bool isometric = false;
  // columns are the images of the first lattice's basis in the second
  IntMatrix map;
};

// Backtracking isometry test for definite lattices of rank <= 6.
IsometryWitness isometric_definite(const Lattice& l1, const Lattice& l2);

// The working criterion for indefinite identifications: equal rank, equal
// signature, isomorphic discriminant forms. Both lattices must be even and
// nondegenerate.
bool genus_equal(const Lattice& l1, const Lattice& l2);

}  // namespace k3cusps
