#pragma once

// Independent reference implementations used to cross-check the main
// algorithms. Everything here favors the most transparent method available
// (exhaustion, cofactor expansion, congruence diagonalization) over speed and
// deliberately avoids the code paths it is checking.

#include <vector>

#include "k3cusps/exact.hpp"

namespace k3cusps::oracles {

// Sum over all permutations; n <= 9 or it will not finish in sensible time.
Int determinant_leibniz(const IntMatrix& m);

// Hardcoded E8 Cartan matrix, typed in from the Dynkin diagram here rather
// than taken from the lattice catalog it is used to check.
IntMatrix e8_gram();

// Sylvester criterion: all leading principal minors positive.
bool positive_definite_by_minors(const IntMatrix& gram);

// Symmetric congruence diagonalization over Q; counts diagonal signs.
MatSignature signature_by_congruence(const IntMatrix& gram);

// Columns of a and b generate the same Z-lattice, decided by brute-force
// search over integer coefficient vectors in [-coeff_bound, coeff_bound];
// only meaningful for the small inputs the tests feed it.
bool spans_same_lattice(const IntMatrix& a, const IntMatrix& b,
                        int coeff_bound = 12);

// All nonzero vectors v (one per +-pair, first nonzero coordinate positive,
// lexicographically sorted) with |v^T G v| <= bound, found by scanning an
// explicit coordinate box derived from the dual Gram diagonal.
struct BoxVector {
  std::vector<Int> coords;
  Int norm;
};
std::vector<BoxVector> box_short_vectors(const IntMatrix& gram, const Int& bound);

// Explicit enumeration of the discriminant group G^-1 Z^n / Z^n of a
// nondegenerate even Gram matrix: group order plus the sorted multiset of
// q-values (mod 2Z) over all elements. Only suitable for small determinants.
struct BruteDiscForm {
  Int order;
  std::vector<Rat> q_values;  // sorted, one per group element (0 included)
};
BruteDiscForm brute_disc_form(const IntMatrix& gram);

}  // namespace k3cusps::oracles
