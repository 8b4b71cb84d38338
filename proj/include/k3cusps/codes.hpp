#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <set>
#include <vector>

#include "k3cusps/exact.hpp"
#include "k3cusps/lattice.hpp"

namespace k3cusps {

// Word over F_3 of length <= 16, bitsliced: bit i of m1 / m2 set when the
// i-th trit is 1 / 2. Addition is a handful of bitwise ops, weight is a
// popcount; the code search lives on these.
struct F3Word {
  std::uint16_t m1 = 0, m2 = 0;

  int get(int i) const {
    return ((m1 >> i) & 1) ? 1 : ((m2 >> i) & 1) ? 2 : 0;
  }
  void set(int i, int trit);

  F3Word add(const F3Word& o) const;
  F3Word negated() const { return F3Word{m2, m1}; }
  F3Word scaled(int trit) const;
  int weight() const;
  bool is_zero() const { return m1 == 0 && m2 == 0; }

  bool operator==(const F3Word&) const = default;

  std::vector<int> digits(int length) const;
  static F3Word from_digits(const std::vector<int>& d);
  // digit-lexicographic key (coordinate 0 most significant)
  std::uint32_t lex_key(int length) const;
};

// Linear code in F_3^length, stored as the canonical reduced row echelon
// generator matrix (rows with ascending pivots).
struct TernaryCode {
  int length = 9;
  std::vector<F3Word> rows;

  std::size_t dim() const { return rows.size(); }
  bool contains(F3Word w) const;
  std::vector<F3Word> all_words() const;  // 3^dim words, zero included
  std::vector<std::vector<int>> generator_digits() const;
};

TernaryCode make_code(int length, const std::vector<F3Word>& generators);
TernaryCode code_from_digits(int length,
                             const std::vector<std::vector<int>>& rows);

bool operator==(const TernaryCode& a, const TernaryCode& b);
bool code_less(const TernaryCode& a, const TernaryCode& b);

std::map<int, long long> weight_enumerator(const TernaryCode& c);

// Every dim-k code in F_3^length whose nonzero words all have weight in
// `allowed`, as monomial-equivalence class representatives (lex-least RREF
// found per class), canonically ordered. Budget: k <= 4.
std::vector<TernaryCode> search_codes(int length, std::size_t k,
                                      const std::set<int>& allowed);

// Equivalence under coordinate permutations and per-coordinate sign flips,
// i.e. permuting the nine cusps and exchanging the two curves of a cusp.
struct MonomialWitness {
  bool equivalent = false;
  std::vector<int> perm;   // coordinate i of c1 maps to perm[i] of c2
  std::vector<int> sign;   // multiplier 1 or 2 applied to coordinate i
};
MonomialWitness monomial_equivalent(const TernaryCode& c1,
                                    const TernaryCode& c2);

Lattice a2_nine();  // A2(-1)^9, the nine-cusp root lattice

// Overlattice of A2(-1)^9 glued along the code, using the dual generator
// d_i = (C_i + 2 C_i')/3 per block. Requires every word weight = 0 mod 3.
// curve_basis carries the A2(-1)^9 basis in the overlattice's coordinates.
struct CodeLatticeResult {
  Lattice lattice;
  IntMatrix curve_basis;
};
CodeLatticeResult code_to_overlattice(const TernaryCode& c);

// Count the norm -2 vectors of a negative definite lattice (one per +-pair)
// and how many fall outside the given sublattice.
struct RootCount {
  long long total_pairs = 0;
  long long outside_pairs = 0;
};
RootCount verify_no_extra_roots(const Lattice& l,
                                const IntMatrix& sublattice_basis);

// The distinguished class v = (1/3) sum_i (C_i + 2 C_i') attached to a
// full-weight codeword, with curve labels swapped per block as needed so
// that v.C_i = 0 and v.C_i' = -1 throughout; v.v = -6.
struct GlueClass {
  std::vector<Int> dual_coords;    // the codeword, in dual-generator coords
  std::vector<Rat> curve_coords;   // 18 rationals over the curve basis
  Rat norm;
  std::vector<bool> swapped;       // blocks where C_i and C_i' were exchanged
};
GlueClass triple_cover_class(const TernaryCode& c);

}  // namespace k3cusps
