#pragma once

#include <string>
#include <vector>

#include "k3cusps/exact.hpp"

namespace k3cusps {

// a + b*omega with omega a primitive cube root of unity, omega^2 = -1 - omega.
struct Eisenstein {
  Int a, b;

  Eisenstein(Int a_ = 0, Int b_ = 0) : a(std::move(a_)), b(std::move(b_)) {}

  Eisenstein operator+(const Eisenstein& o) const { return {a + o.a, b + o.b}; }
  Eisenstein operator-(const Eisenstein& o) const { return {a - o.a, b - o.b}; }
  Eisenstein operator*(const Eisenstein& o) const {
    // (a + b w)(c + d w) = ac - bd + (ad + bc - bd) w
    return {a * o.a - b * o.b, a * o.b + b * o.a - b * o.b};
  }
  bool operator==(const Eisenstein&) const = default;
  bool is_rational() const { return b == 0; }
  std::string to_string() const;
};

// Multiset over {1, omega, omega^2}; the only eigenvalues an order-3 action
// can have, its minimal polynomial dividing (x - 1)(x^2 + x + 1).
struct EigenvalueMultiset {
  long long ones = 0, omegas = 0, omega2s = 0;

  long long size() const { return ones + omegas + omega2s; }
  Eisenstein trace() const;
  bool operator==(const EigenvalueMultiset&) const = default;
};

// Pairwise products over distinct positions: the degree-2 exterior power of
// a size-4 eigenvalue multiset, of size 6.
EigenvalueMultiset exterior_square(const EigenvalueMultiset& h1);

// Alternating sum 1 - tr H^1 + tr H^2 - tr H^3 + 1 with H^3 = H^1 and
// H^2 = wedge^2 H^1; must land in Z, and equals the fixed point count.
Int lefschetz_number(const EigenvalueMultiset& h1);

// Multiplicity of the eigenvalue 1.
long long invariant_dimension(const EigenvalueMultiset& eigs);

// One row of the endomorphism-algebra table for simple abelian surfaces:
// e = [K:Q], e0 = [K0:Q], d^2 = [D:K], eta = dim S / dim D, rho = eta*dimD.
struct EndoTypeRow {
  std::string type;
  int e = 0, e0 = 0, d = 0;
  Rat eta;
  int dim_d = 0;
  int rho = 0;
  std::string char_p_condition;  // recorded from the source table, unused
  bool admissible = false;
  std::string reason;
};

// The eight-row table annotated with which rows survive at the given p-rank:
// dim_Qp(D (x) Qp) can be at most p_rank^2 = dim End(T_p (x) Qp), and the
// commutative type (IV-iii) cannot match the non-commutative M_2(Q_p).
std::vector<EndoTypeRow> mumford_filter(int p_rank);

int max_admissible_rho(const std::vector<EndoTypeRow>& table);

}  // namespace k3cusps
