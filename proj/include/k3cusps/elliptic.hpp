#pragma once

#include <string>
#include <vector>

#include "k3cusps/exact.hpp"
#include "k3cusps/lattice.hpp"

namespace k3cusps {

enum class FiberType { In, InStar, II, III, IV, IIStar, IIIStar, IVStar };

struct Fiber {
  FiberType type = FiberType::In;
  int n = 0;  // the index of I_n / I_n*; ignored for the additive types
};

Fiber fiber_from_name(const std::string& name, int n = 0);
std::string fiber_name(const Fiber& f);

// Singular fibers of an elliptic fibration; for a K3 the Euler numbers must
// total 24 (surfaced by euler_number, not enforced at construction).
struct FiberConfiguration {
  std::vector<Fiber> fibers;
};

int euler_number(const Fiber& f);
int euler_number(const FiberConfiguration& config);

// U plus one negative definite root lattice per fiber:
// I_n -> A_{n-1}, I_n* -> D_{n+4}, III -> A1, IV -> A2, IV* -> E6,
// III* -> E7, II* -> E8; II and I_1/I_0 contribute nothing.
struct TrivialLatticeResult {
  Lattice lattice;
  int euler = 0;
};
TrivialLatticeResult trivial_lattice(const FiberConfiguration& config);

// Local height contribution of the fiber component met by a section.
// Component indexing: 0 is the identity component everywhere; I_n takes
// i in 0..n-1 cyclically (contribution i(n-i)/n); I_n* takes 1 = near
// (contribution 1) and 2,3 = far (1 + n/4); IV* takes 1,2 (4/3); III* takes
// 1 (3/2); III takes 1 (1/2); IV takes 1,2 (2/3); II and II* only 0.
Rat local_contribution(const Fiber& f, int component);

struct SectionData {
  int p_o = 0;                  // intersection number with the zero section
  std::vector<int> components;  // one component index per fiber
};

struct HeightResult {
  Rat height;
  bool nonpositive = false;  // surfaced as a warning, not an error
};

// h(P) = 4 + 2 (P.O) - sum of local contributions  (chi = 2 for a K3).
HeightResult section_height(const FiberConfiguration& config,
                            const SectionData& section);

// det NS = det(trivial lattice) * (-1)^r * det(height Gram) / torsion^2,
// where r is the Mordell-Weil rank; the sign accounts for the height
// pairing sitting inside NS negated.
Rat shioda_tate_disc(const FiberConfiguration& config,
                     const std::vector<std::vector<Rat>>& height_gram,
                     const Int& torsion_order);

// Nonzero isotropic classes in the discriminant form, and hence whether any
// proper even overlattice exists. Budget: |det| <= 10^4.
struct OverlatticeScan {
  long long nonzero_isotropic_count = 0;
  bool proper_even_overlattice_exists = false;
};
OverlatticeScan ns_overlattice_scan(const Lattice& l);

}  // namespace k3cusps
