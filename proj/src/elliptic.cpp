#include "k3cusps/elliptic.hpp"

#include <algorithm>

#include "k3cusps/fqf.hpp"

namespace k3cusps {

Fiber fiber_from_name(const std::string& name, int n) {
  if (name == "I") {
    if (n < 0) throw Error("BadShape", "I_n needs n >= 0");
    return {FiberType::In, n};
  }
  if (name == "I*") {
    if (n < 0) throw Error("BadShape", "I_n* needs n >= 0");
    return {FiberType::InStar, n};
  }
  if (name == "II") return {FiberType::II, 0};
  if (name == "III") return {FiberType::III, 0};
  if (name == "IV") return {FiberType::IV, 0};
  if (name == "II*") return {FiberType::IIStar, 0};
  if (name == "III*") return {FiberType::IIIStar, 0};
  if (name == "IV*") return {FiberType::IVStar, 0};
  throw Error("BadShape", "unknown fiber type: " + name);
}

std::string fiber_name(const Fiber& f) {
  switch (f.type) {
    case FiberType::In:
      return "I" + std::to_string(f.n);
    case FiberType::InStar:
      return "I" + std::to_string(f.n) + "*";
    case FiberType::II:
      return "II";
    case FiberType::III:
      return "III";
    case FiberType::IV:
      return "IV";
    case FiberType::IIStar:
      return "II*";
    case FiberType::IIIStar:
      return "III*";
    case FiberType::IVStar:
      return "IV*";
  }
  return "?";
}

int euler_number(const Fiber& f) {
  switch (f.type) {
    case FiberType::In:
      return f.n;
    case FiberType::InStar:
      return f.n + 6;
    case FiberType::II:
      return 2;
    case FiberType::III:
      return 3;
    case FiberType::IV:
      return 4;
    case FiberType::IVStar:
      return 8;
    case FiberType::IIIStar:
      return 9;
    case FiberType::IIStar:
      return 10;
  }
  return 0;
}

int euler_number(const FiberConfiguration& config) {
  int total = 0;
  for (const Fiber& f : config.fibers) total += euler_number(f);
  return total;
}

TrivialLatticeResult trivial_lattice(const FiberConfiguration& config) {
  std::vector<Lattice> parts{standard_lattice("U", 1)};
  for (const Fiber& f : config.fibers) {
    switch (f.type) {
      case FiberType::In:
        if (f.n >= 2)
          parts.push_back(standard_lattice("A" + std::to_string(f.n - 1), -1));
        break;
      case FiberType::InStar:
        parts.push_back(standard_lattice("D" + std::to_string(f.n + 4), -1));
        break;
      case FiberType::II:
        break;
      case FiberType::III:
        parts.push_back(standard_lattice("A1", -1));
        break;
      case FiberType::IV:
        parts.push_back(standard_lattice("A2", -1));
        break;
      case FiberType::IVStar:
        parts.push_back(standard_lattice("E6", -1));
        break;
      case FiberType::IIIStar:
        parts.push_back(standard_lattice("E7", -1));
        break;
      case FiberType::IIStar:
        parts.push_back(standard_lattice("E8", -1));
        break;
    }
  }
  return {direct_sum(parts), euler_number(config)};
}

Rat local_contribution(const Fiber& f, int component) {
  if (component == 0) return Rat(0);  // identity component everywhere
  switch (f.type) {
    case FiberType::In:
      if (component >= 1 && component < f.n)
        return Rat(Int(component) * Int(f.n - component), Int(f.n));
      break;
    case FiberType::InStar:
      if (component == 1) return Rat(1);
      if (component == 2 || component == 3) return Rat(1) + Rat(f.n, 4);
      break;
    case FiberType::III:
      if (component == 1) return Rat(1, 2);
      break;
    case FiberType::IV:
      if (component == 1 || component == 2) return Rat(2, 3);
      break;
    case FiberType::IVStar:
      if (component == 1 || component == 2) return Rat(4, 3);
      break;
    case FiberType::IIIStar:
      if (component == 1) return Rat(3, 2);
      break;
    case FiberType::II:
    case FiberType::IIStar:
      break;  // only the identity component is simple
  }
  throw Error("InvalidComponent", "fiber " + fiber_name(f) +
                                      " has no section component " +
                                      std::to_string(component));
}

HeightResult section_height(const FiberConfiguration& config,
                            const SectionData& section) {
  if (section.components.size() != config.fibers.size())
    throw Error("BadShape", "one component index per fiber required");
  if (section.p_o < 0) throw Error("BadShape", "P.O must be >= 0");
  Rat h = Rat(4) + Rat(2 * section.p_o);
  for (std::size_t i = 0; i < config.fibers.size(); ++i)
    h -= local_contribution(config.fibers[i], section.components[i]);
  return {h, h <= 0};
}

Rat shioda_tate_disc(const FiberConfiguration& config,
                     const std::vector<std::vector<Rat>>& height_gram,
                     const Int& torsion_order) {
  if (torsion_order < 1) throw Error("BadShape", "torsion order must be >= 1");
  std::size_t r = height_gram.size();
  RatMatrix h(r, r);
  for (std::size_t i = 0; i < r; ++i) {
    if (height_gram[i].size() != r)
      throw Error("BadShape", "height Gram must be square");
    for (std::size_t j = 0; j < r; ++j) h(i, j) = height_gram[i][j];
  }
  TrivialLatticeResult triv = trivial_lattice(config);
  Rat det_t = Rat(determinant(triv.lattice.gram));
  Rat det_h = h.det();
  Rat sign = (r % 2 == 0) ? Rat(1) : Rat(-1);
  return det_t * sign * det_h / (Rat(torsion_order) * Rat(torsion_order));
}

OverlatticeScan ns_overlattice_scan(const Lattice& l) {
  Int det = determinant(l.gram);
  if (det == 0) throw Error("Degenerate", "scan needs a nondegenerate lattice");
  if (abs(det) > 10000)
    throw Error("BudgetExceeded", "scan budget is |det| <= 10^4");
  FiniteQuadraticForm f = disc_form(l);
  OverlatticeScan scan;
  for (const FqfElement& x : f.all_elements()) {
    bool zero = std::all_of(x.begin(), x.end(),
                            [](const Int& c) { return c == 0; });
    if (zero) continue;
    if (f.eval_q(x) == 0) ++scan.nonzero_isotropic_count;
  }
  // a proper even overlattice is exactly an extension along a nontrivial
  // isotropic subgroup, which exists iff some nonzero isotropic class does
  scan.proper_even_overlattice_exists = scan.nonzero_isotropic_count > 0;
  return scan;
}

}  // namespace k3cusps
