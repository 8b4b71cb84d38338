#pragma once

#include <map>
#include <string>

#include "json.hpp"

#include "k3cusps/codes.hpp"
#include "k3cusps/elliptic.hpp"
#include "k3cusps/exact.hpp"
#include "k3cusps/fqf.hpp"
#include "k3cusps/glue.hpp"
#include "k3cusps/lattice.hpp"
#include "k3cusps/traces.hpp"

namespace k3cusps {

// nlohmann::json keeps object keys sorted, which is exactly the canonical
// report ordering the CLI promises.
using Json = nlohmann::json;

// integers as JSON numbers when they fit in 64 bits, decimal strings beyond
Json int_to_json(const Int& v);
// rationals always as "a/b" strings; no floating point in any report
Json rat_to_json(const Rat& v);

Json matrix_to_json(const IntMatrix& m);
IntMatrix matrix_from_json(const Json& j);

Json lattice_to_json(const Lattice& l);
Lattice lattice_from_json(const Json& j);

Json invariants_to_json(const LatticeInvariants& inv);
Json fqf_to_json(const FiniteQuadraticForm& f);
Json verdict_to_json(const GlueVerdict& v);

Json code_to_json(const TernaryCode& c);
TernaryCode code_from_json(const Json& j);

Json fiber_config_to_json(const FiberConfiguration& config);
FiberConfiguration fiber_config_from_json(const Json& j);
SectionData section_from_json(const Json& j);

Json endo_row_to_json(const EndoTypeRow& row);

// Named lattice table for the CLI. The default catalog is built in; a JSON
// file (array of {"name": ..., "gram": [[...]]}) can replace it.
struct Catalog {
  std::map<std::string, Lattice> entries;
};

Catalog default_catalog();
Catalog load_catalog(const std::string& path);  // ParseError carries line/col

// A catalog name, or a path to a lattice JSON file.
Lattice resolve_lattice(const Catalog& catalog, const std::string& ref);

}  // namespace k3cusps
