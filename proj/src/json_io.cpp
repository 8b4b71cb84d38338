#include "k3cusps/json_io.hpp"

#include <fstream>
#include <sstream>

namespace k3cusps {

Json int_to_json(const Int& v) {
  static const Int kMax = Int(std::numeric_limits<std::int64_t>::max());
  static const Int kMin = Int(std::numeric_limits<std::int64_t>::min());
  if (v <= kMax && v >= kMin) return Json(std::int64_t(v));
  return Json(v.str());
}

Json rat_to_json(const Rat& v) { return Json(rat_to_string(v)); }

Json matrix_to_json(const IntMatrix& m) {
  Json rows = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Json row = Json::array();
    for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(int_to_json(m(i, j)));
    rows.push_back(std::move(row));
  }
  return rows;
}

IntMatrix matrix_from_json(const Json& j) {
  if (!j.is_array()) throw Error("ParseError", "gram must be an array of rows");
  std::size_t rows = j.size();
  std::size_t cols = rows == 0 ? 0 : j.at(0).size();
  IntMatrix m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    const Json& row = j.at(i);
    if (!row.is_array() || row.size() != cols)
      throw Error("ParseError", "gram rows must have equal length");
    for (std::size_t c = 0; c < cols; ++c) {
      const Json& v = row.at(c);
      if (v.is_number_integer())
        m(i, c) = Int(v.get<std::int64_t>());
      else if (v.is_string())
        m(i, c) = Int(v.get<std::string>());
      else
        throw Error("ParseError", "gram entries must be integers");
    }
  }
  return m;
}

Json lattice_to_json(const Lattice& l) {
  return Json{{"name", l.label}, {"gram", matrix_to_json(l.gram)}};
}

Lattice lattice_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("gram"))
    throw Error("ParseError", "lattice JSON needs a \"gram\" field");
  IntMatrix gram = matrix_from_json(j.at("gram"));
  if (!gram.is_symmetric())
    throw Error("ParseError", "gram matrix is not symmetric");
  std::string name = j.value("name", std::string{});
  return make_lattice(std::move(gram), std::move(name));
}

Json invariants_to_json(const LatticeInvariants& inv) {
  return Json{{"rank", inv.rank},
              {"signature", Json::array({inv.sig.positive, inv.sig.negative})},
              {"kernel_rank", inv.sig.zero},
              {"det", int_to_json(inv.det)},
              {"even", inv.even}};
}

Json fqf_to_json(const FiniteQuadraticForm& f) {
  Json orders = Json::array(), q = Json::array(), b = Json::array();
  for (const Int& d : f.orders) orders.push_back(int_to_json(d));
  for (const Rat& v : f.q) q.push_back(rat_to_json(v));
  for (const auto& row : f.b) {
    Json jrow = Json::array();
    for (const Rat& v : row) jrow.push_back(rat_to_json(v));
    b.push_back(std::move(jrow));
  }
  return Json{{"orders", orders}, {"q", q}, {"b", b}};
}

Json verdict_to_json(const GlueVerdict& v) {
  Json out{{"feasible", v.feasible},
           {"obstruction", obstruction_name(v.obstruction)},
           {"details", v.details}};
  if (!v.witness.empty()) {
    Json images = Json::array();
    for (const FqfElement& x : v.witness) {
      Json img = Json::array();
      for (const Int& c : x) img.push_back(int_to_json(c));
      images.push_back(std::move(img));
    }
    out["witness"] = std::move(images);
  }
  return out;
}

Json code_to_json(const TernaryCode& c) {
  Json gens = Json::array();
  for (const auto& row : c.generator_digits()) gens.push_back(row);
  return Json{{"dim", c.dim()}, {"length", c.length}, {"generators", gens}};
}

TernaryCode code_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("generators"))
    throw Error("ParseError", "code JSON needs a \"generators\" field");
  int length = j.value("length", 9);
  std::vector<std::vector<int>> rows;
  for (const Json& row : j.at("generators")) {
    std::vector<int> digits;
    for (const Json& v : row) {
      int d = v.get<int>();
      if (d < 0 || d > 2)
        throw Error("ParseError", "code digits must be 0, 1 or 2");
      digits.push_back(d);
    }
    rows.push_back(std::move(digits));
  }
  return code_from_digits(length, rows);
}

Json fiber_config_to_json(const FiberConfiguration& config) {
  Json fibers = Json::array();
  for (const Fiber& f : config.fibers) {
    Json jf{{"type", std::string(1, 'I')}};
    switch (f.type) {
      case FiberType::In:
        jf = Json{{"type", "I"}, {"n", f.n}};
        break;
      case FiberType::InStar:
        jf = Json{{"type", "I*"}, {"n", f.n}};
        break;
      default:
        jf = Json{{"type", fiber_name(f)}};
    }
    fibers.push_back(std::move(jf));
  }
  return Json{{"fibers", fibers}};
}

FiberConfiguration fiber_config_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("fibers"))
    throw Error("ParseError", "fiber configuration needs a \"fibers\" array");
  FiberConfiguration config;
  for (const Json& jf : j.at("fibers")) {
    std::string type = jf.at("type").get<std::string>();
    int n = jf.value("n", 0);
    config.fibers.push_back(fiber_from_name(type, n));
  }
  return config;
}

SectionData section_from_json(const Json& j) {
  if (!j.is_object() || !j.contains("components"))
    throw Error("ParseError", "section JSON needs a \"components\" array");
  SectionData s;
  s.p_o = j.value("p_o", 0);
  for (const Json& v : j.at("components")) s.components.push_back(v.get<int>());
  return s;
}

Json endo_row_to_json(const EndoTypeRow& row) {
  return Json{{"type", row.type},
              {"e", row.e},
              {"e0", row.e0},
              {"d", row.d},
              {"eta", rat_to_json(row.eta)},
              {"dimD", row.dim_d},
              {"rho", row.rho},
              {"char_p_condition", row.char_p_condition},
              {"admissible", row.admissible},
              {"reason", row.reason}};
}

Catalog default_catalog() {
  Catalog cat;
  auto put = [&](const std::string& name, Lattice l) {
    l.label = name;
    cat.entries.emplace(name, std::move(l));
  };
  put("A2+", standard_lattice("A2", 1));
  put("A2-", standard_lattice("A2", -1));
  put("E6+", standard_lattice("E6", 1));
  put("E6-", standard_lattice("E6", -1));
  put("E8+", standard_lattice("E8", 1));
  put("E8-", standard_lattice("E8", -1));
  put("U", standard_lattice("U", 1));
  put("U(3)", rescale(standard_lattice("U", 1), 3));
  put("A4-", standard_lattice("A4", -1));
  put("A1-", standard_lattice("A1", -1));
  put("D5-", standard_lattice("D5", -1));
  // complement of L in the even unimodular (3,19) lattice, signature (3,1)
  put("M", direct_sum({rescale(standard_lattice("U", 1), 3),
                       standard_lattice("A2", 1)}));
  // the even hyperbolic N = M(-1), rank 4, determinant -27
  put("N", direct_sum({rescale(standard_lattice("U", 1), 3),
                       standard_lattice("A2", -1)}));
  put("N0", direct_sum({standard_lattice("U", 1), standard_lattice("E6", -1),
                        standard_lattice("E6", -1), standard_lattice("A4", -1),
                        standard_lattice("A1", -1)}));
  put("LK3", direct_sum({standard_lattice("U", 1), standard_lattice("U", 1),
                         standard_lattice("U", 1), standard_lattice("E8", -1),
                         standard_lattice("E8", -1)}));
  put("A2^9-", a2_nine());
  return cat;
}

namespace {

std::pair<int, int> line_col_of_offset(const std::string& text,
                                       std::size_t offset) {
  int line = 1, col = 1;
  for (std::size_t i = 0; i < offset && i < text.size(); ++i) {
    if (text[i] == '\n') {
      ++line;
      col = 1;
    } else {
      ++col;
    }
  }
  return {line, col};
}

}  // namespace

Catalog load_catalog(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("FileError", "cannot open catalog: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  std::string text = buf.str();
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    auto [line, col] = line_col_of_offset(text, e.byte);
    throw Error("ParseError", path + ":" + std::to_string(line) + ":" +
                                  std::to_string(col) + ": " + e.what());
  }
  if (!doc.is_array())
    throw Error("ParseError", "catalog must be an array of lattices");
  Catalog cat;
  for (const Json& entry : doc) {
    Lattice l = lattice_from_json(entry);
    if (l.label.empty())
      throw Error("ParseError", "catalog entries need a \"name\"");
    if (!cat.entries.emplace(l.label, l).second)
      throw Error("ParseError", "duplicate catalog name: " + l.label);
  }
  return cat;
}

Lattice resolve_lattice(const Catalog& catalog, const std::string& ref) {
  auto it = catalog.entries.find(ref);
  if (it != catalog.entries.end()) return it->second;
  std::ifstream in(ref);
  if (!in)
    throw Error("UnknownName",
                "not a catalog name and not a readable file: " + ref);
  std::stringstream buf;
  buf << in.rdbuf();
  std::string text = buf.str();
  try {
    return lattice_from_json(Json::parse(text));
  } catch (const Json::parse_error& e) {
    auto [line, col] = line_col_of_offset(text, e.byte);
    throw Error("ParseError", ref + ":" + std::to_string(line) + ":" +
                                  std::to_string(col) + ": " + e.what());
  }
}

}  // namespace k3cusps
