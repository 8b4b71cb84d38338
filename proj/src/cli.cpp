#include "k3cusps/cli.hpp"

#include <chrono>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "CLI11.hpp"

#include "k3cusps/json_io.hpp"
#include "k3cusps/oracles.hpp"
#include "k3cusps/reproduce.hpp"

namespace k3cusps {

namespace {

struct Report {
  std::string command;
  Json inputs = Json::object();
  Json result = Json::object();
  Json witnesses = Json::object();
  std::string paper_anchor;
};

// JSON reports are canonical and byte-stable across reruns, so the elapsed
// time only appears in the text rendering.
std::string render(const Report& r, const std::string& format,
                   long long elapsed_ms) {
  if (format == "json") {
    Json j{{"command", r.command},
           {"inputs", r.inputs},
           {"result", r.result},
           {"witnesses", r.witnesses},
           {"paper_anchor", r.paper_anchor}};
    return j.dump(2) + "\n";
  }
  std::ostringstream os;
  os << "# " << r.command << "\n";
  if (!r.paper_anchor.empty()) os << "claim: \"" << r.paper_anchor << "\"\n";
  os << "inputs: " << r.inputs.dump() << "\n";
  os << "result: " << r.result.dump(2) << "\n";
  if (!r.witnesses.empty()) os << "witnesses: " << r.witnesses.dump() << "\n";
  os << "elapsed_ms: " << elapsed_ms << "\n";
  return os.str();
}

std::string render_reproduce_text(const std::vector<CriterionResult>& results,
                                  long long elapsed_ms) {
  std::ostringstream os;
  int passed = 0;
  for (const CriterionResult& r : results) {
    os << (r.pass ? "PASS" : "FAIL") << "  " << r.id << "  " << r.name << "  ["
       << r.anchor << "]  (" << r.elapsed_ms << " ms)\n";
    passed += r.pass;
  }
  os << (passed == int(results.size()) ? "PASS " : "FAIL ") << passed << "/"
     << results.size() << "\n";
  os << "elapsed_ms: " << elapsed_ms << "\n";
  return os.str();
}

Json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error("FileError", "cannot open file: " + path);
  std::stringstream buf;
  buf << in.rdbuf();
  std::string text = buf.str();
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    int line = 1, col = 1;
    for (std::size_t i = 0; i < e.byte && i < text.size(); ++i) {
      if (text[i] == '\n') {
        ++line;
        col = 1;
      } else {
        ++col;
      }
    }
    throw Error("ParseError", path + ":" + std::to_string(line) + ":" +
                                  std::to_string(col) + ": " + e.what());
  }
}

Catalog active_catalog() {
  if (const char* env = std::getenv("K3CUSPS_CATALOG"))
    return load_catalog(env);
  return default_catalog();
}

// "22,1:21,7^4" or "22,3:19,trivial"; form factors joined by '*'
AmbientSpec parse_ambient(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) parts.push_back(item);
  if (parts.size() != 3)
    throw Error("ParseError",
                "ambient spec is rank,sig+:sig-,form (e.g. 22,1:21,7^4)");
  AmbientSpec spec;
  try {
    spec.rank = std::stoul(parts[0]);
    auto colon = parts[1].find(':');
    if (colon == std::string::npos) throw std::invalid_argument("sig");
    spec.sig.positive = std::stoul(parts[1].substr(0, colon));
    spec.sig.negative = std::stoul(parts[1].substr(colon + 1));
    if (parts[2] != "trivial") {
      std::stringstream fs(parts[2]);
      std::string factor;
      while (std::getline(fs, factor, '*')) {
        auto caret = factor.find('^');
        Int p(caret == std::string::npos ? factor : factor.substr(0, caret));
        std::size_t len =
            caret == std::string::npos ? 1 : std::stoul(factor.substr(caret + 1));
        spec.elementary.emplace_back(p, len);
      }
    }
  } catch (const Error&) {
    throw;
  } catch (const std::exception&) {
    throw Error("ParseError", "cannot parse ambient spec: " + text);
  }
  return spec;
}

EigenvalueMultiset parse_eigs(const std::string& text) {
  EigenvalueMultiset e;
  std::stringstream ss(text);
  std::string tok;
  while (std::getline(ss, tok, ',')) {
    if (tok == "1")
      ++e.ones;
    else if (tok == "w" || tok == "omega")
      ++e.omegas;
    else if (tok == "w2" || tok == "omega2")
      ++e.omega2s;
    else
      throw Error("ParseError", "eigenvalue tokens are 1, w, w2: got " + tok);
  }
  return e;
}

}  // namespace

CommandResult run_command(const std::vector<std::string>& args) {
  std::string format = "json";
  Report report;
  std::vector<CriterionResult> reproduce_results;
  bool reproduce_mode = false;

  CLI::App app{"exact lattice arithmetic for K3 surfaces with 9 cusps"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--format", format, "output format")
      ->check(CLI::IsMember({"json", "text"}))
      ->capture_default_str();

  // lattice
  auto* lattice_cmd = app.add_subcommand("lattice", "lattice computations");
  lattice_cmd->require_subcommand(1);
  lattice_cmd->fallthrough();
  std::string lat_ref;
  bool lat_neg = false;
  auto* lat_inv = lattice_cmd->add_subcommand(
      "invariants", "rank, signature, determinant, parity");
  lat_inv->fallthrough();
  lat_inv->add_option("lattice", lat_ref, "catalog name or JSON file")
      ->required();
  lat_inv->add_flag("--neg", lat_neg, "negate the Gram matrix first");
  lat_inv->callback([&] {
    Lattice l = resolve_lattice(active_catalog(), lat_ref);
    if (lat_neg) l = rescale(l, -1);
    report.command = "lattice invariants";
    report.inputs = Json{{"lattice", lat_ref}, {"neg", lat_neg}};
    report.result = invariants_to_json(invariants(l));
    report.paper_anchor = "exact lattice invariants";
  });

  // fqf
  auto* fqf_cmd = app.add_subcommand("fqf", "finite quadratic forms");
  fqf_cmd->require_subcommand(1);
  fqf_cmd->fallthrough();
  std::string fqf_ref;
  auto* fqf_show =
      fqf_cmd->add_subcommand("show", "discriminant form of an even lattice");
  fqf_show->fallthrough();
  fqf_show->add_option("lattice", fqf_ref, "catalog name or JSON file")
      ->required();
  fqf_show->callback([&] {
    Lattice l = resolve_lattice(active_catalog(), fqf_ref);
    report.command = "fqf show";
    report.inputs = Json{{"lattice", fqf_ref}};
    report.result = fqf_to_json(disc_form(l));
    report.paper_anchor = "discriminant form A_L = L^v/L with q mod 2Z";
  });

  // code
  auto* code_cmd = app.add_subcommand("code", "ternary glue codes");
  code_cmd->require_subcommand(1);
  code_cmd->fallthrough();
  std::size_t search_dim = 3;
  std::string search_weights = "6,9";
  auto* code_search = code_cmd->add_subcommand(
      "search", "codes whose nonzero words have prescribed weights");
  code_search->fallthrough();
  code_search->add_option("--dim", search_dim, "code dimension")->required();
  code_search->add_option("--weights", search_weights,
                          "comma-separated allowed weights");
  code_search->callback([&] {
    std::set<int> allowed;
    std::stringstream ss(search_weights);
    std::string tok;
    while (std::getline(ss, tok, ',')) allowed.insert(std::stoi(tok));
    auto reps = search_codes(9, search_dim, allowed);
    Json classes = Json::array();
    for (const TernaryCode& c : reps) {
      Json entry = code_to_json(c);
      entry["weight_enumerator"] = Json::object();
      for (auto& [weight, count] : weight_enumerator(c))
        entry["weight_enumerator"][std::to_string(weight)] = count;
      classes.push_back(std::move(entry));
    }
    report.command = "code search";
    report.inputs = Json{{"dim", search_dim}, {"weights", search_weights}};
    report.result = Json{{"classes", classes}, {"count", reps.size()}};
    report.paper_anchor =
        "glue codes in F_3^9 up to cusp permutations and curve swaps";
  });
  std::string code_file;
  auto* code_tolat = code_cmd->add_subcommand(
      "to-lattice", "overlattice of A2(-1)^9 along a glue code");
  code_tolat->fallthrough();
  code_tolat->add_option("file", code_file, "code JSON file")->required();
  code_tolat->callback([&] {
    TernaryCode c = code_from_json(read_json_file(code_file));
    CodeLatticeResult r = code_to_overlattice(c);
    RootCount rc = verify_no_extra_roots(r.lattice, r.curve_basis);
    report.command = "code to-lattice";
    report.inputs = code_to_json(c);
    report.result = Json{{"gram", matrix_to_json(r.lattice.gram)},
                         {"invariants", invariants_to_json(invariants(r.lattice))},
                         {"disc_form", fqf_to_json(disc_form(r.lattice))},
                         {"root_pairs", rc.total_pairs},
                         {"root_pairs_outside", rc.outside_pairs}};
    report.paper_anchor = "overlattice of A2^9 along an isotropic glue code";
  });

  // glue
  auto* glue_cmd = app.add_subcommand("glue", "gluing and embedding checks");
  glue_cmd->require_subcommand(1);
  glue_cmd->fallthrough();
  std::int64_t t2_p = 0;
  std::size_t t2_sigma = 2;
  auto* glue_t2 = glue_cmd->add_subcommand(
      "theorem2", "supersingular feasibility at characteristic p");
  glue_t2->fallthrough();
  glue_t2->add_option("--p", t2_p, "prime characteristic, p > 3")->required();
  glue_t2->add_option("--sigma", t2_sigma, "Artin invariant")->required();
  glue_t2->callback([&] {
    GlueVerdict v = theorem2_pipeline(Int(t2_p), t2_sigma);
    report.command = "glue theorem2";
    report.inputs = Json{{"p", t2_p}, {"sigma", t2_sigma}};
    report.result = verdict_to_json(v);
    report.witnesses = report.result.contains("witness")
                           ? Json{{"images", report.result["witness"]}}
                           : Json::object();
    report.result.erase("witness");
    report.paper_anchor =
        "sigma <= 2, and sigma = 2 only in characteristic p = -1 mod 3";
  });
  std::string embed_ref, embed_ambient;
  auto* glue_embed = glue_cmd->add_subcommand(
      "embed", "length obstructions against a primitive embedding");
  glue_embed->fallthrough();
  glue_embed->add_option("lattice", embed_ref, "catalog name or JSON file")
      ->required();
  glue_embed
      ->add_option("--ambient", embed_ambient,
                   "rank,sig+:sig-,form  (form: trivial or p^l[*q^m...])")
      ->required();
  glue_embed->callback([&] {
    Lattice l = resolve_lattice(active_catalog(), embed_ref);
    AmbientSpec spec = parse_ambient(embed_ambient);
    GlueVerdict v = embedding_obstruction(l, spec);
    report.command = "glue embed";
    report.inputs = Json{{"lattice", embed_ref}, {"ambient", embed_ambient}};
    report.result = verdict_to_json(v);
    report.paper_anchor =
        "discriminant lengths are bounded by the complement rank";
  });

  // trace
  auto* trace_cmd = app.add_subcommand("trace", "order-3 trace computations");
  trace_cmd->require_subcommand(1);
  trace_cmd->fallthrough();
  std::string eigs_text;
  auto* trace_lef = trace_cmd->add_subcommand(
      "lefschetz", "fixed point count from H^1 eigenvalues");
  trace_lef->fallthrough();
  trace_lef->add_option("--eigs", eigs_text, "four of 1, w, w2 (comma list)")
      ->required();
  trace_lef->callback([&] {
    EigenvalueMultiset h1 = parse_eigs(eigs_text);
    Int fixed = lefschetz_number(h1);
    EigenvalueMultiset h2 = exterior_square(h1);
    report.command = "trace lefschetz";
    report.inputs = Json{{"eigs", eigs_text}};
    report.result =
        Json{{"fixed_points", int_to_json(fixed)},
             {"h2_eigenvalues", Json{{"1", h2.ones},
                                     {"w", h2.omegas},
                                     {"w2", h2.omega2s}}},
             {"h2_invariant_dimension", invariant_dimension(h2)}};
    report.paper_anchor =
        "fixed points of an order-3 automorphism by the trace formula";
  });
  int p_rank = 2;
  auto* trace_mum = trace_cmd->add_subcommand(
      "mumford", "endomorphism-algebra table filter");
  trace_mum->fallthrough();
  trace_mum->add_option("--p-rank", p_rank, "p-rank, 1 or 2")->required();
  trace_mum->callback([&] {
    auto table = mumford_filter(p_rank);
    Json rows = Json::array();
    Json excluded = Json::array();
    for (const EndoTypeRow& row : table) {
      rows.push_back(endo_row_to_json(row));
      if (!row.admissible) excluded.push_back(row.type);
    }
    report.command = "trace mumford";
    report.inputs = Json{{"p_rank", p_rank}};
    report.result = Json{{"rows", rows},
                         {"excluded", excluded},
                         {"max_admissible_rho", max_admissible_rho(table)}};
    report.paper_anchor = "rho(A) <= 3 for simple abelian surfaces";
  });

  // ns
  auto* ns_cmd = app.add_subcommand("ns", "Neron-Severi bookkeeping");
  ns_cmd->require_subcommand(1);
  ns_cmd->fallthrough();
  std::string ns_config_file, ns_section_file;
  auto* ns_height =
      ns_cmd->add_subcommand("height", "height of a section from local data");
  ns_height->fallthrough();
  ns_height->add_option("config", ns_config_file, "fiber configuration JSON")
      ->required();
  ns_height->add_option("section", ns_section_file, "section JSON")->required();
  ns_height->callback([&] {
    FiberConfiguration config =
        fiber_config_from_json(read_json_file(ns_config_file));
    SectionData section = section_from_json(read_json_file(ns_section_file));
    HeightResult h = section_height(config, section);
    report.command = "ns height";
    report.inputs = Json{{"config", fiber_config_to_json(config)},
                         {"section",
                          Json{{"p_o", section.p_o},
                               {"components", section.components}}}};
    report.result =
        Json{{"height", rat_to_json(h.height)}, {"nonpositive", h.nonpositive}};
    report.paper_anchor =
        "height = 4 + 2(P.O) - sum of local fiber contributions";
  });
  std::string ns_disc_config;
  std::vector<std::string> ns_heights;
  std::int64_t ns_torsion = 1;
  auto* ns_disc = ns_cmd->add_subcommand(
      "disc", "det NS from the trivial lattice and section heights");
  ns_disc->fallthrough();
  ns_disc->add_option("config", ns_disc_config, "fiber configuration JSON")
      ->required();
  ns_disc->add_option("--height", ns_heights,
                      "section height(s), diagonal height Gram");
  ns_disc->add_option("--torsion", ns_torsion, "torsion order")
      ->capture_default_str();
  ns_disc->callback([&] {
    FiberConfiguration config =
        fiber_config_from_json(read_json_file(ns_disc_config));
    std::vector<std::vector<Rat>> gram(ns_heights.size(),
                                       std::vector<Rat>(ns_heights.size()));
    for (std::size_t i = 0; i < ns_heights.size(); ++i)
      gram[i][i] = rat_from_string(ns_heights[i]);
    Rat det = shioda_tate_disc(config, gram, Int(ns_torsion));
    TrivialLatticeResult triv = trivial_lattice(config);
    report.command = "ns disc";
    report.inputs = Json{{"config", fiber_config_to_json(config)},
                         {"heights", ns_heights},
                         {"torsion", ns_torsion}};
    report.result = Json{{"det_ns", rat_to_json(det)},
                         {"det_trivial", int_to_json(determinant(triv.lattice.gram))},
                         {"euler", triv.euler}};
    report.paper_anchor =
        "det NS = det(trivial) * (-1)^r * det(heights) / torsion^2";
  });
  std::string ns_scan_ref;
  auto* ns_scan =
      ns_cmd->add_subcommand("scan", "isotropic classes and overlattices");
  ns_scan->fallthrough();
  ns_scan->add_option("lattice", ns_scan_ref, "catalog name or JSON file")
      ->required();
  ns_scan->callback([&] {
    Lattice l = resolve_lattice(active_catalog(), ns_scan_ref);
    OverlatticeScan scan = ns_overlattice_scan(l);
    report.command = "ns scan";
    report.inputs = Json{{"lattice", ns_scan_ref}};
    report.result =
        Json{{"nonzero_isotropic_count", scan.nonzero_isotropic_count},
             {"proper_even_overlattice_exists",
              scan.proper_even_overlattice_exists}};
    report.paper_anchor =
        "even overlattices correspond to isotropic subgroups";
  });

  // reproduce
  auto* repro_cmd =
      app.add_subcommand("reproduce", "run the bundled verification suite");
  repro_cmd->require_subcommand(1);
  repro_cmd->fallthrough();
  auto* repro_all = repro_cmd->add_subcommand("all", "every criterion");
  repro_all->fallthrough();
  repro_all->callback([&] {
    reproduce_results = run_acceptance_suite();
    reproduce_mode = true;
    Json rows = Json::array();
    int passed = 0;
    for (const CriterionResult& r : reproduce_results) {
      rows.push_back(Json{{"id", r.id},
                          {"name", r.name},
                          {"anchor", r.anchor},
                          {"pass", r.pass},
                          {"details", r.details}});
      passed += r.pass;
    }
    report.command = "reproduce all";
    report.result = Json{{"criteria", rows},
                         {"passed", passed},
                         {"total", reproduce_results.size()}};
    report.paper_anchor = "the bundled verification suite";
  });

  auto start = std::chrono::steady_clock::now();
  CommandResult out;
  try {
    std::vector<std::string> argv{"k3cusps"};
    argv.insert(argv.end(), args.begin(), args.end());
    std::vector<const char*> cargv;
    for (const std::string& a : argv) cargv.push_back(a.c_str());
    app.parse(int(cargv.size()), cargv.data());
  } catch (const CLI::CallForHelp& e) {
    out.exit_code = 0;
    out.output = app.help();
    return out;
  } catch (const CLI::ParseError& e) {
    out.exit_code = 2;
    out.output = std::string("error: ") + e.what() + "\n";
    return out;
  } catch (const Error& e) {
    bool internal =
        e.code() == "Internal" || e.code() == "NonIntegralResult";
    out.exit_code = internal ? 1 : 2;
    out.output = Json{{"error", e.code()}, {"message", e.what()}}.dump(2) + "\n";
    return out;
  }
  long long elapsed = std::chrono::duration_cast<std::chrono::milliseconds>(
                          std::chrono::steady_clock::now() - start)
                          .count();
  if (reproduce_mode && format == "text") {
    out.output = render_reproduce_text(reproduce_results, elapsed);
  } else {
    out.output = render(report, format, elapsed);
  }
  out.exit_code = 0;
  return out;
}

}  // namespace k3cusps
