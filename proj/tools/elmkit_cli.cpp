// Command-line front end: generate factoring systems, apply landscape
// transforms, enumerate spectra, evaluate runtime bounds and rebuild the
// published tables.

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "elmkit/aqcbound.hpp"
#include "elmkit/elm.hpp"
#include "elmkit/error.hpp"
#include "elmkit/factoring.hpp"
#include "elmkit/parallel.hpp"
#include "elmkit/report.hpp"
#include "elmkit/reproduce.hpp"
#include "elmkit/spectrum.hpp"

using namespace elmkit;

namespace {

enum Exit : int { kOk = 0, kUsage = 1, kVerification = 2, kResource = 3 };

/// Raised when a result fails verification; carries the text to print.
struct VerificationFailure : Error {
  using Error::Error;
};

std::string read_file(const std::string &path) {
  std::ifstream in(path);
  if (!in)
    throw DomainError("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

bool ends_with(const std::string &s, const std::string &suffix) {
  return s.size() >= suffix.size() &&
         s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}

void emit(const std::string &text, const std::string &path) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream out(path);
  if (!out)
    throw DomainError("cannot write " + path);
  out << text;
}

/// parse_system with the file name attached to any error position.
EquationSystem parse_system_text(const std::string &text, const std::string &path) {
  try {
    return parse_system(text);
  } catch (const ParseError &e) {
    throw ParseError(e.message(), e.line(), e.column(), path);
  }
}

/// An .eqs file becomes its uniform-weight Hamiltonian; anything else is
/// read as a Hamiltonian artifact.
HamiltonianArtifact load_input(const std::string &path) {
  if (!ends_with(path, ".eqs"))
    return load_artifact(path);
  const std::string text = read_file(path);
  EquationSystem sys = parse_system_text(text, path);
  HamiltonianArtifact a;
  a.vars = sys.variables();
  a.poly = system_to_hamiltonian(sys);
  a.provenance = json{{"source", path},
                      {"source_hash", "fnv1a64:" + fnv1a64_hex(text)},
                      {"transforms", json::array({json{{"op", "square_and_sum"},
                                                       {"weights", "uniform"}}})}};
  return a;
}

struct Common {
  std::size_t workers = 0;
  std::string out;
};

std::size_t resolved_workers(const Common &c) {
  return c.workers ? c.workers : default_workers();
}

// ---------------------------------------------------------------------------

struct GenerateArgs {
  std::uint64_t n = 0;
  unsigned p_bits = 0;
  unsigned q_bits = 0;
  bool no_reduce = false;
  bool solve = false;
  Common common;
};

int run_generate(const GenerateArgs &args) {
  json config{{"command", "generate"}, {"N", args.n}, {"p_bits", args.p_bits},
              {"q_bits", args.q_bits}, {"reduce", !args.no_reduce},
              {"solve", args.solve}};
  FactoringInstance inst = generate_factoring_system(args.n, args.p_bits, args.q_bits);
  std::ostringstream out;
  out << "# elmkit config: " << config.dump() << "\n";

  EquationSystem system = inst.system;
  std::optional<Reduction> reduction;
  if (!args.no_reduce) {
    try {
      reduction = apply_simple_deductions(inst.system);
    } catch (const Contradiction &e) {
      throw VerificationFailure(std::string("no factorization with these bit-lengths: ") +
                                e.what());
    }
    system = reduction->system;
    for (const auto &d : reduction->deductions)
      out << "# deduced: " << format_polynomial(d.lhs(), reduction->original) << " = "
          << format_polynomial(d.rhs(), reduction->original) << "\n";
  }
  out << "# variables: " << system.variables().size() << ", equations: " << system.size()
      << "\n";
  out << format_system(system);
  if (args.solve) {
    auto solutions = solve_exhaustive(system);
    if (solutions.empty())
      out << "# no solutions\n";
    for (const auto &x : solutions) {
      auto [p, q] = reduction ? inst.decode(reduction->expand(x), reduction->original)
                              : inst.decode(x);
      out << "# solution: p=" << p << " q=" << q << "\n";
    }
  }
  emit(out.str(), args.common.out);
  return kOk;
}

// ---------------------------------------------------------------------------

struct ElmArgs {
  std::string system;
  std::string deductions;
  std::optional<std::int64_t> lambda;
  std::string scheme;
  std::string mode = "side";
  std::size_t verify_cap = 24;
  Common common;
};

int run_elm(const ElmArgs &args) {
  if (args.deductions.empty() == args.scheme.empty())
    throw CLI::ValidationError("elm", "give exactly one of --deductions or --scheme");
  const std::string text = read_file(args.system);
  const EquationSystem sys = parse_system_text(text, args.system);
  const BinaryPolynomial h0 = system_to_hamiltonian(sys);

  json config{{"command", "elm"}, {"system", args.system}, {"workers", resolved_workers(args.common)},
              {"verify_cap", args.verify_cap}};
  json transform;
  std::ostringstream summary;
  HamiltonianArtifact artifact;
  artifact.vars = sys.variables();

  if (!args.deductions.empty()) {
    auto ds = load_deductions(args.deductions, sys.variables());
    if (args.lambda)
      for (auto &d : ds)
        d = d.with_weight(*args.lambda);
    artifact.poly = deduc_elm(h0, ds);
    config["deductions"] = args.deductions;
    config["lambda_override"] = args.lambda ? json(*args.lambda) : json(nullptr);
    json lines = json::array(), penalties = json::array();
    summary << "deduction penalties added to the uniform Hamiltonian:\n";
    for (const auto &d : ds) {
      lines.push_back(format_deduction(d, sys.variables()));
      penalties.push_back(describe_penalty(d, sys.variables()));
      summary << "  + " << describe_penalty(d, sys.variables()) << "\n";
    }
    transform = json{{"op", "deduc_elm"}, {"deductions", lines}, {"penalties", penalties}};
  } else {
    SchemeKind kind = parse_scheme_kind(args.scheme);
    EnergyMode mode = parse_energy_mode(args.mode);
    WeightScheme scheme = plan_weights(sys, kind, mode);
    artifact.poly = multiplicity_elm(sys, scheme);
    config["scheme"] = to_string(kind);
    config["mode"] = to_string(mode);
    transform = json{{"op", "multiplicity_elm"}, {"weights", weights_to_json(scheme)}};
    summary << "weights (" << to_string(kind) << ", " << to_string(mode)
            << "), E_max = " << scheme.e_max << "\n";
    summary << "  eq  E_i  lambda_i\n";
    for (std::size_t i = 0; i < scheme.per_equation.size(); ++i)
      summary << "  " << std::setw(2) << i + 1 << std::setw(5)
              << scheme.per_equation[i].max_energy << std::setw(10)
              << scheme.per_equation[i].lambda << "\n";
    summary << "  lambda = (";
    for (std::size_t i = 0; i < scheme.per_equation.size(); ++i)
      summary << (i ? "," : "") << scheme.per_equation[i].lambda;
    summary << ")\n";
  }

  json preservation;
  const std::size_t n = sys.variables().size();
  if (n <= args.verify_cap) {
    EnumerationOptions opts;
    opts.workers = args.common.workers;
    opts.max_variables = args.verify_cap;
    auto v = verify_ground_state_preserved(h0, artifact.poly, n, opts);
    preservation = json{{"checked", true}, {"preserved", v.preserved},
                        {"ground_states", v.ground_states}};
    if (v.witness)
      preservation["witness"] = bitstring(*v.witness, n);
    if (!v.preserved) {
      std::cerr << "ground state NOT preserved; witness " << bitstring(*v.witness, n)
                << " over (";
      for (std::size_t i = 0; i < n; ++i)
        std::cerr << (i ? " " : "") << sys.variables().name(static_cast<VarIndex>(i));
      std::cerr << ")\n";
    }
    summary << "ground states preserved: " << (v.preserved ? "yes" : "NO") << " ("
            << v.ground_states << " ground states checked over 2^" << n << " assignments)\n";
  } else {
    preservation = json{{"checked", false},
                        {"reason", "more variables than the verification cap"}};
    summary << "ground-state verification skipped: " << n << " variables exceed cap "
            << args.verify_cap << "\n";
  }

  artifact.provenance = json{{"source", args.system},
                             {"source_hash", "fnv1a64:" + fnv1a64_hex(text)},
                             {"transforms", json::array({transform})},
                             {"preservation", preservation},
                             {"config", config}};
  const std::string doc = artifact_to_json(artifact).dump(2) + "\n";
  if (args.common.out.empty() || args.common.out == "-") {
    std::cout << doc;
    std::cerr << summary.str();
  } else {
    emit(doc, args.common.out);
    std::cout << summary.str();
  }
  return preservation.value("preserved", true) ? kOk : kVerification;
}

// ---------------------------------------------------------------------------

struct SpectrumArgs {
  std::string input;
  std::string format = "json";
  std::size_t max_vars = 28;
  std::size_t ground_limit = 64;
  Common common;
};

EnumerationOptions enumeration_options(const Common &c, std::size_t max_vars,
                                       std::size_t ground_limit) {
  EnumerationOptions o;
  o.workers = c.workers;
  o.max_variables = max_vars;
  o.ground_state_limit = ground_limit;
  return o;
}

int run_spectrum(const SpectrumArgs &args) {
  HamiltonianArtifact a = load_input(args.input);
  SpectrumReport r = enumerate_spectrum(
      a.poly, a.vars.size(), enumeration_options(args.common, args.max_vars, args.ground_limit));
  json config{{"command", "spectrum"}, {"input", args.input}, {"format", args.format},
              {"workers", resolved_workers(args.common)}, {"max_vars", args.max_vars},
              {"ground_limit", args.ground_limit}};
  std::string text;
  if (args.format == "json") {
    json doc{{"config", config}};
    doc.update(spectrum_to_json(r, a.vars));
    text = doc.dump(2) + "\n";
  } else if (args.format == "csv") {
    text = "# elmkit config: " + config.dump() + "\n" + spectrum_to_csv(r);
  } else if (args.format == "table") {
    text = "# elmkit config: " + config.dump() + "\n" + spectrum_table_header() + "\n" +
           spectrum_table_row("H", r) + "\n";
    text += "# ground states: " + std::to_string(r.total_ground_states) +
            ", variables: " + std::to_string(r.n) + "\n";
    for (const auto &note : r.notes)
      text += "# " + note + "\n";
  } else {
    throw CLI::ValidationError("--format", "expected json, csv or table");
  }
  emit(text, args.common.out);
  return kOk;
}

// ---------------------------------------------------------------------------

struct CompareArgs {
  std::string a;
  std::string b;
  std::size_t levels = 5;
  std::size_t max_vars = 28;
  Common common;
};

int run_compare(const CompareArgs &args) {
  HamiltonianArtifact a = load_input(args.a), b = load_input(args.b);
  auto opts = enumeration_options(args.common, args.max_vars, 64);
  SpectrumReport ra = enumerate_spectrum(a.poly, a.vars.size(), opts);
  SpectrumReport rb = enumerate_spectrum(b.poly, b.vars.size(), opts);
  auto cmp = compare_spectra(ra, rb, args.levels);
  json summary = [](const SpectrumReport &r) {
    return json{{"n", r.n},
                {"e_gap", r.e_gap ? json(*r.e_gap) : json(nullptr)},
                {"e_width", r.e_width},
                {"ratio", r.ratio ? rational_to_json(*r.ratio) : json(nullptr)}};
  }(ra);
  json doc{{"config", json{{"command", "compare"}, {"a", args.a}, {"b", args.b},
                           {"levels", args.levels},
                           {"workers", resolved_workers(args.common)}}},
           {"a", summary},
           {"b", json{{"n", rb.n},
                      {"e_gap", rb.e_gap ? json(*rb.e_gap) : json(nullptr)},
                      {"e_width", rb.e_width},
                      {"ratio", rb.ratio ? rational_to_json(*rb.ratio) : json(nullptr)}}},
           {"same_variables", a.vars == b.vars}};
  doc.update(comparison_to_json(cmp));
  emit(doc.dump(2) + "\n", args.common.out);
  return kOk;
}

// ---------------------------------------------------------------------------

struct BoundArgs {
  std::string input;
  std::string epsilon = "0.1";
  std::size_t grid = 64;
  std::string hinit = "transverse";
  double tf_scale = 1.0;
  std::size_t max_qubits = 12;
  Common common;
};

int run_bound(const BoundArgs &args) {
  HamiltonianArtifact a = load_input(args.input);
  InterpolationProblem p;
  p.h_final = a.poly;
  p.num_vars = a.vars.size();
  p.epsilon = Rational::parse(args.epsilon);
  p.grid = args.grid;
  p.tf_scale = args.tf_scale;
  p.max_qubits = args.max_qubits;
  p.workers = args.common.workers;
  if (args.hinit == "transverse")
    p.init = InitialHamiltonian::transverse_field;
  else if (args.hinit == "none")
    p.init = InitialHamiltonian::none;
  else
    throw CLI::ValidationError("--hinit", "expected transverse or none");
  if (p.num_vars > p.max_qubits)
    throw CapExceeded(std::to_string(p.num_vars) + " qubits exceed the dense-solver cap of " +
                      std::to_string(p.max_qubits) + "; raise it with --max-qubits");

  EnumerationOptions opts;
  opts.workers = args.common.workers;
  SpectrumReport spec = enumerate_spectrum(a.poly, p.num_vars, opts);
  BoundReport report = runtime_bounds(p, spec);
  json doc{{"config", json{{"command", "bound"}, {"input", args.input},
                           {"epsilon", p.epsilon.str()}, {"grid", args.grid},
                           {"hinit", args.hinit}, {"tf_scale", args.tf_scale},
                           {"max_qubits", args.max_qubits},
                           {"workers", resolved_workers(args.common)}}},
           {"e_gap", *spec.e_gap},
           {"e_width", spec.e_width},
           {"ratio", rational_to_json(*spec.ratio)}};
  doc.update(bound_to_json(report));
  emit(doc.dump(2) + "\n", args.common.out);
  return kOk;
}

// ---------------------------------------------------------------------------

struct ReproduceArgs {
  std::string data_dir = ELMKIT_DATA_DIR;
  Common common;
};

int run_reproduce(const ReproduceArgs &args) {
  ReproductionOptions opts;
  opts.data_dir = args.data_dir;
  opts.workers = args.common.workers;
  ReproductionResult result = reproduce_tables(opts);
  json config{{"command", "reproduce-tables"}, {"data_dir", args.data_dir},
              {"workers", resolved_workers(args.common)}};
  emit("# elmkit config: " + config.dump() + "\n" + format_reproduction(result),
       args.common.out);
  return result.ok() ? kOk : kVerification;
}

void add_common(CLI::App *cmd, Common &c, bool output = true) {
  cmd->add_option("--workers", c.workers,
                  "worker threads (default: ELMKIT_WORKERS or hardware threads)");
  if (output)
    cmd->add_option("-o,--output", c.out, "output file (default: stdout)");
}

} // namespace

int main(int argc, char **argv) {
  CLI::App app{"elmkit: pseudo-Boolean Hamiltonians, energy-landscape transforms and "
               "exhaustive spectra"};
  app.require_subcommand(1);

  GenerateArgs gen;
  auto *generate = app.add_subcommand("generate", "write the factoring equations for N");
  generate->add_option("N", gen.n, "odd number to factor")->required();
  generate->add_option("--p-bits", gen.p_bits, "bit-length of p")->required();
  generate->add_option("--q-bits", gen.q_bits, "bit-length of q")->required();
  generate->add_flag("--no-reduce", gen.no_reduce, "skip the elementary deductions");
  generate->add_flag("--solve", gen.solve, "append every solution as a comment");
  add_common(generate, gen.common);

  ElmArgs elm;
  auto *elm_cmd = app.add_subcommand("elm", "apply deduction penalties or equation weights");
  elm_cmd->add_option("system", elm.system, "equation file")->required();
  elm_cmd->add_option("--deductions", elm.deductions, "deduction file");
  elm_cmd->add_option("--lambda", elm.lambda, "override every deduction weight");
  elm_cmd->add_option("--scheme", elm.scheme, "ceil, indicator or uniform");
  elm_cmd->add_option("--mode", elm.mode, "side or diff (maximum-energy rule)");
  elm_cmd->add_option("--verify-cap", elm.verify_cap,
                      "largest variable count verified exhaustively");
  add_common(elm_cmd, elm.common);

  SpectrumArgs spec;
  auto *spectrum = app.add_subcommand("spectrum", "enumerate the energy landscape");
  spectrum->add_option("input", spec.input, "Hamiltonian artifact (.json) or .eqs")->required();
  spectrum->add_option("--format", spec.format, "json, csv or table");
  spectrum->add_option("--max-vars", spec.max_vars, "enumeration cap");
  spectrum->add_option("--ground-limit", spec.ground_limit, "ground states listed");
  add_common(spectrum, spec.common);

  CompareArgs cmp;
  auto *compare = app.add_subcommand("compare", "compare two landscapes");
  compare->add_option("a", cmp.a, "baseline Hamiltonian")->required();
  compare->add_option("b", cmp.b, "transformed Hamiltonian")->required();
  compare->add_option("--levels", cmp.levels, "levels to line up");
  compare->add_option("--max-vars", cmp.max_vars, "enumeration cap");
  add_common(compare, cmp.common);

  BoundArgs bnd;
  auto *bound = app.add_subcommand("bound", "adiabatic runtime-bound quantities");
  bound->add_option("input", bnd.input, "Hamiltonian artifact (.json) or .eqs")->required();
  bound->add_option("--epsilon", bnd.epsilon, "target error, decimal or fraction");
  bound->add_option("--grid", bnd.grid, "coarse grid points in t/T");
  bound->add_option("--hinit", bnd.hinit, "transverse or none");
  bound->add_option("--tf-scale", bnd.tf_scale, "transverse-field scale c");
  bound->add_option("--max-qubits", bnd.max_qubits, "dense-solver cap");
  add_common(bound, bnd.common);

  ReproduceArgs rep;
  auto *reproduce =
      app.add_subcommand("reproduce-tables", "rebuild the published landscape tables");
  reproduce->add_option("--data-dir", rep.data_dir, "directory holding the .eqs files");
  add_common(reproduce, rep.common);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*generate)
      return run_generate(gen);
    if (*elm_cmd)
      return run_elm(elm);
    if (*spectrum)
      return run_spectrum(spec);
    if (*compare)
      return run_compare(cmp);
    if (*bound)
      return run_bound(bnd);
    if (*reproduce)
      return run_reproduce(rep);
  } catch (const CLI::Error &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const VerificationFailure &e) {
    std::cerr << "verification failed: " << e.what() << "\n";
    return kVerification;
  } catch (const CapExceeded &e) {
    std::cerr << "resource cap: " << e.what() << "\n";
    return kResource;
  } catch (const Contradiction &e) {
    std::cerr << "verification failed: " << e.what() << "\n";
    return kVerification;
  } catch (const std::exception &e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
