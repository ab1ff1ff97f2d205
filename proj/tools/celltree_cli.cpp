// celltree: spanning-tree and forest counts of cell complexes from the command line.
//
// Exit codes: 0 success, 1 mismatch, 2 usage or bad input, 3 enumeration cap exceeded.

#include <CLI11.hpp>

#include <iostream>
#include <sstream>

#include "celltree/critical_cutflow.hpp"
#include "celltree/families.hpp"
#include "celltree/matrix_forest.hpp"
#include "verify_suites.hpp"

using namespace celltree;

namespace {

constexpr int kExitOk = 0, kExitMismatch = 1, kExitUsage = 2, kExitCap = 3;

struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct Options {
  std::string input;
  std::optional<int> k;
  std::string method = "all";
  std::string weights_file;
  std::optional<std::uint64_t> seed;
  std::uint64_t cap = kDefaultCap;
  std::string out;
  std::vector<std::string> gen_args;
  std::string suite = "all";
};

void emit(const Options& opt, const std::string& text) {
  if (opt.out.empty()) std::cout << text;
  else write_file(opt.out, text);
}

// A path, or named:<name> for a built-in complex.
ChainComplex load(const std::string& input) {
  if (input.rfind("named:", 0) == 0) return named_complex(input.substr(6));
  return parse_complex(read_file(input)).chain;
}

int to_int(const std::string& s, const char* what) {
  try {
    std::size_t pos = 0;
    const int v = std::stoi(s, &pos);
    if (pos != s.size()) throw std::invalid_argument(s);
    return v;
  } catch (const std::exception&) {
    throw UsageError(std::string("expected an integer for ") + what + ", got '" + s + "'");
  }
}

Face parse_face(const std::string& s) {
  Face f;
  std::stringstream in(s);
  std::string part;
  while (std::getline(in, part, ',')) f.push_back(to_int(part, "a face vertex"));
  return f;
}

std::string header(const Options& opt, const std::string& command) {
  std::ostringstream out;
  out << "command " << command << "\n";
  if (!opt.input.empty()) out << "input " << opt.input << "\n";
  out << "cap " << opt.cap << "\n";
  if (opt.seed) out << "seed " << *opt.seed << "\n";
  return out.str();
}

// ---------------------------------------------------------------------------

int cmd_gen(const Options& opt) {
  const auto& a = opt.gen_args;
  if (a.empty()) throw UsageError("gen: missing family name");
  const std::string family = a[0];
  auto need = [&](std::size_t n, const char* usage) {
    if (a.size() != n + 1) throw UsageError(std::string("gen ") + family + ": usage " + usage);
  };
  std::string text;
  if (family == "simplex-skeleton") {
    need(2, "simplex-skeleton N D");
    text = serialize(simplex_skeleton(to_int(a[1], "N"), to_int(a[2], "D")));
  } else if (family == "complete-colorful") {
    if (a.size() < 2) throw UsageError("gen complete-colorful: usage complete-colorful S1 S2 ...");
    std::vector<int> sizes;
    for (std::size_t i = 1; i < a.size(); ++i) sizes.push_back(to_int(a[i], "a color class size"));
    text = serialize(complete_colorful(sizes));
  } else if (family == "hypercube") {
    need(1, "hypercube N");
    text = serialize(hypercube_complex(to_int(a[1], "N")));
  } else if (family == "hypercube-skeleton") {
    need(2, "hypercube-skeleton N K");
    text = serialize(skeleton(hypercube_complex(to_int(a[1], "N")), to_int(a[2], "K")));
  } else if (family == "shifted") {
    if (a.size() < 3) throw UsageError("gen shifted: usage shifted N FACE [FACE ...], faces like 2,3,5");
    std::vector<Face> gens;
    for (std::size_t i = 2; i < a.size(); ++i) gens.push_back(parse_face(a[i]));
    text = serialize(shifted_complex(to_int(a[1], "N"), gens));
  } else if (family == "ferrers") {
    if (a.size() < 2) throw UsageError("gen ferrers: usage ferrers PART [PART ...]");
    std::vector<int> parts;
    for (std::size_t i = 1; i < a.size(); ++i) parts.push_back(to_int(a[i], "a part"));
    text = serialize(ferrers_graph(Partition(parts)));
  } else if (family == "uniform-matroid") {
    need(2, "uniform-matroid R N");
    text = serialize(matroid_complex(MatroidOracle::uniform(to_int(a[1], "R"), to_int(a[2], "N"))));
  } else if (family == "named") {
    need(1, "named NAME");
    if (a[1] == "rp2_cell") text = serialize(named_complex(a[1]));
    else text = serialize(named_simplicial(a[1]));
  } else {
    throw UsageError("gen: unknown family '" + family +
                     "' (simplex-skeleton, complete-colorful, hypercube, hypercube-skeleton, shifted, ferrers, "
                     "uniform-matroid, named)");
  }
  emit(opt, text);
  return kExitOk;
}

// ---------------------------------------------------------------------------

const std::vector<std::string> kMethods{"reduced",  "pseudodet", "alternating",        "covolume",
                                        "lyons",    "lyons-spectral", "algebraic-weighted", "weighted-alternating",
                                        "oracle",   "all"};

TauReport oracle_report(const ChainComplex& x, const WeightAssignment* w, std::uint64_t cap) {
  TauReport r;
  r.method = "oracle";
  const int d = x.dim();
  auto census = enumerate_forests(x, d, cap);
  r.intermediates.emplace_back("forests", std::to_string(census.forests.size()));
  if (w) {
    r.value = tau_weighted_bruteforce(x, d, *w, cap);
    r.notes.push_back("weights on the top cells of each forest");
  } else {
    Integer total = 0;
    for (const auto& f : census.forests) total += f.torsion * f.torsion;
    r.value = Rational(total);
  }
  return r;
}

TauReport run_method(const std::string& m, const ChainComplex& x, const WeightAssignment* w, std::uint64_t cap) {
  if (m == "reduced") return tau_reduced(x, std::nullopt, w);
  if (m == "pseudodet") return tau_pseudodet(x, w);
  if (m == "covolume") return tau_covolume(x, w);
  if (m == "oracle") return oracle_report(x, w, cap);
  if (m == "algebraic-weighted" || m == "weighted-alternating") {
    const WeightAssignment ones = WeightAssignment::ones(x);
    const WeightAssignment& use = w ? *w : ones;
    return m == "algebraic-weighted" ? tau_algebraic_weighted(x, use) : tau_weighted_alternating(x, use);
  }
  if (w) throw UsageError("method '" + m + "' does not take weights");
  if (m == "alternating") return tau_alternating(x);
  if (m == "lyons") return tau_lyons(x);
  if (m == "lyons-spectral") return tau_lyons_spectral(x, cap);
  throw UsageError("unknown method '" + m + "'");
}

int cmd_tau(const Options& opt) {
  ChainComplex full = load(opt.input);
  const int k = opt.k.value_or(full.dim());
  if (k < 1 || k > full.dim()) throw UsageError("tau: --k must lie in [1, " + std::to_string(full.dim()) + "]");
  const ChainComplex x = k == full.dim() ? full : skeleton(full, k);

  std::optional<WeightAssignment> weights;
  std::string weight_source = "none";
  if (!opt.weights_file.empty()) {
    weights = parse_weights(read_file(opt.weights_file));
    weight_source = opt.weights_file;
  } else if (opt.seed) {
    weights = cli::WeightSampler(*opt.seed).cells(x, 0, k);
    weight_source = "sampled";
  }
  if (weights) weights->require_dimension(x, k);
  const WeightAssignment* w = weights ? &*weights : nullptr;

  std::ostringstream out;
  out << header(opt, "tau") << "k " << k << "\nweights " << weight_source << "\n";
  if (weights && weight_source == "sampled") out << "sampled_weights\n" << serialize(*weights) << "end_weights\n";

  std::vector<std::string> methods;
  if (opt.method == "all") {
    if (w) methods = {"reduced", "pseudodet", "covolume", "algebraic-weighted", "weighted-alternating", "oracle"};
    else methods = {"reduced", "pseudodet", "alternating", "covolume", "lyons", "lyons-spectral", "oracle"};
  } else {
    methods = {opt.method};
  }

  std::optional<Rational> first;
  bool agree = true;
  int code = kExitOk;
  for (const auto& m : methods) {
    out << "\n";
    try {
      const TauReport r = run_method(m, x, w, opt.cap);
      out << r.to_text();
      if (!first) first = r.value;
      else if (r.value != *first) agree = false;
    } catch (const HypothesisError& e) {
      if (methods.size() == 1) throw;
      out << "method " << m << "\nskipped hypothesis " << e.what() << "\n";
    } catch (const CapExceeded& e) {
      if (methods.size() == 1) throw;
      out << "method " << m << "\nskipped cap " << e.what() << "\n";
    }
  }
  if (methods.size() > 1) {
    out << "\nagreement " << (agree ? "yes" : "no") << "\n";
    if (!agree) code = kExitMismatch;
  }
  emit(opt, out.str());
  return code;
}

// ---------------------------------------------------------------------------

int cmd_homology(const Options& opt) {
  const ChainComplex x = load(opt.input);
  std::ostringstream out;
  out << header(opt, "homology") << "dim " << x.dim() << "\ncells";
  for (int k = 0; k <= x.dim(); ++k) out << " " << x.num_cells(k);
  out << "\n";
  for (int k = -1; k <= x.dim(); ++k) {
    const auto h = homology(x, k);
    out << "H_" << k << " " << AbelianGroup{h.torsion_factors, h.betti}.to_text() << "  betti " << h.betti
        << " torsion " << h.torsion_order << "\n";
  }
  out << "z_acyclic_in_positive_codimension " << (is_z_apc(x) ? "yes" : "no") << "\n";
  emit(opt, out.str());
  return kExitOk;
}

int cmd_critical(const Options& opt) {
  const ChainComplex x = load(opt.input);
  const int i = opt.k.value_or(x.dim() - 1);
  if (i < 0 || i >= x.dim()) throw UsageError("critical: --k must lie in [0, " + std::to_string(x.dim() - 1) + "]");
  std::ostringstream out;
  out << header(opt, "critical") << "i " << i << "\n";
  const AbelianGroup k = critical_group(x, i);
  out << "critical_group " << k.to_text() << "\norder " << k.torsion_order() << "\n";
  int code = kExitOk;
  if (auto tree = torsion_free_tree(x, i, opt.cap)) {
    const AbelianGroup r = critical_group_reduced(x, i, *tree);
    std::string labels;
    for (auto c : *tree) labels += (labels.empty() ? "" : " ") + x.labels(i)[c];
    out << "torsion_free_tree " << labels << "\nreduced_cokernel " << r.to_text() << "\n";
    const bool ok = torsion_part(r) == k && r.free_rank == betti(x, i);
    out << "constructions_agree " << (ok ? "yes" : "no") << "\n";
    if (!ok) code = kExitMismatch;
  } else {
    out << "torsion_free_tree none\n";
  }
  if (i == x.dim() - 1) {
    const auto s = sequence_order_check(x);
    out << s.to_text();
    if (!s.consistent()) code = kExitMismatch;
  }
  emit(opt, out.str());
  return code;
}

int cmd_rooted_poly(const Options& opt) {
  const ChainComplex x = load(opt.input);
  std::ostringstream out;
  out << header(opt, "rooted-poly");
  const auto poly = rooted_forest_polynomial(x).coefficients;
  out << "det(L + z I), coefficient of z^j for j = 0.." << poly.size() - 1 << "\n";
  for (std::size_t j = 0; j < poly.size(); ++j) out << "z^" << j << " " << poly[j] << "\n";
  int code = kExitOk;
  try {
    const bool ok = rooted_forest_coefficients(x, opt.cap) == poly;
    out << "enumeration " << (ok ? "matches" : "MISMATCH") << "\n";
    if (!ok) code = kExitMismatch;
  } catch (const CapExceeded& e) {
    out << "enumeration skipped (" << e.what() << ")\n";
  }
  emit(opt, out.str());
  return code;
}

int cmd_verify(const Options& opt) {
  std::vector<std::string> suites;
  if (opt.suite == "all") suites = cli::suite_names();
  else suites = {opt.suite};
  cli::SuiteOptions so;
  so.seed = opt.seed.value_or(1);
  so.cap = opt.cap;
  std::ostringstream out;
  Options shown = opt;
  shown.seed = so.seed;
  out << header(shown, "verify " + opt.suite);
  bool ok = true;
  for (const auto& s : suites) {
    const auto rows = cli::run_suite(s, so);
    for (const auto& r : rows)
      if (r.status == cli::Status::mismatch) ok = false;
    out << cli::format_rows(s, rows);
  }
  out << "result " << (ok ? "pass" : "FAIL") << "\n";
  emit(opt, out.str());
  return ok ? kExitOk : kExitMismatch;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact spanning-tree and forest counts of cell complexes"};
  app.require_subcommand(1);
  Options opt;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--cap", opt.cap, "Enumeration cap for brute-force checks");
    sub->add_option("--out", opt.out, "Write output to FILE instead of stdout");
  };
  auto add_input = [&](CLI::App* sub) {
    sub->add_option("input", opt.input, "Complex file, or named:<name> for a built-in complex")->required();
  };

  auto* gen = app.add_subcommand("gen", "Write a family instance in the interchange format");
  gen->add_option("args", opt.gen_args, "FAMILY followed by its parameters")->required();
  add_common(gen);

  auto* tau = app.add_subcommand("tau", "Compute the torsion-weighted forest count");
  add_input(tau);
  tau->add_option("--k", opt.k, "Dimension (default: top)");
  tau->add_option("--method", opt.method, "Method")->check(CLI::IsMember(kMethods));
  tau->add_option("--weights", opt.weights_file, "Weight file (lines 'dim index value')");
  tau->add_option("--seed", opt.seed, "Sample random rational weights with this seed");
  add_common(tau);

  auto* hom = app.add_subcommand("homology", "Integer homology");
  add_input(hom);
  add_common(hom);

  auto* crit = app.add_subcommand("critical", "Critical group and cut/flow orders");
  add_input(crit);
  crit->add_option("--k", opt.k, "Dimension i of K_i (default: d-1)");
  add_common(crit);

  auto* rooted = app.add_subcommand("rooted-poly", "Rooted-forest generating polynomial det(L + zI)");
  add_input(rooted);
  add_common(rooted);

  auto* verify = app.add_subcommand("verify", "Cross-check closed forms and theorems");
  std::vector<std::string> suites = cli::suite_names();
  suites.push_back("all");
  verify->add_option("suite", opt.suite, "families, theorems, critical, duality or all")->check(CLI::IsMember(suites));
  verify->add_option("--seed", opt.seed, "Seed for sampled weights (default 1)");
  add_common(verify);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*gen) return cmd_gen(opt);
    if (*tau) return cmd_tau(opt);
    if (*hom) return cmd_homology(opt);
    if (*crit) return cmd_critical(opt);
    if (*rooted) return cmd_rooted_poly(opt);
    if (*verify) return cmd_verify(opt);
  } catch (const CapExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitCap;
  } catch (const HypothesisError& e) {
    std::cerr << "hypothesis not met: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  return kExitUsage;
}
