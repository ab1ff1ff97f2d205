#include "celltree/matrix_forest.hpp"

#include <numeric>
#include <sstream>

namespace celltree {

namespace {

std::string sub(const std::string& base, int k) { return base + "_" + std::to_string(k); }

RatMatrix top_laplacian(const ChainComplex& x, const WeightAssignment* w) {
  const int d = x.dim();
  if (w) return weighted_laplacian_comb(x, d, *w);
  return to_rational(laplacian(x, d - 1, LaplacianKind::up_down));
}

void require_dim(const ChainComplex& x, const char* method) {
  if (x.dim() < 1) throw std::invalid_argument(std::string(method) + ": complex must have dimension >= 1");
}

// Records β_k(X) = 0 as a hypothesis; throws if it fails.
void require_acyclic(TauReport& r, const ChainComplex& x, int k) {
  if (k < -1) return;
  const std::size_t b = betti(x, k);
  r.hypotheses.emplace_back(sub("betti", k) + "(X)", std::to_string(b));
  if (b != 0)
    throw HypothesisError(r.method + ": requires beta_" + std::to_string(k) + "(X) = 0 but it is " + std::to_string(b));
}

Rational square(const Integer& t) { return Rational(t * t); }

bool rows_form_basis(const IntMatrix& top, const CellSet& s) {
  return rank_exact(top.select_rows(s)) == s.size() && s.size() == rank_exact(top);
}

void validate_cells(const CellSet& s, std::size_t n, const char* what) {
  for (std::size_t i = 0; i < s.size(); ++i)
    if (s[i] >= n || (i && s[i] <= s[i - 1]))
      throw std::invalid_argument(std::string(what) + ": cells must be sorted, distinct and in range");
}

std::string cells_text(const ChainComplex& x, int k, const CellSet& s) {
  std::string out = "{";
  for (std::size_t i = 0; i < s.size(); ++i) out += (i ? " " : "") + x.labels(k)[s[i]];
  return out + "}";
}

// τ_k of the k-skeleton, unweighted, via the pseudodeterminant recursion;
// falls back to the covolume expansion when a level lacks the hypotheses.
Rational lower_tau(const ChainComplex& x, int k, std::vector<std::string>& notes) {
  if (k == 0) return Rational(x.num_cells(0));
  const ChainComplex sk = skeleton(x, k);
  try {
    return tau_pseudodet(sk).value;
  } catch (const HypothesisError& e) {
    notes.push_back("tau_" + std::to_string(k) + " taken from the covolume expansion (" + e.what() + ")");
    return tau_covolume(sk).value;
  }
}

}  // namespace

// ---------------------------------------------------------------------------

std::string TauReport::to_text() const {
  std::ostringstream out;
  out << "method " << method << "\n";
  out << "value " << value.get_str() << "\n";
  for (const auto& [k, v] : hypotheses) out << "hypothesis " << k << " = " << v << "\n";
  for (const auto& [k, v] : corrections) out << "correction " << k << " = " << v << "\n";
  for (const auto& [k, v] : intermediates) out << "intermediate " << k << " = " << v << "\n";
  for (const auto& n : notes) out << "note " << n << "\n";
  return out.str();
}

TauReport TauReport::parse(const std::string& text) {
  TauReport r;
  std::istringstream in(text);
  std::string line;
  bool have_method = false, have_value = false;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto sp = line.find(' ');
    if (sp == std::string::npos) throw std::invalid_argument("report: malformed line '" + line + "'");
    const std::string kind = line.substr(0, sp), rest = line.substr(sp + 1);
    auto split_entry = [&](const std::string& s) {
      const auto p = s.find(" = ");
      if (p == std::string::npos) throw std::invalid_argument("report: malformed entry '" + s + "'");
      return std::make_pair(s.substr(0, p), s.substr(p + 3));
    };
    if (kind == "method") {
      r.method = rest;
      have_method = true;
    } else if (kind == "value") {
      if (r.value.set_str(rest, 10) != 0 || r.value.get_den() == 0)
        throw std::invalid_argument("report: bad value '" + rest + "'");
      r.value.canonicalize();
      have_value = true;
    } else if (kind == "hypothesis") {
      r.hypotheses.push_back(split_entry(rest));
    } else if (kind == "correction") {
      r.corrections.push_back(split_entry(rest));
    } else if (kind == "intermediate") {
      r.intermediates.push_back(split_entry(rest));
    } else if (kind == "note") {
      r.notes.push_back(rest);
    } else {
      throw std::invalid_argument("report: unknown record '" + kind + "'");
    }
  }
  if (!have_method || !have_value) throw std::invalid_argument("report: missing method or value");
  return r;
}

// ---------------------------------------------------------------------------

TauReport tau_reduced(const ChainComplex& x, const std::optional<CellSet>& root, const WeightAssignment* w,
                      ReducedVariant variant) {
  require_dim(x, "tau_reduced");
  const int d = x.dim();
  TauReport r;
  r.method = "reduced";
  const std::size_t n = x.num_cells(d - 1);
  const IntMatrix& top = x.boundary(d);

  if (variant == ReducedVariant::automatic)
    variant = (betti(x, d - 1) == 0 && betti(x, d - 2) == 0) ? ReducedVariant::forest_root : ReducedVariant::general_root;

  CellSet roots;
  Rational correction;
  if (variant == ReducedVariant::forest_root) {
    require_acyclic(r, x, d - 1);
    require_acyclic(r, x, d - 2);
    const IntMatrix& below = x.boundary(d - 1);
    roots = root ? *root : greedy_column_basis(below);
    validate_cells(roots, n, "tau_reduced");
    if (roots.size() != rank_exact(below) || rank_exact(below.select_columns(roots)) != roots.size())
      throw std::invalid_argument("tau_reduced: root is not a maximal spanning (d-1)-forest");
    const Integer tx = torsion(x, d - 2), tr = subcomplex_torsion(x, d - 1, roots);
    r.corrections.emplace_back(sub("t", d - 2) + "(X)", tx.get_str());
    r.corrections.emplace_back(sub("t", d - 2) + "(R)", tr.get_str());
    correction = square(tx) / square(tr);
  } else {
    roots = root ? *root : complement(greedy_row_basis(top), n);
    validate_cells(roots, n, "tau_reduced");
    const Integer tx = torsion(x, d - 1), tr = relative_homology_torsion(x, roots);
    r.corrections.emplace_back(sub("t", d - 1) + "(X)", tx.get_str());
    r.corrections.emplace_back(sub("t", d - 1) + "(X,R)", tr.get_str());
    correction = square(tx) / square(tr);
  }
  const CellSet s = complement(roots, n);
  if (!rows_form_basis(top, s))
    throw std::invalid_argument("tau_reduced: the complement of the root is not a row basis of the top boundary");
  r.intermediates.emplace_back("root", cells_text(x, d - 1, roots));
  r.notes.push_back(variant == ReducedVariant::forest_root ? "root is a maximal (d-1)-forest" : "general root");
  if (w) r.notes.push_back("combinatorially weighted Laplacian");

  const Rational det = det_exact(top_laplacian(x, w).submatrix(s, s));
  r.intermediates.emplace_back("det(L_S)", det.get_str());
  r.value = correction * det;
  return r;
}

TauReport tau_pseudodet(const ChainComplex& x, const WeightAssignment* w) {
  require_dim(x, "tau_pseudodet");
  const int d = x.dim();
  TauReport r;
  r.method = "pseudodet";
  require_acyclic(r, x, d - 1);
  require_acyclic(r, x, d - 2);
  const Integer tx = torsion(x, d - 2);
  r.corrections.emplace_back(sub("t", d - 2) + "(X)", tx.get_str());
  const Rational lambda = pseudodeterminant(top_laplacian(x, w));
  const Rational lower = lower_tau(x, d - 1, r.notes);
  r.intermediates.emplace_back(sub("pdet(L", d - 1) + ")", lambda.get_str());
  r.intermediates.emplace_back(sub("tau", d - 1) + "(X)", lower.get_str());
  if (w) r.notes.push_back("combinatorially weighted Laplacian; tau_{d-1} unweighted");
  r.value = square(tx) * lambda / lower;
  return r;
}

TauReport tau_alternating(const ChainComplex& x) {
  require_dim(x, "tau_alternating");
  const int d = x.dim();
  TauReport r;
  r.method = "alternating";
  for (int k = 0; k < d; ++k) require_acyclic(r, x, k);
  Rational value = 1;
  for (int i = 0; i <= d; ++i) {
    const Rational lambda = pseudodeterminant(laplacian(x, i - 1, LaplacianKind::up_down));
    const Integer t = torsion(x, i - 2);
    r.intermediates.emplace_back(sub("pdet(L", i - 1) + ")", lambda.get_str());
    if (i >= 2) r.corrections.emplace_back(sub("t", i - 2) + "(X)", t.get_str());
    const Rational factor = square(t) * lambda;
    if ((d - i) % 2 == 0) value *= factor; else value /= factor;
  }
  r.value = value;
  return r;
}

TauReport tau_covolume(const ChainComplex& x, const WeightAssignment* w) {
  require_dim(x, "tau_covolume");
  const int d = x.dim();
  TauReport r;
  r.method = "covolume";
  r.notes.push_back("B = im_Z of the top boundary map");
  const IntMatrix basis = hermite_basis(x.boundary(d));
  if (basis.cols() == 0) {
    r.value = 1;
    r.notes.push_back("zero top boundary: empty product");
    return r;
  }
  const Integer tx = torsion(x, d - 1);
  const Integer covol2 = covolume_squared(basis);
  const RatMatrix a = to_rational(basis), at = a.transpose();
  const RatMatrix la = top_laplacian(x, w) * a;
  const RatMatrix m = solve(at * a, at * la);
  if (!(a * m == la)) throw std::logic_error("tau_covolume: image lattice is not invariant under the Laplacian");
  const Rational det = det_exact(m);
  r.corrections.emplace_back(sub("t", d - 1) + "(X)", tx.get_str());
  r.corrections.emplace_back("covol(B)^2", covol2.get_str());
  r.intermediates.emplace_back("det(L_B)", det.get_str());
  r.value = square(tx) * det / Rational(covol2);
  return r;
}

TauReport tau_lyons(const ChainComplex& x, const std::optional<CellSet>& cobase) {
  require_dim(x, "tau_lyons");
  const int d = x.dim();
  TauReport r;
  r.method = "lyons";
  const IntMatrix& top = x.boundary(d);
  const std::size_t n = x.num_cells(d - 1);
  const CellSet s = cobase ? *cobase : greedy_row_basis(top);
  validate_cells(s, n, "tau_lyons");
  if (!rows_form_basis(top, s)) throw std::invalid_argument("tau_lyons: S is not a cobase (row basis of the top boundary)");
  const CellSet roots = complement(s, n);
  const Integer tx = torsion(x, d - 2);
  const Integer tr = subcomplex_torsion(x, d - 1, roots);
  const Integer tp = lyons_tprime(x, d - 1, s);
  r.corrections.emplace_back(sub("t", d - 2) + "(X)", tx.get_str());
  r.corrections.emplace_back(sub("t", d - 2) + "(R)", tr.get_str());
  r.corrections.emplace_back(sub("t'", d - 1) + "(S)", tp.get_str());
  r.intermediates.emplace_back("cobase", cells_text(x, d - 1, s));
  const Rational det = det_exact(top_laplacian(x, nullptr).submatrix(s, s));
  r.intermediates.emplace_back("det(L_S)", det.get_str());
  r.value = square(tx) * det / (square(tr) * square(tp));
  return r;
}

TauReport tau_lyons_spectral(const ChainComplex& x, std::uint64_t cap) {
  require_dim(x, "tau_lyons_spectral");
  const int d = x.dim();
  TauReport r;
  r.method = "lyons-spectral";
  const Integer tx = torsion(x, d - 2);
  const Integer h = lyons_hprime(x, d - 2, cap);
  const Rational lambda = pseudodeterminant(laplacian(x, d - 1, LaplacianKind::up_down));
  r.corrections.emplace_back(sub("t", d - 2) + "(X)", tx.get_str());
  r.corrections.emplace_back(sub("h'", d - 2) + "(X)", h.get_str());
  r.intermediates.emplace_back(sub("pdet(L", d - 1) + ")", lambda.get_str());
  r.value = square(tx) * lambda / Rational(h);
  return r;
}

TauReport tau_algebraic_weighted(const ChainComplex& x, const WeightAssignment& w) {
  const int d = x.dim();
  TauReport r;
  r.method = "algebraic-weighted";
  Rational tau = 1;  // τ_{-1}
  for (int k = 0; k <= d; ++k) {
    if (k >= 1) {
      require_acyclic(r, x, k - 1);
      require_acyclic(r, x, k - 2);
    }
    const Integer t = torsion(x, k - 2);
    const Rational lambda = pseudodeterminant(weighted_laplacian_alg_similar(x, k, w));
    Rational wprod = 1;
    for (std::size_t i = 0; i < x.num_cells(k - 1); ++i) wprod *= w.get(k - 1, i);
    r.intermediates.emplace_back(sub("pdet(Lalg", k - 1) + ")", lambda.get_str());
    if (t != 1) r.corrections.emplace_back(sub("t", k - 2) + "(X)", t.get_str());
    tau = square(t) * lambda * wprod / tau;
    r.intermediates.emplace_back(sub("tau", k) + "(X;w)", tau.get_str());
  }
  r.value = tau;
  return r;
}

TauReport tau_weighted_alternating(const ChainComplex& x, const WeightAssignment& w) {
  require_dim(x, "tau_weighted_alternating");
  const int d = x.dim();
  TauReport r;
  r.method = "weighted-alternating";
  for (int k = 0; k < d; ++k) require_acyclic(r, x, k);
  Rational value = 1;
  for (int k = 0; k < d; ++k) {
    const bool positive = (d - k - 1) % 2 == 0;
    for (std::size_t i = 0; i < x.num_cells(k); ++i) {
      if (positive) value *= w.get(k, i); else value /= w.get(k, i);
    }
  }
  for (int k = -1; k <= d - 1; ++k) {
    const Rational lambda = pseudodeterminant(weighted_laplacian_alg_similar(x, k + 1, w));
    const Integer t = torsion(x, k - 1);
    r.intermediates.emplace_back(sub("pdet(Lalg", k) + ")", lambda.get_str());
    if (k >= 1) r.corrections.emplace_back(sub("t", k - 1) + "(X)", t.get_str());
    const Rational factor = square(t) * lambda;
    if ((d - k - 1) % 2 == 0) value *= factor; else value /= factor;
  }
  r.value = value;
  return r;
}

CharPoly<Integer> rooted_forest_polynomial(const ChainComplex& x) {
  require_dim(x, "rooted_forest_polynomial");
  IntMatrix l = laplacian(x, x.dim() - 1, LaplacianKind::up_down);
  IntMatrix neg(l.rows(), l.cols());
  return char_poly(neg - l);
}

GraphTreeCount graph_matrix_tree(const ChainComplex& g) {
  if (g.dim() != 1) throw std::invalid_argument("graph_matrix_tree: expected a 1-dimensional complex");
  const std::size_t n = g.num_cells(0);
  const IntMatrix& b = g.boundary(1);
  std::vector<std::size_t> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](std::size_t v) {
    while (parent[v] != v) v = parent[v] = parent[parent[v]];
    return v;
  };
  for (std::size_t e = 0; e < b.cols(); ++e) {
    std::vector<std::size_t> ends;
    for (std::size_t v = 0; v < n; ++v)
      if (b(v, e) != 0) ends.push_back(v);
    for (std::size_t i = 1; i < ends.size(); ++i) parent[find(ends[i])] = find(ends[0]);
  }
  GraphTreeCount out;
  CellSet roots;
  std::vector<std::size_t> size_of(n, 0);
  for (std::size_t v = 0; v < n; ++v) ++size_of[find(v)];
  for (std::size_t v = 0; v < n; ++v)
    if (find(v) == v) {
      roots.push_back(v);
      out.component_sizes.push_back(size_of[v]);
    }

  const IntMatrix l = laplacian(g, 0, LaplacianKind::up_down);
  const Rational lambda = pseudodeterminant(l);
  Integer sizes = 1;
  for (auto s : out.component_sizes) sizes *= static_cast<unsigned long>(s);
  const CellSet s = complement(roots, n);
  const Integer reduced = det_exact(l.submatrix(s, s));

  TauReport& r = out.report;
  r.method = "graph";
  r.intermediates.emplace_back("pdet(L_0)", lambda.get_str());
  r.intermediates.emplace_back("component_sizes_product", sizes.get_str());
  r.intermediates.emplace_back("det(reduced L_0)", reduced.get_str());
  r.value = lambda / Rational(sizes);
  if (r.value != Rational(reduced))
    throw std::logic_error("graph_matrix_tree: eigenvalue and reduced-determinant counts disagree");
  out.rooted_forests = lambda.get_num();
  r.intermediates.emplace_back("rooted_forests", out.rooted_forests.get_str());
  return out;
}

std::vector<TauReport> tau_all_methods(const ChainComplex& x, std::uint64_t cap) {
  std::vector<TauReport> out;
  auto attempt = [&](const std::string& name, auto&& fn) {
    try {
      out.push_back(fn());
    } catch (const HypothesisError& e) {
      TauReport r;
      r.method = name;
      r.value = 0;
      r.notes.push_back(std::string("skipped: ") + e.what());
      out.push_back(r);
    } catch (const CapExceeded& e) {
      TauReport r;
      r.method = name;
      r.value = 0;
      r.notes.push_back(std::string("skipped: ") + e.what());
      out.push_back(r);
    }
  };
  attempt("reduced", [&] { return tau_reduced(x); });
  attempt("pseudodet", [&] { return tau_pseudodet(x); });
  attempt("alternating", [&] { return tau_alternating(x); });
  attempt("covolume", [&] { return tau_covolume(x); });
  attempt("lyons", [&] { return tau_lyons(x); });
  attempt("lyons-spectral", [&] { return tau_lyons_spectral(x, cap); });
  attempt("oracle", [&] {
    TauReport r;
    r.method = "oracle";
    auto census = enumerate_forests(x, x.dim(), cap);
    Integer total = 0;
    for (const auto& f : census.forests) total += f.torsion * f.torsion;
    r.intermediates.emplace_back("forests", std::to_string(census.forests.size()));
    r.value = Rational(total);
    return r;
  });
  return out;
}

}  // namespace celltree
