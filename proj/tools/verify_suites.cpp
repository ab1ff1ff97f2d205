#include "verify_suites.hpp"

#include <functional>
#include <sstream>
#include <stdexcept>

#include "celltree/critical_cutflow.hpp"
#include "celltree/families.hpp"
#include "celltree/matrix_forest.hpp"

namespace celltree::cli {

Rational WeightSampler::next() {
  const long p = static_cast<long>(rng_() % 20) + 1;
  const long q = static_cast<long>(rng_() % 20) + 1;
  Rational r(p, q);
  r.canonicalize();
  return r;
}

std::vector<Rational> WeightSampler::values(std::size_t n) {
  std::vector<Rational> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(next());
  return out;
}

WeightAssignment WeightSampler::cells(const ChainComplex& x, int lo, int hi) {
  WeightAssignment w;
  for (int k = lo; k <= hi; ++k)
    for (std::size_t i = 0; i < x.num_cells(k); ++i) w.set(k, i, next());
  return w;
}

namespace {

std::string join(const std::vector<int>& v, const char* sep = ",") {
  std::string s;
  for (std::size_t i = 0; i < v.size(); ++i) s += (i ? sep : "") + std::to_string(v[i]);
  return s;
}

class Recorder {
 public:
  explicit Recorder(const SuiteOptions& opt) : opt_(opt) {}

  void compare(const std::string& inst, const std::string& check, const Rational& value, const Rational& expected) {
    rows_.push_back({inst, check, value.get_str(), expected.get_str(), value == expected ? Status::ok : Status::mismatch});
  }
  void flag(const std::string& inst, const std::string& check, const std::string& value, bool ok) {
    rows_.push_back({inst, check, value, ok ? "holds" : "fails", ok ? Status::ok : Status::mismatch});
  }
  void skip(const std::string& inst, const std::string& check, const std::string& why) {
    rows_.push_back({inst, check, "-", why, Status::skipped});
  }
  // Runs fn; a cap overrun or an unmet hypothesis becomes a skipped row.
  void guarded(const std::string& inst, const std::string& check, const std::function<void()>& fn) {
    try {
      fn();
    } catch (const CapExceeded& e) {
      skip(inst, check, std::string("cap: ") + e.what());
    } catch (const HypothesisError& e) {
      skip(inst, check, std::string("hypothesis: ") + e.what());
    }
  }

  std::uint64_t cap() const { return opt_.cap; }
  std::vector<Row> take() { return std::move(rows_); }

 private:
  const SuiteOptions& opt_;
  std::vector<Row> rows_;
};

// τ_k through the alternating product on the k-skeleton (|X_0| when k = 0).
Rational tau_reference(const ChainComplex& x, int k) {
  if (k == 0) return Rational(static_cast<long>(x.num_cells(0)));
  return tau_alternating(skeleton(x, k)).value;
}

std::vector<int> twos(int r) { return std::vector<int>(r, 2); }

struct NamedInstance {
  std::string name;
  ChainComplex x;
};

std::vector<NamedInstance> theorem_instances() {
  std::vector<NamedInstance> out;
  for (int n = 3; n <= 6; ++n) out.push_back({"K" + std::to_string(n), simplex_skeleton(n, 1).compile()});
  out.push_back({"K3,3", complete_colorful({3, 3}).compile()});
  out.push_back({"C4", SimplicialComplex::from_facets(4, {{1, 2}, {2, 3}, {3, 4}, {1, 4}}).compile()});
  for (const auto& name : named_complex_names()) out.push_back({name, named_complex(name)});
  out.push_back({"simplex-skeleton(5,2)", simplex_skeleton(5, 2).compile()});
  out.push_back({"simplex-skeleton(6,2)", simplex_skeleton(6, 2).compile()});
  out.push_back({"octahedron", complete_colorful(twos(3)).compile()});
  out.push_back({"cube-boundary", skeleton(hypercube_complex(3), 2)});
  return out;
}

// ---------------------------------------------------------------------------

void families_suite(Recorder& rec, const SuiteOptions& opt) {
  for (auto [n, d] : std::vector<std::pair<int, int>>{{4, 1}, {5, 1}, {6, 1}, {7, 1}, {4, 2}, {5, 2}, {6, 2}, {6, 3}}) {
    const std::string inst = "simplex-skeleton(" + std::to_string(n) + "," + std::to_string(d) + ")";
    auto x = simplex_skeleton(n, d).compile();
    const Rational f(kalai_count(n, d));
    rec.compare(inst, "n^binom(n-2,d) vs alternating", f, tau_alternating(x).value);
    rec.guarded(inst, "n^binom(n-2,d) vs oracle", [&] { rec.compare(inst, "n^binom(n-2,d) vs oracle", f, tau_bruteforce(x, d, rec.cap())); });
  }

  for (const auto& sizes : std::vector<std::vector<int>>{{2, 2, 2}, {2, 2, 3}, {3, 3}, {2, 2, 2, 2}}) {
    const std::string inst = "complete-colorful(" + join(sizes) + ")";
    auto x = complete_colorful(sizes).compile();
    for (int k = 1; k < static_cast<int>(sizes.size()); ++k) {
      const std::string check = "colorful product k=" + std::to_string(k);
      const Rational f(adin_count(k, sizes));
      rec.compare(inst, check + " vs alternating", f, tau_reference(x, k));
      rec.guarded(inst, check + " vs oracle", [&] { rec.compare(inst, check + " vs oracle", f, tau_bruteforce(x, k, rec.cap())); });
    }
  }
  for (int r = 3; r <= 4; ++r)
    for (int k = 1; k < r; ++k)
      rec.compare("cross-polytope(" + std::to_string(r) + ")", "all-twos product k=" + std::to_string(k),
                  Rational(cross_polytope_count(k, r)), Rational(adin_count(k, twos(r))));

  for (int n = 2; n <= 4; ++n) {
    const std::string inst = "hypercube(" + std::to_string(n) + ")";
    auto q = hypercube_complex(n);
    for (int k = 1; k <= n; ++k) {
      const std::string check = "cube product k=" + std::to_string(k);
      const Rational f(hypercube_tau(k, n));
      rec.compare(inst, check + " vs alternating", f, tau_reference(q, k));
      if (n <= 3)
        rec.guarded(inst, check + " vs oracle", [&] { rec.compare(inst, check + " vs oracle", f, tau_bruteforce(q, k, rec.cap())); });
    }
  }

  const std::vector<std::pair<std::string, MatroidOracle>> matroids{
      {"graphic(K4)", MatroidOracle::graphic(4, {{1, 2}, {1, 3}, {1, 4}, {2, 3}, {2, 4}, {3, 4}})},
      {"graphic(C4+chord)", MatroidOracle::graphic(4, {{1, 2}, {2, 3}, {3, 4}, {1, 4}, {1, 3}})},
      {"uniform(2,4)", MatroidOracle::uniform(2, 4)}};
  for (const auto& [inst, m] : matroids) {
    rec.compare(inst, "T(1,1) vs bases", Rational(tutte_evaluate(tutte_polynomial(m), 1, 1)),
                Rational(static_cast<long>(m.bases().size())));
    auto x = matroid_complex(m).compile();
    rec.guarded(inst, "flat product vs oracle",
                [&] { rec.compare(inst, "flat product vs oracle", Rational(kook_lee_tau(m)), tau_bruteforce(x, x.dim(), rec.cap())); });
  }

  // Weighted closed forms against the weighted census.
  WeightSampler sampler(opt.seed);
  for (int s = 0; s < opt.samples; ++s) {
    const std::string tag = " sample " + std::to_string(s + 1);
    for (auto [n, d] : std::vector<std::pair<int, int>>{{4, 1}, {5, 1}, {4, 2}, {5, 2}}) {
      const std::string inst = "simplex-skeleton(" + std::to_string(n) + "," + std::to_string(d) + ")";
      auto sc = simplex_skeleton(n, d);
      const auto v = sampler.values(n);
      const auto w = vertex_weighting(sc, v);
      rec.guarded(inst, "vertex-weighted product" + tag, [&] {
        rec.compare(inst, "vertex-weighted product" + tag, kalai_weighted(n, d, v),
                    tau_weighted_bruteforce(sc.compile(), d, w, rec.cap()));
      });
    }
    {
      const std::vector<int> sizes = twos(3);
      std::vector<std::vector<Rational>> v;
      for (int c : sizes) v.push_back(sampler.values(c));
      auto sc = complete_colorful(sizes);
      const auto w = vertex_weighting(sc, flatten_color_weights(v));
      for (int k = 1; k <= 2; ++k)
        rec.guarded("complete-colorful(2,2,2)", "vertex-weighted colorful k=" + std::to_string(k) + tag, [&] {
          rec.compare("complete-colorful(2,2,2)", "vertex-weighted colorful k=" + std::to_string(k) + tag,
                      aalipour_duval_weighted(k, sizes, v), tau_weighted_bruteforce(sc.compile(), k, w, rec.cap()));
        });
    }
    for (const auto& parts : std::vector<std::vector<int>>{{3, 2, 1}, {4, 2, 2, 1}, {3, 3}}) {
      Partition l(parts);
      const auto xs = sampler.values(l.length()), ys = sampler.values(l.conjugate().length());
      std::vector<Rational> all = xs;
      all.insert(all.end(), ys.begin(), ys.end());
      auto sc = ferrers_graph(l);
      const auto w = vertex_weighting(sc, all);
      const std::string inst = "ferrers(" + join(parts) + ")";
      rec.guarded(inst, "row/column product" + tag, [&] {
        rec.compare(inst, "row/column product" + tag, ferrers_weighted(l, xs, ys), tau_weighted_bruteforce(sc.compile(), 1, w, rec.cap()));
      });
    }
    for (int n = 2; n <= 3; ++n) {
      const auto q = sampler.values(n), xv = sampler.values(n), yv = sampler.values(n);
      auto cube = hypercube_complex(n);
      const auto w = hypercube_weights(cube, q, xv, yv);
      const std::string inst = "hypercube(" + std::to_string(n) + ")";
      for (int k = 1; k <= n; ++k)
        rec.guarded(inst, "weighted cube product k=" + std::to_string(k) + tag, [&] {
          rec.compare(inst, "weighted cube product k=" + std::to_string(k) + tag, hypercube_weighted(k, n, q, xv, yv),
                      tau_weighted_bruteforce(cube, k, w, rec.cap()));
        });
    }
    for (const auto& [n, gens] : std::vector<std::pair<int, std::vector<Face>>>{
             {5, {{2, 3, 5}}}, {4, {{1, 4}, {2, 3}}}, {6, {{2, 4, 6}}}}) {
      auto sc = shifted_complex(n, gens);
      const auto v = sampler.values(n);
      const auto w = vertex_weighting(sc, v);
      std::string inst = "shifted(" + std::to_string(n);
      for (const auto& g : gens) inst += ";" + join(g);
      inst += ")";
      rec.guarded(inst, "signature product" + tag, [&] {
        rec.compare(inst, "signature product" + tag, shifted_tau_coarse(sc, v),
                    tau_weighted_bruteforce(sc.compile(), sc.dim(), w, rec.cap()));
      });
    }
  }
}

void theorems_suite(Recorder& rec, const SuiteOptions& opt) {
  for (const auto& [inst, x] : theorem_instances()) {
    const auto reports = tau_all_methods(x, rec.cap());
    std::optional<Rational> reference;
    for (const auto& r : reports)
      if (r.method == "oracle" && (r.notes.empty() || r.notes.front().rfind("skipped", 0) != 0)) reference = r.value;
    if (!reference) reference = tau_covolume(x).value;
    for (const auto& r : reports) {
      if (!r.notes.empty() && r.notes.front().rfind("skipped", 0) == 0) {
        rec.skip(inst, r.method, r.notes.front().substr(9));
        continue;
      }
      rec.compare(inst, r.method, r.value, *reference);
    }
  }

  WeightSampler sampler(opt.seed);
  for (const std::string name : {"bipyramid", "rp2_six_vertex", "moebius", "annulus"}) {
    auto x = named_complex(name);
    const int d = x.dim();
    for (int s = 0; s < opt.samples; ++s) {
      const std::string tag = " sample " + std::to_string(s + 1);
      const auto w = sampler.cells(x, 0, d);
      Rational expected;
      try {
        expected = tau_weighted_bruteforce(x, d, w, rec.cap());
      } catch (const CapExceeded& e) {
        rec.skip(name, "weighted" + tag, std::string("cap: ") + e.what());
        continue;
      }
      const std::vector<std::pair<std::string, std::function<Rational()>>> methods{
          {"reduced", [&] { return tau_reduced(x, std::nullopt, &w).value; }},
          {"pseudodet", [&] { return tau_pseudodet(x, &w).value; }},
          {"covolume", [&] { return tau_covolume(x, &w).value; }},
          {"algebraic-weighted", [&] { return tau_algebraic_weighted(x, w).value; }},
          {"weighted-alternating", [&] { return tau_weighted_alternating(x, w).value; }}};
      for (const auto& [m, fn] : methods)
        rec.guarded(name, m + tag, [&] { rec.compare(name, m + tag, fn(), expected); });
    }
  }

  for (const auto& [inst, x] : theorem_instances()) {
    if (inst == "K5" || inst == "K6" || inst == "simplex-skeleton(6,2)" || inst == "cube-boundary") continue;
    rec.guarded(inst, "det(L+zI) vs rooted census", [&] {
      const auto coeffs = rooted_forest_coefficients(x, rec.cap());
      const auto poly = rooted_forest_polynomial(x).coefficients;
      std::string text;
      for (const auto& c : poly) text += (text.empty() ? "" : " ") + c.get_str();
      rec.flag(inst, "det(L+zI) vs rooted census", text, coeffs == poly);
    });
  }
}

void critical_suite(Recorder& rec, const SuiteOptions&) {
  for (const auto& [inst, x] : theorem_instances()) {
    if (inst == "simplex-skeleton(6,2)" || inst == "K6") continue;
    for (int i = 0; i < x.dim(); ++i) {
      const std::string tag = " i=" + std::to_string(i);
      const AbelianGroup k = critical_group(x, i);
      rec.compare(inst, "|K_i| vs tau_{i+1}" + tag, Rational(k.torsion_order()), tau_covolume(skeleton(x, i + 1)).value);
      rec.guarded(inst, "two constructions" + tag, [&] {
        auto tree = torsion_free_tree(x, i, rec.cap());
        if (!tree) {
          rec.skip(inst, "two constructions" + tag, "no torsion-free tree");
          return;
        }
        const AbelianGroup r = critical_group_reduced(x, i, *tree);
        const bool ok = torsion_part(r) == k && r.free_rank == betti(x, i);
        rec.flag(inst, "two constructions" + tag, k.to_text() + " / " + r.to_text(), ok);
      });
    }
    const auto s = sequence_order_check(x);
    rec.flag(inst, "cut/flow sequence orders",
             "K " + s.critical.get_str() + ", E " + s.error_term.get_str() + ", C+F " + s.cut_plus_flow.get_str(),
             s.consistent());
  }
}

void duality_suite(Recorder& rec, const SuiteOptions& opt) {
  for (int n = 3; n <= 4; ++n) {
    auto x = skeleton(hypercube_complex(n), n - 1);
    auto y = complete_colorful(twos(n)).compile();
    const std::string inst = "cube(" + std::to_string(n) + ")/cross-polytope(" + std::to_string(n) + ")";
    for (int k = 0; k <= n - 1; ++k)
      rec.compare(inst, "tau_" + std::to_string(k) + " vs tau_" + std::to_string(n - 1 - k), tau_reference(x, k),
                  tau_reference(y, n - 1 - k));
    auto dual = dual_chain_complex(x);
    for (int k = 0; k <= n - 1; ++k)
      rec.compare(inst, "dual complex tau_" + std::to_string(n - 1 - k), tau_reference(dual, n - 1 - k),
                  tau_reference(y, n - 1 - k));
  }

  WeightSampler sampler(opt.seed);
  for (const auto& [inst, x] : std::vector<NamedInstance>{{"cube-boundary", skeleton(hypercube_complex(3), 2)},
                                                            {"octahedron", complete_colorful(twos(3)).compile()}}) {
    const int d = x.dim();
    auto y = dual_chain_complex(x);
    for (int s = 0; s < opt.samples; ++s) {
      const auto w = sampler.cells(x, 0, d);
      const auto ws = dual_weights(x, w);
      for (int k = 0; k <= d; ++k) {
        const std::string check = "weighted tau_" + std::to_string(k) + " vs dual sample " + std::to_string(s + 1);
        rec.guarded(inst, check, [&] {
          Rational scale = 1;
          for (std::size_t i = 0; i < x.num_cells(k); ++i) scale *= w.get(k, i);
          rec.compare(inst, check, tau_weighted_bruteforce(x, k, w, rec.cap()),
                      scale * tau_weighted_bruteforce(y, d - k, ws, rec.cap()));
        });
      }
    }
  }
}

const char* status_text(Status s) {
  switch (s) {
    case Status::ok: return "ok";
    case Status::mismatch: return "MISMATCH";
    case Status::skipped: return "skipped";
  }
  return "?";
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names{"families", "theorems", "critical", "duality"};
  return names;
}

std::vector<Row> run_suite(const std::string& name, const SuiteOptions& opt) {
  Recorder rec(opt);
  if (name == "families") families_suite(rec, opt);
  else if (name == "theorems") theorems_suite(rec, opt);
  else if (name == "critical") critical_suite(rec, opt);
  else if (name == "duality") duality_suite(rec, opt);
  else throw std::invalid_argument("unknown suite '" + name + "'");
  return rec.take();
}

std::string format_rows(const std::string& suite, const std::vector<Row>& rows) {
  std::ostringstream out;
  std::size_t ok = 0, bad = 0, skipped = 0;
  for (const auto& r : rows) {
    out << suite << " | " << r.instance << " | " << r.check << " | " << r.value << " | " << r.expected << " | "
        << status_text(r.status) << "\n";
    if (r.status == Status::ok) ++ok;
    else if (r.status == Status::mismatch) ++bad;
    else ++skipped;
  }
  out << suite << " summary: " << ok << " ok, " << bad << " mismatch, " << skipped << " skipped\n";
  return out.str();
}

}  // namespace celltree::cli
