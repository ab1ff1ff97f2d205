#include <catch_amalgamated.hpp>

#include <bit>
#include <numeric>
#include <random>

#include "celltree/families.hpp"
#include "celltree/matrix_forest.hpp"

using namespace celltree;

namespace {

WeightAssignment random_top_weights(const ChainComplex& x, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> pick(1, 20);
  WeightAssignment w;
  for (std::size_t i = 0; i < x.num_cells(x.dim()); ++i) w.set(x.dim(), i, Rational(pick(rng), pick(rng)));
  return w;
}

std::vector<CellSet> subsets_of_size(std::size_t n, std::size_t k) {
  std::vector<CellSet> out;
  for (std::uint32_t m = 0; m < (1u << n); ++m) {
    if (static_cast<std::size_t>(std::popcount(m)) != k) continue;
    CellSet s;
    for (std::size_t i = 0; i < n; ++i)
      if (m >> i & 1) s.push_back(i);
    out.push_back(s);
  }
  return out;
}

}  // namespace

TEST_CASE("every applicable method agrees with the census") {
  for (const auto& name : named_complex_names()) {
    auto x = named_complex(name);
    const Integer expected = tau_bruteforce(x, x.dim());
    for (const auto& r : tau_all_methods(x)) {
      INFO(name << " " << r.method);
      if (r.notes.empty() || r.notes.front().rfind("skipped", 0) != 0) REQUIRE(r.value == expected);
    }
  }
}

TEST_CASE("known counts") {
  REQUIRE(tau_reduced(named_complex("bipyramid")).value == 15);
  REQUIRE(tau_alternating(named_complex("rp2_six_vertex")).value == 4);
  REQUIRE(tau_pseudodet(named_complex("rp2_six_vertex")).value == 4);
  REQUIRE(tau_covolume(named_complex("rp2_cell")).value == 4);
  REQUIRE(tau_lyons(named_complex("moebius")).value == 1);
  REQUIRE(tau_lyons_spectral(named_complex("annulus")).value == 1);
  REQUIRE(tau_alternating(simplex_skeleton(6, 2).compile()).value == 46656);
}

TEST_CASE("Cayley's formula by every method") {
  for (int n = 2; n <= 7; ++n) {
    auto x = simplex_skeleton(n, 1).compile();
    Integer cayley;
    mpz_ui_pow_ui(cayley.get_mpz_t(), n, n - 2);
    REQUIRE(tau_reduced(x).value == cayley);
    REQUIRE(tau_pseudodet(x).value == cayley);
    REQUIRE(tau_alternating(x).value == cayley);
    REQUIRE(tau_covolume(x).value == cayley);
    REQUIRE(tau_lyons(x).value == cayley);
    REQUIRE(graph_matrix_tree(x).report.value == cayley);
  }
}

TEST_CASE("reduced determinant does not depend on the root") {
  auto x = named_complex("bipyramid");
  const IntMatrix& below = x.boundary(1);
  std::size_t forest_roots = 0;
  for (const auto& r : subsets_of_size(x.num_cells(1), rank_exact(below))) {
    if (rank_exact(below.select_columns(r)) != r.size()) continue;
    ++forest_roots;
    REQUIRE(tau_reduced(x, r, nullptr, ReducedVariant::forest_root).value == 15);
  }
  // Spanning trees of the bipyramid graph (K5 minus the edge 45).
  REQUIRE(forest_roots == 75);

  // Every general root of RP².
  auto rp2 = named_complex("rp2_six_vertex");
  const std::size_t n = rp2.num_cells(1), r = rank_exact(rp2.boundary(2));
  std::size_t general = 0;
  const IntMatrix rows = rp2.boundary(2).transpose();
  for (const auto& s : subsets_of_size(n, r)) {
    if (rank_exact(rows.select_columns(s)) != r) continue;
    ++general;
    auto report = tau_reduced(rp2, complement(s, n), nullptr, ReducedVariant::general_root);
    REQUIRE(report.value == 4);
  }
  REQUIRE(general > 0);
}

TEST_CASE("hypotheses are enforced") {
  auto moeb = named_complex("moebius");
  REQUIRE_THROWS_AS(tau_alternating(moeb), HypothesisError);
  REQUIRE_THROWS_AS(tau_pseudodet(moeb), HypothesisError);
  REQUIRE_THROWS_AS(tau_reduced(moeb, std::nullopt, nullptr, ReducedVariant::forest_root), HypothesisError);
  REQUIRE(tau_reduced(moeb).value == 1);
  REQUIRE(tau_covolume(moeb).value == 1);

  auto k4 = simplex_skeleton(4, 1).compile();
  // Not a spanning tree of K4.
  REQUIRE_THROWS_AS(tau_reduced(k4, CellSet{0, 1}, nullptr, ReducedVariant::forest_root), std::invalid_argument);
  REQUIRE_THROWS_AS(tau_lyons(k4, CellSet{0, 1}), std::invalid_argument);
}

TEST_CASE("RP² spectra and corrections") {
  auto x = named_complex("rp2_six_vertex");
  REQUIRE(pseudodeterminant(laplacian(x, 1, LaplacianKind::up_down)) == Integer(81 * 64));
  REQUIRE(pseudodeterminant(laplacian(x, 0, LaplacianKind::up_down)) == Integer(6 * 6 * 6 * 6 * 6));
  REQUIRE(pseudodeterminant(laplacian(x, -1, LaplacianKind::up_down)) == 6);
  auto r = tau_covolume(x);
  REQUIRE(r.value == 4);
  bool saw_torsion = false;
  for (const auto& [k, v] : r.corrections)
    if (v == "2") saw_torsion = true;
  REQUIRE(saw_torsion);
}

TEST_CASE("weighted methods reduce at unit weights and agree at random weights") {
  for (auto name : {"bipyramid", "rp2_six_vertex"}) {
    auto x = named_complex(name);
    const auto ones = WeightAssignment::ones(x);
    const Integer plain = tau_bruteforce(x, 2);
    REQUIRE(tau_reduced(x, std::nullopt, &ones).value == plain);
    REQUIRE(tau_pseudodet(x, &ones).value == plain);
    REQUIRE(tau_covolume(x, &ones).value == plain);
    for (std::uint64_t seed = 1; seed <= 3; ++seed) {
      const auto w = random_top_weights(x, seed);
      const Rational expected = tau_weighted_bruteforce(x, 2, w);
      REQUIRE(tau_reduced(x, std::nullopt, &w).value == expected);
      REQUIRE(tau_pseudodet(x, &w).value == expected);
      REQUIRE(tau_covolume(x, &w).value == expected);
    }
  }
}

TEST_CASE("algebraic weighting on vertex-weighted simplices") {
  const std::vector<Rational> v{2, Rational(1, 3), 5, Rational(7, 2), 1};
  auto s = simplex_skeleton(5, 2);
  auto x = s.compile();
  auto w = vertex_weighting(s, v);
  WeightAssignment top;
  for (std::size_t i = 0; i < x.num_cells(2); ++i) top.set(2, i, w.get(2, i));
  const Rational expected = tau_weighted_bruteforce(x, 2, top);
  REQUIRE(tau_algebraic_weighted(x, w).value == expected);
  REQUIRE(tau_weighted_alternating(x, w).value == expected);
  const auto ones = WeightAssignment::ones(x);
  REQUIRE(tau_algebraic_weighted(x, ones).value == tau_bruteforce(x, 2));
  REQUIRE(tau_weighted_alternating(x, ones).value == tau_bruteforce(x, 2));
}

TEST_CASE("graph matrix-tree theorem") {
  auto k33 = SimplicialComplex::from_facets(6, {{1, 4}, {1, 5}, {1, 6}, {2, 4}, {2, 5}, {2, 6}, {3, 4}, {3, 5}, {3, 6}})
                 .compile();
  REQUIRE(graph_matrix_tree(k33).report.value == 81);

  auto k3k2 = SimplicialComplex::from_facets(5, {{1, 2}, {1, 3}, {2, 3}, {4, 5}}).compile();
  auto g = graph_matrix_tree(k3k2);
  REQUIRE(g.report.value == 3);
  // 𝛌(L) = (3·3)·2: each maximal forest rooted at one vertex per component.
  REQUIRE(g.rooted_forests == 18);
  REQUIRE(g.component_sizes == std::vector<std::size_t>{3, 2});
  REQUIRE(tau_bruteforce(k3k2, 1) == 3);
}

TEST_CASE("rooted forest polynomial matches the enumeration") {
  for (auto name : {"rp2_six_vertex", "bipyramid", "moebius"}) {
    auto x = named_complex(name);
    REQUIRE(rooted_forest_polynomial(x).coefficients == rooted_forest_coefficients(x));
  }
  auto k3 = simplex_skeleton(3, 1).compile();
  REQUIRE(rooted_forest_polynomial(k3).coefficients == std::vector<Integer>{0, 9, 6, 1});
}

TEST_CASE("reports round trip through text") {
  auto r = tau_reduced(named_complex("rp2_six_vertex"));
  const std::string text = r.to_text();
  REQUIRE(TauReport::parse(text) == r);
  REQUIRE(TauReport::parse(text).to_text() == text);
  REQUIRE_THROWS(TauReport::parse("garbage"));
}
