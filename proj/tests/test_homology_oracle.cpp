#include <catch_amalgamated.hpp>

#include <numeric>

#include "celltree/families.hpp"
#include "celltree/homology_oracle.hpp"

using namespace celltree;

namespace {

ChainComplex graph(int n, const std::vector<Face>& edges) { return SimplicialComplex::from_facets(n, edges).compile(); }

// One vertex, one loop, two discs attached along it with degrees p and q.
ChainComplex two_disc_complex(int p, int q) {
  return ChainComplex({{"v"}, {"e"}, {"a", "b"}}, {IntMatrix{{0}}, IntMatrix{{p, q}}});
}

CellSet from_mask(std::uint32_t mask, std::size_t n) {
  CellSet s;
  for (std::size_t i = 0; i < n; ++i)
    if (mask >> i & 1) s.push_back(i);
  return s;
}

}  // namespace

TEST_CASE("homology of standard complexes") {
  auto rp2 = named_complex("rp2_six_vertex");
  REQUIRE(betti(rp2, 0) == 0);
  REQUIRE(betti(rp2, 1) == 0);
  REQUIRE(betti(rp2, 2) == 0);
  REQUIRE(torsion(rp2, 1) == 2);
  REQUIRE(homology(rp2, 1).torsion_factors == std::vector<Integer>{2});
  REQUIRE_FALSE(is_z_apc(rp2));

  auto cell = named_complex("rp2_cell");
  REQUIRE(torsion(cell, 1) == 2);
  REQUIRE(betti(cell, 2) == 0);

  auto bip = named_complex("bipyramid");
  REQUIRE(betti(bip, 2) == 2);
  REQUIRE(is_z_apc(bip));

  for (auto name : {"moebius", "annulus"}) {
    auto x = named_complex(name);
    REQUIRE(betti(x, 2) == 0);
    REQUIRE(betti(x, 1) == 1);
    REQUIRE(torsion(x, 1) == 1);
  }

  auto c4 = graph(4, {{1, 2}, {2, 3}, {3, 4}, {1, 4}});
  REQUIRE(betti(c4, 1) == 1);
  REQUIRE(betti(c4, 0) == 0);
  REQUIRE(betti(c4, -1) == 0);
  auto two = graph(4, {{1, 2}, {3, 4}});
  REQUIRE(betti(two, 0) == 1);
  REQUIRE(torsion(two, 5) == 1);
}

TEST_CASE("forest census of small graphs") {
  auto k4 = simplex_skeleton(4, 1).compile();
  auto census = enumerate_forests(k4, 1);
  REQUIRE(census.forests.size() == 16);
  REQUIRE(census.rank == 3);
  REQUIRE(tau_bruteforce(k4, 1) == 16);
  for (const auto& f : census.forests) {
    REQUIRE(f.torsion == 1);
    REQUIRE(is_spanning_tree(k4, f.facets));
  }
  REQUIRE(std::is_sorted(census.forests.begin(), census.forests.end(),
                         [](const ForestEntry& a, const ForestEntry& b) { return a.facets < b.facets; }));
  REQUIRE(tau_bruteforce(k4, 0) == 4);

  auto k3 = simplex_skeleton(3, 1).compile();
  REQUIRE(census_to_text(k3, enumerate_forests(k3, 1)) == "1,2 1,3 ; 1\n1,2 2,3 ; 1\n1,3 2,3 ; 1\n");
  REQUIRE_THROWS_AS(enumerate_forests(k3, 2), std::out_of_range);
}

TEST_CASE("census cap") {
  auto x = simplex_skeleton(7, 2).compile();
  REQUIRE_THROWS_AS(enumerate_forests(x, 2, 1000), CapExceeded);
  REQUIRE_THROWS_AS(rooted_forest_coefficients(x, 1000), CapExceeded);
}

TEST_CASE("K_{6,2} census contains torsion-2 trees") {
  auto x = simplex_skeleton(6, 2).compile();
  auto census = enumerate_forests(x, 2);
  Integer total = 0;
  std::size_t with_torsion = 0;
  for (const auto& f : census.forests) {
    total += f.torsion * f.torsion;
    if (f.torsion == 2) ++with_torsion;
    REQUIRE((f.torsion == 1 || f.torsion == 2));
  }
  REQUIRE(total == 46656);
  REQUIRE(with_torsion > 0);
  // Each 6-vertex RP² appears as a tree with torsion 2.
  auto rp = named_simplicial("rp2_six_vertex");
  auto s = simplex_skeleton(6, 2);
  CellSet t;
  for (const auto& f : rp.facets()) t.push_back(*s.index_of(f));
  std::sort(t.begin(), t.end());
  REQUIRE(subcomplex_torsion(x, 2, t) == 2);
  REQUIRE(is_spanning_tree(x, t));
}

TEST_CASE("weighted census") {
  auto k3 = simplex_skeleton(3, 1).compile();
  WeightAssignment w;
  w.set(1, 0, 2);
  w.set(1, 1, 3);
  w.set(1, 2, Rational(1, 5));
  REQUIRE(tau_weighted_bruteforce(k3, 1, w) == Rational(6) + Rational(2, 5) + Rational(3, 5));
}

TEST_CASE("forest characterizations agree on every facet subset") {
  std::vector<ChainComplex> instances{named_complex("bipyramid"), named_complex("moebius"), named_complex("annulus"),
                                      named_complex("rp2_six_vertex"), named_complex("rp2_cell"),
                                      simplex_skeleton(5, 1).compile(), two_disc_complex(2, 3)};
  for (const auto& x : instances) {
    const std::size_t n = x.num_cells(x.dim());
    REQUIRE(n <= 12);
    for (std::uint32_t mask = 0; mask < (1u << n); ++mask) {
      const CellSet t = from_mask(mask, n);
      const auto c = characterize_forest(x, t);
      REQUIRE(c.maximal_conditions_agree());
      REQUIRE(c.forest_conditions_agree());
      REQUIRE(c.columns_form_basis == is_maximal_spanning_forest(x, t));
      REQUIRE(c.columns_independent == is_spanning_forest(x, t));
    }
  }
}

TEST_CASE("tree torsion is divisible by the torsion of the complex") {
  for (auto name : {"rp2_six_vertex", "rp2_cell", "bipyramid"}) {
    auto x = named_complex(name);
    const Integer tx = torsion(x, x.dim() - 1);
    for (const auto& f : enumerate_forests(x, x.dim()).forests) REQUIRE(f.torsion % tx == 0);
  }
  // H_1 = 0 but no Z-acyclic spanning tree: the two trees have torsion 2 and 3.
  auto x = two_disc_complex(2, 3);
  REQUIRE(torsion(x, 1) == 1);
  REQUIRE(betti(x, 1) == 0);
  auto census = enumerate_forests(x, 2);
  REQUIRE(census.forests.size() == 2);
  REQUIRE(census.forests[0].torsion == 2);
  REQUIRE(census.forests[1].torsion == 3);
  REQUIRE(tau_bruteforce(x, 2) == 13);
}

TEST_CASE("rooted forests of a triangle") {
  auto k3 = simplex_skeleton(3, 1).compile();
  // det(L + zI) = z^3 + 6z^2 + 9z.
  REQUIRE(rooted_forest_coefficients(k3) == std::vector<Integer>{0, 9, 6, 1});
  auto all = enumerate_rooted_forests(k3);
  REQUIRE(all.size() == 16);
  for (const auto& r : all) {
    REQUIRE(r.torsion == 1);
    REQUIRE(rooted_pair_torsion(k3, r.forest, r.roots) == 1);
    REQUIRE(count_orientations(k3, r.forest, r.roots) == 1);
  }
  auto point = ChainComplex({{"v"}, {}}, {IntMatrix(1, 0)});
  REQUIRE(rooted_forest_coefficients(point) == std::vector<Integer>{0, 1});
}

TEST_CASE("relative torsion and orientations on the projective plane") {
  auto x = named_complex("rp2_six_vertex");
  CellSet all(x.num_cells(2));
  std::iota(all.begin(), all.end(), 0);
  // Star of vertex 1 as root.
  CellSet star;
  for (std::size_t i = 0; i < x.num_cells(1); ++i)
    if (x.labels(1)[i].rfind("1,", 0) == 0) star.push_back(i);
  REQUIRE(star.size() == 5);
  const Integer t = rooted_pair_torsion(x, all, star);
  REQUIRE(t == 2);
  REQUIRE(t == relative_homology_torsion(x, star));
  // Edge 23 can go to 234 or 236.
  REQUIRE(count_orientations(x, all, star) == 2);
  REQUIRE(rooted_forest_coefficients(x)[5] > 0);
}

TEST_CASE("cobases and the cobase torsion t'") {
  auto k3 = simplex_skeleton(3, 1).compile();
  REQUIRE(cobases(k3, 0).size() == 3);
  REQUIRE(lyons_hprime(k3, -1) == 3);
  auto moeb = named_complex("moebius");
  for (const auto& s : cobases(moeb, 1)) REQUIRE(lyons_tprime(moeb, 1, s) >= 1);
}
