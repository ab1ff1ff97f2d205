#pragma once

#include <bit>
#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "celltree/complex_core.hpp"

namespace celltree {

/// Weakly decreasing positive parts.
class Partition {
 public:
  Partition() = default;
  /// Throws std::invalid_argument for empty input, non-positive parts, or
  /// parts that increase.
  explicit Partition(std::vector<int> parts);

  const std::vector<int>& parts() const { return parts_; }
  std::size_t length() const { return parts_.size(); }
  int operator[](std::size_t i) const { return parts_[i]; }
  int size() const;
  Partition conjugate() const;

  friend bool operator==(const Partition&, const Partition&) = default;

 private:
  std::vector<int> parts_;
};

// ---------------------------------------------------------------------------
// Skeletons of simplices

/// All faces of dimension <= d on vertices [n]; 0 <= d < n <= 12.
SimplicialComplex simplex_skeleton(int n, int d);
/// n^binom(n-2, d).
Integer kalai_count(int n, int d);
/// (v_1⋯v_n)^binom(n-2, d-1) (v_1+⋯+v_n)^binom(n-2, d).
Rational kalai_weighted(int n, int d, const std::vector<Rational>& v);

/// w_σ = Π_{i∈σ} v_i on every face of every dimension (v is 1-based by
/// position: v[0] weights vertex 1).
WeightAssignment vertex_weighting(const SimplicialComplex& s, const std::vector<Rational>& v);

// ---------------------------------------------------------------------------
// Complete colorful complexes

/// Color class i occupies the next sizes[i] vertices, in order.
SimplicialComplex complete_colorful(const std::vector<int>& sizes);
/// Π_{D⊆[r], |D|<=k} σ_D^{binom(r-2-|D|, k-|D|) π_D}; 0 <= k <= r-1.
Integer adin_count(int k, const std::vector<int>& sizes);
/// Π_{d=0}^{k} (2(r-d))^{binom(r,d) binom(r-2-d, k-d)}, the all-twos case.
Integer cross_polytope_count(int k, int r);
/// Vertex-weighted form; v[j][t] weights the t-th vertex of color j.
Rational aalipour_duval_weighted(int k, const std::vector<int>& sizes, const std::vector<std::vector<Rational>>& v);
/// v laid out by color, flattened in vertex order, for vertex_weighting().
std::vector<Rational> flatten_color_weights(const std::vector<std::vector<Rational>>& v);

// ---------------------------------------------------------------------------
// Hypercubes

/// Cells {0,1,I}^n listed by dimension, then lexicographically with
/// 0 < 1 < I; labels are words such as "0I1". n <= 5.
ChainComplex hypercube_complex(int n);
/// The coordinate word of each cell of one dimension, matching labels.
std::vector<std::string> hypercube_cells(int n, int k);
/// τ_k(Q_n): k = 1 uses 2^{2^n-n-1} Π_{j=2}^n j^binom(n,j), k >= 2 the
/// product over j = k+1..n of (2j)^{binom(n,j) binom(j-2,k-1)}.
Integer hypercube_tau(int k, int n);
/// Face weights w_f = Π_{f_i=I} q_i Π_{f_i=0} x_i Π_{f_i=1} y_i.
WeightAssignment hypercube_weights(const ChainComplex& cube, const std::vector<Rational>& q,
                                   const std::vector<Rational>& x, const std::vector<Rational>& y);
/// Closed-form weighted τ_k(Q_n; w) for 1 <= k <= n.
Rational hypercube_weighted(int k, int n, const std::vector<Rational>& q, const std::vector<Rational>& x,
                            const std::vector<Rational>& y);

// ---------------------------------------------------------------------------
// Shifted complexes

/// Componentwise order: σ ⊆ ρ, or equal sizes with σ_i <= ρ_i for all i.
bool componentwise_leq(const Face& a, const Face& b);
/// The shifted complex generated by the given facets, on vertices [n].
/// Throws if the generators have mixed dimensions.
SimplicialComplex shifted_complex(int n, const std::vector<Face>& generators);
/// Every face's componentwise predecessors are faces.
bool is_shifted(const SimplicialComplex& s);

struct Signature {
  Face s;  // a_0 .. a_{j-1}
  int t;   // T = {1, ..., t}
  friend auto operator<=>(const Signature&, const Signature&) = default;
};
/// Signatures of the top-dimensional critical pairs of the deletion of
/// vertex 1, one per critical pair, in lexicographic order of the pair.
std::vector<Signature> shifted_signatures(const SimplicialComplex& s);
/// The coarse (vertex-weighted) enumerator of a pure shifted complex.
Rational shifted_tau_coarse(const SimplicialComplex& s, const std::vector<Rational>& v);
/// Number of facets containing each vertex, as a partition (zeros dropped).
std::vector<int> facet_degrees(const SimplicialComplex& s);

// ---------------------------------------------------------------------------
// Ferrers graphs

/// Rows are vertices 1..n (one per part), columns n+1..n+m; row p is joined
/// to the first λ_p columns.
SimplicialComplex ferrers_graph(const Partition& lambda);
/// x_1⋯x_n y_1⋯y_m Π_{p=2}^{n} (y_1+⋯+y_{λ_p}) Π_{q=2}^{m} (x_1+⋯+x_{λ̃_q}).
Rational ferrers_weighted(const Partition& lambda, const std::vector<Rational>& x, const std::vector<Rational>& y);

// ---------------------------------------------------------------------------
// Matroids

/// A matroid on ground set {0..n-1} given by its rank function on bitmasks.
class MatroidOracle {
 public:
  static constexpr int kMaxGround = 16;

  MatroidOracle(int ground, std::function<int(std::uint32_t)> rank);
  static MatroidOracle graphic(int vertices, const std::vector<std::pair<int, int>>& edges);
  static MatroidOracle uniform(int rank, int ground);

  int ground() const { return n_; }
  int rank(std::uint32_t set) const;
  int rank() const { return rank(full()); }
  bool independent(std::uint32_t set) const { return rank(set) == std::popcount(set); }
  std::uint32_t full() const { return (1u << n_) - 1; }
  std::vector<std::uint32_t> bases() const;
  std::vector<std::uint32_t> flats() const;
  /// Rank axioms on every pair of subsets (small ground sets only).
  bool satisfies_rank_axioms() const;

 private:
  int n_ = 0;
  std::vector<int> rank_;  // memoized over all subsets
};

/// Bivariate polynomial: coefficient of x^i y^j at key (i, j).
using TuttePolynomial = std::map<std::pair<int, int>, Integer>;

/// Deletion-contraction with loop and coloop base cases, memoized on minors.
TuttePolynomial tutte_polynomial(const MatroidOracle& m);
/// Corank-nullity expansion Σ_A (x-1)^{r(E)-r(A)} (y-1)^{|A|-r(A)}.
TuttePolynomial tutte_by_rank_expansion(const MatroidOracle& m);
Integer tutte_evaluate(const TuttePolynomial& t, const Integer& x, const Integer& y);
std::string tutte_to_text(const TuttePolynomial& t);

/// The independence complex; vertex i+1 is ground element i.
SimplicialComplex matroid_complex(const MatroidOracle& m);
/// Π over flats F of |E∖F|^{α(F) β(M/F)}, with α(F) = T_{M|F}(0,1) and β
/// the Crapo invariant. Ground set at most 10.
Integer kook_lee_tau(const MatroidOracle& m);
/// Crapo's β(M) = (-1)^{r(M)} Σ_A (-1)^{|A|} r(A), on the minor given by
/// (restrict to `ground`, contract `contracted`).
Integer crapo_beta(const MatroidOracle& m, std::uint32_t ground, std::uint32_t contracted);

// ---------------------------------------------------------------------------
// Named complexes

/// bipyramid, rp2_cell, rp2_six_vertex, annulus, moebius.
ChainComplex named_complex(const std::string& name);
/// The simplicial structure behind a named complex (all but rp2_cell).
SimplicialComplex named_simplicial(const std::string& name);
const std::vector<std::string>& named_complex_names();

}  // namespace celltree
