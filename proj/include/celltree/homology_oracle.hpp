#pragma once

#include <cstdint>
#include <functional>
#include <stdexcept>
#include <string>
#include <vector>

#include "celltree/complex_core.hpp"

namespace celltree {

/// Thrown when a brute-force enumeration would exceed its configured cap.
class CapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline constexpr std::uint64_t kDefaultCap = 5'000'000;

struct HomologySummary {
  int k = 0;
  std::size_t betti = 0;
  Integer torsion_order = 1;
  std::vector<Integer> torsion_factors;  // invariant factors > 1
};

/// Reduced integer homology in dimension k, -1 <= k <= d.
HomologySummary homology(const ChainComplex& x, int k);
std::size_t betti(const ChainComplex& x, int k);
/// t_k(X) = |Tor H_k(X; Z)|.
Integer torsion(const ChainComplex& x, int k);
/// H_k(X; Z) = 0 for every k < d.
bool is_z_apc(const ChainComplex& x);

/// t_{k-1} of the subcomplex X_{<k} ∪ cells, where cells ⊆ X_k: the torsion
/// of the cokernel of ∂_k restricted to those columns.
Integer subcomplex_torsion(const ChainComplex& x, int k, const CellSet& cells);

/// Predicates on a set T of top-dimensional cells.
bool is_spanning_forest(const ChainComplex& x, const CellSet& t);
bool is_maximal_spanning_forest(const ChainComplex& x, const CellSet& t);
bool is_spanning_tree(const ChainComplex& x, const CellSet& t);

/// Each equivalent characterization of spanning forests, evaluated
/// independently (T holds every cell below the top dimension plus the
/// listed facets). The first seven describe maximal spanning forests, the
/// last three spanning forests. "Exactly/at most one chain" is read over Q
/// on the cycles that bound in X.
struct ForestConditions {
  bool betti_top_zero_and_betti_below_equal = false;  // β_d(T)=0, β_{d-1}(T)=β_{d-1}(X)
  bool betti_below_equal_and_size = false;            // β_{d-1}(T)=β_{d-1}(X), |T_d|=|X_d|-β_d(X)
  bool betti_top_zero_and_size = false;               // β_d(T)=0, |T_d|=|X_d|-β_d(X)
  bool unique_bounding_chain = false;                 // exactly one d-chain in T per boundary
  bool maximal_acyclic = false;                       // maximal with β_d(T)=0
  bool minimal_spanning = false;                      // minimal with β_{d-1}(T)=β_{d-1}(X)
  bool columns_form_basis = false;                    // columns of ∂_d(T) a basis of col ∂_d(X)
  bool betti_top_zero = false;                        // β_d(T)=0
  bool at_most_one_bounding_chain = false;
  bool columns_independent = false;

  bool maximal_conditions_agree() const;
  bool forest_conditions_agree() const;
};
ForestConditions characterize_forest(const ChainComplex& x, const CellSet& t);

/// Lexicographically first maximal set of independent columns / rows.
CellSet greedy_column_basis(const IntMatrix& m);
CellSet greedy_row_basis(const IntMatrix& m);

struct ForestEntry {
  CellSet facets;
  Integer torsion;  // t_{k-1} of the forest
};

struct ForestCensus {
  int k = 0;
  std::size_t rank = 0;
  std::vector<ForestEntry> forests;  // lexicographic order
};

/// All maximal spanning k-forests of X (of its k-skeleton when k < d).
/// Throws CapExceeded when binom(|X_k|, rank ∂_k) > cap.
ForestCensus enumerate_forests(const ChainComplex& x, int k, std::uint64_t cap = kDefaultCap);

/// Σ t_{k-1}(T)² over the census.
Integer tau_bruteforce(const ChainComplex& x, int k, std::uint64_t cap = kDefaultCap);
/// Σ t_{k-1}(T)² Π_{σ∈T_k} w_σ; only the k-cells of a forest carry weight.
Rational tau_weighted_bruteforce(const ChainComplex& x, int k, const WeightAssignment& w,
                                 std::uint64_t cap = kDefaultCap);

/// Census export: one line per forest, "label label ... ; torsion".
std::string census_to_text(const ChainComplex& x, const ForestCensus& census);

// ---------------------------------------------------------------------------
// Rooted forests (in the top dimension d)

struct RootedForest {
  CellSet forest;    // F ⊆ X_d
  CellSet roots;     // R ⊆ X_{d-1}
  Integer torsion;   // |H_{d-1}(F, R; Z)| = |det ∂_{X∖R, F}|
};

/// Visits every rooted spanning forest (F, R); the callback receives F, the
/// non-root faces S = X_{d-1} ∖ R, and |det ∂_{S,F}|. The number of (F, S)
/// candidates is binom(|X_{d-1}| + |X_d|, |X_d|); above cap this throws.
void for_each_rooted_forest(const ChainComplex& x,
                            const std::function<void(const CellSet&, const CellSet&, const Integer&)>& visit,
                            std::uint64_t cap = kDefaultCap);
std::vector<RootedForest> enumerate_rooted_forests(const ChainComplex& x, std::uint64_t cap = kDefaultCap);
/// coefficient[j] = Σ over rooted forests with |R| = j of |H_{d-1}(F,R)|².
std::vector<Integer> rooted_forest_coefficients(const ChainComplex& x, std::uint64_t cap = kDefaultCap);

/// Torsion of the relative pair (F, R), computed by Smith normal form.
Integer rooted_pair_torsion(const ChainComplex& x, const CellSet& forest, const CellSet& roots);
/// Number of bijections O: X_{d-1}∖R → F with ρ a face of O(ρ).
std::uint64_t count_orientations(const ChainComplex& x, const CellSet& forest, const CellSet& roots);
/// |Tor H_{d-1}(X, R; Z)| with R ⊆ X_{d-1} (the lower skeleton is implied).
Integer relative_homology_torsion(const ChainComplex& x, const CellSet& roots);

// ---------------------------------------------------------------------------
// Cobase invariants

/// Sets S ⊆ X_j that are row bases of ∂_{j+1} (complements of j-roots).
std::vector<CellSet> cobases(const ChainComplex& x, int j, std::uint64_t cap = kDefaultCap);

/// t'_k(S) = |ker_Z ∂_k / ((ker_Z ∂_k ∩ im_Q ∂_{k+1}) + ker_Z(∂_k restricted to X_k ∖ S))|.
Integer lyons_tprime(const ChainComplex& x, int k, const CellSet& s);

/// The cobase enumerator that normalizes the pseudodeterminant of L_{k+1}:
/// Σ over (k+1)-cobases S of t_k(X_{k+1} ∖ S)² · t'_{k+1}(S)².
/// For a d-complex the relevant call is k = d - 2.
Integer lyons_hprime(const ChainComplex& x, int k, std::uint64_t cap = kDefaultCap);

}  // namespace celltree
