#pragma once

#include <optional>
#include <string>
#include <vector>

#include "celltree/homology_oracle.hpp"

namespace celltree {

/// Finitely generated abelian group Z^free ⊕ Z/d_1 ⊕ ... ⊕ Z/d_r with
/// d_1 | ... | d_r, every d_i > 1.
struct AbelianGroup {
  std::vector<Integer> invariant_factors;
  std::size_t free_rank = 0;

  bool finite() const { return free_rank == 0; }
  /// Order of the torsion part.
  Integer torsion_order() const;
  /// nullopt when the group is infinite.
  std::optional<Integer> order() const;
  /// "0", "Z/3", "Z/2 + Z/4 + Z^2", ...
  std::string to_text() const;

  friend bool operator==(const AbelianGroup&, const AbelianGroup&) = default;
};

/// The cokernel of m (relations as columns).
AbelianGroup cokernel_group(const IntMatrix& m);
AbelianGroup torsion_part(const AbelianGroup& g);

/// K_i(X) = Tor(Z^{X_i} / im L_i) with L_i = ∂_{i+1}∂_{i+1}ᵀ; 0 <= i < d.
AbelianGroup critical_group(const ChainComplex& x, int i);

/// An i-tree of the i-skeleton with t_{i-1} = 1, if one exists within cap:
/// the greedy column basis of ∂_i when it qualifies, else the first
/// qualifying entry of the forest census.
std::optional<CellSet> torsion_free_tree(const ChainComplex& x, int i, std::uint64_t cap = kDefaultCap);

/// Z^{|S|} / im L_S with S = X_i ∖ tree. Throws if tree is not a
/// torsion-free i-tree.
AbelianGroup critical_group_reduced(const ChainComplex& x, int i, const CellSet& tree);

enum class LatticeRole { cut, flow };

struct LatticeData {
  std::size_t ambient = 0;
  IntMatrix basis;  // columns
  LatticeRole role = LatticeRole::cut;

  std::size_t rank() const { return basis.cols(); }
};

/// C_k(X) = im_Z ∂_kᵀ and F_k(X) = ker_Z ∂_k inside Z^{X_k}; 1 <= k <= d.
LatticeData cut_lattice(const ChainComplex& x, int k);
LatticeData flow_lattice(const ChainComplex& x, int k);

/// L♯/L, read off the Smith form of the Gram matrix AᵀA.
AbelianGroup discriminant_group(const LatticeData& l);

struct FundamentalVectors {
  std::vector<std::vector<Integer>> bonds;     // one per facet of T, in order
  std::vector<std::vector<Integer>> circuits;  // one per facet outside T, in order
};

/// Primitive integer characteristic vectors of the fundamental bonds and
/// circuits of a spanning tree T ⊆ X_d. The entry at the defining facet is
/// made positive.
FundamentalVectors fundamental_vectors(const ChainComplex& x, const CellSet& tree);

/// Columns of a vector family as a matrix with `rows` rows.
IntMatrix vectors_as_columns(const std::vector<std::vector<Integer>>& v, std::size_t rows);

struct SequenceOrders {
  Integer critical;          // |K_{d-1}(X)|
  Integer cut_discriminant;  // |C♯/C|
  Integer flow_discriminant; // |F♯/F|
  Integer cut_plus_flow;     // |Z^n / (C ⊕ F)|
  Integer error_term;        // |E| = t_{d-1}(X)
  Integer cocritical;        // |Z^n/(C⊕F)| / |E|, inferred, never checked independently
  bool first_sequence = false;   // |K| = |Z^n/(C⊕F)| · |E|
  bool second_sequence = false;  // |Z^n/(C⊕F)| = |E| · |F♯/F|
  bool critical_is_cut = false;  // |K| = |C♯/C|
  bool all_equal = false;        // every order equal (expected iff E trivial)

  bool consistent() const;
  std::string to_text() const;
};

/// Orders of the groups in the two cut/flow exact sequences in the top
/// dimension d, with n = |X_d|.
SequenceOrders sequence_order_check(const ChainComplex& x);

}  // namespace celltree
