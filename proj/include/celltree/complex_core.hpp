#pragma once

#include <map>
#include <tuple>
#include <optional>
#include <string>
#include <vector>

#include "celltree/exact_linalg.hpp"

namespace celltree {

/// Sorted list of cell indices within one dimension.
using CellSet = std::vector<std::size_t>;
/// Sorted vertex list of a simplex; vertices are 1-based.
using Face = std::vector<int>;

struct CellId {
  int dimension = 0;
  std::size_t index = 0;
  std::string label;
};

/// A finite cell complex stored purely as its integer boundary matrices.
/// Dimension -1 is the empty cell: |X_{-1}| = 1 and the augmentation ∂_0
/// is the all-ones row sending every vertex to it.
class ChainComplex {
 public:
  ChainComplex() = default;
  /// labels[k] names the k-cells for k = 0..d; boundaries[k-1] is ∂_k for
  /// k = 1..d. Shapes and ∂∂ = 0 (augmentation included) are checked.
  ChainComplex(std::vector<std::vector<std::string>> labels, std::vector<IntMatrix> boundaries);

  int dim() const { return static_cast<int>(labels_.size()) - 1; }
  /// 1 for k = -1, 0 outside [-1, d].
  std::size_t num_cells(int k) const;
  const std::vector<std::string>& labels(int k) const;
  CellId cell(int k, std::size_t index) const;
  std::optional<std::size_t> find(int k, const std::string& label) const;

  /// ∂_k for 0 <= k <= d; ∂_0 is the augmentation row.
  const IntMatrix& boundary(int k) const;
  /// Like boundary() but total over all k: outside [0, d] it returns the
  /// zero map of the right shape (e.g. |X_d| x 0 for k = d+1).
  IntMatrix boundary_or_zero(int k) const;

  friend bool operator==(const ChainComplex&, const ChainComplex&) = default;

 private:
  std::vector<std::vector<std::string>> labels_;
  std::vector<IntMatrix> boundaries_;  // boundaries_[k] = ∂_k, k = 0..d
};

/// Abstract simplicial complex on vertex range [n], generated by its facets.
class SimplicialComplex {
 public:
  SimplicialComplex() = default;
  /// Facets are sorted and deduplicated; facets contained in another facet
  /// are dropped. Throws std::invalid_argument for vertices outside [n] or
  /// empty facets.
  static SimplicialComplex from_facets(int n, std::vector<Face> facets);

  int vertex_count() const { return n_; }
  int dim() const { return static_cast<int>(faces_.size()) - 1; }
  const std::vector<Face>& facets() const { return facets_; }
  /// Faces of dimension k in lexicographic order (k = -1 gives {∅}).
  const std::vector<Face>& faces(int k) const;
  std::optional<std::size_t> index_of(const Face& f) const;
  bool contains(const Face& f) const { return index_of(f).has_value(); }
  bool is_pure() const;

  /// Simplices oriented by increasing vertex order; dropping the i-th vertex
  /// (0-based) contributes sign (-1)^i.
  ChainComplex compile() const;

  friend bool operator==(const SimplicialComplex& a, const SimplicialComplex& b) {
    return a.n_ == b.n_ && a.facets_ == b.facets_;
  }

 private:
  int n_ = 0;
  std::vector<Face> facets_;
  std::vector<std::vector<Face>> faces_;  // faces_[k], k = 0..d
  std::map<Face, std::size_t> index_;
};

std::string face_label(const Face& f);

/// Positive rational weights on cells, addressed by (dimension, index).
/// The empty face carries weight 1.
class WeightAssignment {
 public:
  static WeightAssignment ones(const ChainComplex& x);

  /// Throws std::invalid_argument unless w > 0.
  void set(int k, std::size_t index, const Rational& w);
  /// Throws std::invalid_argument if the weight was never set.
  const Rational& get(int k, std::size_t index) const;
  bool has(int k, std::size_t index) const;
  /// Throws unless every cell of dimension k in x carries a weight.
  void require_dimension(const ChainComplex& x, int k) const;
  /// Weights of dimension k as a vector indexed by cell.
  std::vector<Rational> dimension(int k) const;
  /// Entries in (dimension, index) order.
  std::vector<std::tuple<int, std::size_t, Rational>> entries() const;

  friend bool operator==(const WeightAssignment&, const WeightAssignment&) = default;

 private:
  std::map<int, std::vector<Rational>> w_;  // zero marks a missing weight
};

enum class LaplacianKind { up_down, down_up, total };

/// ud: ∂_{k+1}∂_{k+1}ᵀ for -1 <= k < d; du: ∂_kᵀ∂_k for 0 <= k <= d;
/// total: their sum for 0 <= k <= d.
IntMatrix laplacian(const ChainComplex& x, int k, LaplacianKind kind);

/// ∂_k D_k ∂_kᵀ, the combinatorially weighted up-down Laplacian on X_{k-1}.
/// For k = 0 this is the 1x1 matrix [Σ w_v].
RatMatrix weighted_laplacian_comb(const ChainComplex& x, int k, const WeightAssignment& w);

/// D_{k-1}^{-1} ∂_k D_k ∂_kᵀ, similar to the algebraically weighted
/// Laplacian D_{k-1}^{-1/2} ∂_k D_k ∂_kᵀ D_{k-1}^{-1/2}. Only its spectrum is
/// meaningful. D_{-1} = [1].
RatMatrix weighted_laplacian_alg_similar(const ChainComplex& x, int k, const WeightAssignment& w);

/// Rows X_{d-1} ∖ roots of ∂_d (all columns).
IntMatrix relative_boundary(const ChainComplex& x, const CellSet& roots);

CellSet complement(const CellSet& s, std::size_t universe);

/// The chain complex with ∂_{Y,k} = ∂_{X,d-k+1}ᵀ. Dual vertices are
/// reoriented so the augmentation is again all-ones; this needs ker ∂_{X,d}
/// to be spanned by a ±1 vector, otherwise std::invalid_argument.
ChainComplex dual_chain_complex(const ChainComplex& x);

/// Weights on the dual: w*(σ*) = 1 / w(σ).
WeightAssignment dual_weights(const ChainComplex& x, const WeightAssignment& w);

ChainComplex skeleton(const ChainComplex& x, int k);
SimplicialComplex skeleton(const SimplicialComplex& s, int k);

struct DeletionLink {
  SimplicialComplex deletion;  // faces avoiding v
  SimplicialComplex link;      // faces ρ ∌ v with ρ ∪ {v} a face
};
DeletionLink delete_and_link(const SimplicialComplex& s, int v);

/// Product of the weights of a set of cells of dimension k.
Rational weight_product(const WeightAssignment& w, int k, const CellSet& cells);

// ---------------------------------------------------------------------------
// Interchange format

struct ComplexFile {
  std::optional<SimplicialComplex> simplicial;
  ChainComplex chain;
};

std::string serialize(const SimplicialComplex& s);
std::string serialize(const ChainComplex& x);
ComplexFile parse_complex(const std::string& text);

std::string serialize(const WeightAssignment& w);
WeightAssignment parse_weights(const std::string& text);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& contents);

}  // namespace celltree
