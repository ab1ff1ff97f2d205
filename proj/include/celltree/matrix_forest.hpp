#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "celltree/homology_oracle.hpp"

namespace celltree {

/// A method was asked to run on a complex that violates its hypotheses.
/// The message names the failing condition.
class HypothesisError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Result of one τ computation together with everything needed to audit it.
struct TauReport {
  std::string method;
  Rational value;
  /// name -> exact value, e.g. "t_0(X)" -> "1".
  std::vector<std::pair<std::string, std::string>> hypotheses;
  std::vector<std::pair<std::string, std::string>> corrections;
  std::vector<std::pair<std::string, std::string>> intermediates;
  std::vector<std::string> notes;

  std::string to_text() const;
  static TauReport parse(const std::string& text);
  friend bool operator==(const TauReport&, const TauReport&) = default;
};

enum class ReducedVariant {
  automatic,      // tree root when β_{d-1} = β_{d-2} = 0, general root otherwise
  forest_root,    // R a maximal (d-1)-forest; correction t_{d-2}(X)²/t_{d-2}(R)²
  general_root,   // R any maximal root; correction t_{d-1}(X)²/t_{d-1}(X,R)²
};

/// τ_d from the determinant of the Laplacian L_{d-1} reduced to the
/// complement of a root. With no root given, the forest-root variant uses
/// the greedy column basis of ∂_{d-1} and the general variant uses the
/// complement of the greedy row basis of ∂_d.
TauReport tau_reduced(const ChainComplex& x, const std::optional<CellSet>& root = std::nullopt,
                      const WeightAssignment* w = nullptr, ReducedVariant variant = ReducedVariant::automatic);

/// τ_d = t_{d-2}(X)² 𝛌(L_{d-1}(X;w)) / τ_{d-1}(X), with τ_{d-1} obtained by
/// the same method one dimension down (τ_0 = |X_0|).
TauReport tau_pseudodet(const ChainComplex& x, const WeightAssignment* w = nullptr);

/// τ_d = Π_{i=0}^{d} (t_{i-2}(X)² 𝛌(L_{i-1}))^{(-1)^{d-i}}. Needs β_k = 0 for
/// k < d; on Z-APC complexes every t factor is 1.
TauReport tau_alternating(const ChainComplex& x);

/// τ_d = t_{d-1}(X)² det(L restricted to B) / covol(B)² with B = im_Z ∂_d.
TauReport tau_covolume(const ChainComplex& x, const WeightAssignment* w = nullptr);

/// Cobase expansion: t_{d-2}(X)² det L_S / (t_{d-2}(R)² t'_{d-1}(S)²);
/// S defaults to the greedy row basis of ∂_d.
TauReport tau_lyons(const ChainComplex& x, const std::optional<CellSet>& cobase = std::nullopt);
/// Spectral cobase expansion: t_{d-2}(X)² 𝛌(L_{d-1}) / h', h' from lyons_hprime(x, d-2).
TauReport tau_lyons_spectral(const ChainComplex& x, std::uint64_t cap = kDefaultCap);

/// Algebraic weighting: τ_k(w) = t_{k-2}² 𝛌(L^alg_{k-1}) Π_{σ∈X_{k-1}} w_σ / τ_{k-1}(w),
/// iterated from τ_{-1} = 1.
TauReport tau_algebraic_weighted(const ChainComplex& x, const WeightAssignment& w);

/// Π_{dim σ<d} w_σ^{(-1)^{d-dim σ-1}} Π_{k=-1}^{d-1} (t_{k-1}(X)² 𝛌(L^alg_k))^{(-1)^{d-k-1}},
/// under the same hypotheses as tau_alternating.
TauReport tau_weighted_alternating(const ChainComplex& x, const WeightAssignment& w);

/// det(L + z·Id) with L = ∂_d ∂_dᵀ on the X_{d-1}-indexed space.
CharPoly<Integer> rooted_forest_polynomial(const ChainComplex& x);

/// Graph case: τ by the pseudodeterminant quotient and by a reduced
/// determinant (which must agree), plus the rooted-forest count 𝛌(L_0).
struct GraphTreeCount {
  TauReport report;
  Integer rooted_forests;
  std::vector<std::size_t> component_sizes;
};
GraphTreeCount graph_matrix_tree(const ChainComplex& g);

/// Runs every method whose hypotheses hold (and the oracle when within
/// cap), returning one report per method. Methods that do not apply are
/// reported with a note rather than thrown.
std::vector<TauReport> tau_all_methods(const ChainComplex& x, std::uint64_t cap = kDefaultCap);

}  // namespace celltree
