#include "celltree/homology_oracle.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace celltree {

namespace {

std::vector<std::vector<Integer>> columns_of(const IntMatrix& m) {
  std::vector<std::vector<Integer>> cols(m.cols(), std::vector<Integer>(m.rows()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) cols[j][i] = m(i, j);
  return cols;
}

// binom(n, k) saturating at cap + 1, enough to decide "exceeds cap".
std::uint64_t binom_capped(std::uint64_t n, std::uint64_t k, std::uint64_t cap) {
  if (k > n) return 0;
  k = std::min(k, n - k);
  long double acc = 1;
  for (std::uint64_t i = 1; i <= k; ++i) {
    acc = acc * static_cast<long double>(n - k + i) / static_cast<long double>(i);
    if (acc > static_cast<long double>(cap)) return cap + 1;
  }
  return static_cast<std::uint64_t>(std::llround(acc));
}

void check_cap(std::uint64_t n, std::uint64_t k, std::uint64_t cap, const std::string& what) {
  if (binom_capped(n, k, cap) > cap)
    throw CapExceeded(what + ": binom(" + std::to_string(n) + ", " + std::to_string(k) + ") exceeds the cap of " +
                      std::to_string(cap));
}

// Depth-first search over independent subsets of `vectors` in lexicographic
// order. `visit` is called for every independent subset (if all_sizes) or
// only for those of size `target`.
class IndependentSubsets {
 public:
  IndependentSubsets(const std::vector<std::vector<Integer>>& vectors, std::size_t dim)
      : vectors_(vectors), basis_(dim) {}

  void run(std::size_t target, bool all_sizes, const std::function<void(const CellSet&)>& visit) {
    target_ = target;
    all_sizes_ = all_sizes;
    visit_ = &visit;
    chosen_.clear();
    step(0);
  }

 private:
  void step(std::size_t pos) {
    if (all_sizes_ || chosen_.size() == target_) (*visit_)(chosen_);
    if (chosen_.size() == target_) return;
    const std::size_t n = vectors_.size();
    for (std::size_t j = pos; j < n; ++j) {
      if (!all_sizes_ && n - j < target_ - chosen_.size()) break;
      if (!basis_.try_add(vectors_[j])) continue;
      chosen_.push_back(j);
      step(j + 1);
      chosen_.pop_back();
      basis_.pop();
    }
  }

  const std::vector<std::vector<Integer>>& vectors_;
  IncrementalBasis basis_;
  std::size_t target_ = 0;
  bool all_sizes_ = false;
  const std::function<void(const CellSet&)>* visit_ = nullptr;
  CellSet chosen_;
};

// |det| of a small square matrix. Uses 128-bit Bareiss when the Hadamard
// bound guarantees no overflow, else falls back to GMP.
Integer small_abs_det(const IntMatrix& m) {
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  double log_bound = 0;
  bool fits = true;
  for (std::size_t j = 0; j < n && fits; ++j) {
    double norm2 = 0;
    for (std::size_t i = 0; i < n; ++i) {
      if (!m(i, j).fits_slong_p()) {
        fits = false;
        break;
      }
      const double v = static_cast<double>(m(i, j).get_si());
      norm2 += v * v;
    }
    if (norm2 == 0) return 0;
    log_bound += 0.5 * std::log2(norm2);
  }
  if (!fits || log_bound > 60) return abs(det_exact(m));

  std::vector<__int128> a(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i * n + j] = m(i, j).get_si();
  __int128 prev = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a[p * n + c] == 0) ++p;
    if (p == n) return 0;
    if (p != c)
      for (std::size_t j = 0; j < n; ++j) std::swap(a[p * n + j], a[c * n + j]);
    for (std::size_t i = c + 1; i < n; ++i) {
      for (std::size_t j = c + 1; j < n; ++j)
        a[i * n + j] = (a[c * n + c] * a[i * n + j] - a[i * n + c] * a[c * n + j]) / prev;
      a[i * n + c] = 0;
    }
    prev = a[c * n + c];
  }
  __int128 det = a[n * n - 1];
  if (det < 0) det = -det;
  return Integer(static_cast<long>(det));
}

void require_cells(const CellSet& s, std::size_t universe, const char* what) {
  for (std::size_t i = 0; i < s.size(); ++i) {
    if (s[i] >= universe) throw std::invalid_argument(std::string(what) + ": cell index out of range");
    if (i && s[i] <= s[i - 1]) throw std::invalid_argument(std::string(what) + ": cells must be sorted and distinct");
  }
}

}  // namespace

// ---------------------------------------------------------------------------

HomologySummary homology(const ChainComplex& x, int k) {
  if (k < -1 || k > x.dim())
    throw std::out_of_range("homology: k = " + std::to_string(k) + " outside [-1, " + std::to_string(x.dim()) + "]");
  HomologySummary h;
  h.k = k;
  const std::size_t rank_k = rank_exact(x.boundary_or_zero(k));
  const IntMatrix up = x.boundary_or_zero(k + 1);
  const auto factors = invariant_factors(up);
  h.betti = x.num_cells(k) - rank_k - factors.size();
  for (const auto& f : factors)
    if (f > 1) {
      h.torsion_factors.push_back(f);
      h.torsion_order *= f;
    }
  return h;
}

std::size_t betti(const ChainComplex& x, int k) {
  return x.num_cells(k) - rank_exact(x.boundary_or_zero(k)) - rank_exact(x.boundary_or_zero(k + 1));
}

Integer torsion(const ChainComplex& x, int k) {
  if (k >= x.dim()) return 1;
  if (k < -1) return 1;
  return torsion_of_cokernel(x.boundary(k + 1));
}

bool is_z_apc(const ChainComplex& x) {
  for (int k = -1; k < x.dim(); ++k) {
    auto h = homology(x, k);
    if (h.betti != 0 || h.torsion_order != 1) return false;
  }
  return true;
}

Integer subcomplex_torsion(const ChainComplex& x, int k, const CellSet& cells) {
  require_cells(cells, x.num_cells(k), "subcomplex_torsion");
  return torsion_of_cokernel(x.boundary(k).select_columns(cells));
}

bool is_spanning_forest(const ChainComplex& x, const CellSet& t) {
  require_cells(t, x.num_cells(x.dim()), "is_spanning_forest");
  return rank_exact(x.boundary(x.dim()).select_columns(t)) == t.size();
}

bool is_maximal_spanning_forest(const ChainComplex& x, const CellSet& t) {
  return is_spanning_forest(x, t) && t.size() == rank_exact(x.boundary(x.dim()));
}

bool is_spanning_tree(const ChainComplex& x, const CellSet& t) {
  return is_maximal_spanning_forest(x, t) && betti(x, x.dim() - 1) == 0;
}

bool ForestConditions::maximal_conditions_agree() const {
  const bool v = betti_top_zero_and_betti_below_equal;
  return betti_below_equal_and_size == v && betti_top_zero_and_size == v && unique_bounding_chain == v &&
         maximal_acyclic == v && minimal_spanning == v && columns_form_basis == v;
}

bool ForestConditions::forest_conditions_agree() const {
  return at_most_one_bounding_chain == betti_top_zero && columns_independent == betti_top_zero;
}

ForestConditions characterize_forest(const ChainComplex& x, const CellSet& t) {
  const int d = x.dim();
  const IntMatrix& top = x.boundary(d);
  require_cells(t, top.cols(), "characterize_forest");
  const std::size_t rank_x = rank_exact(top);
  const std::size_t cycles_below = x.num_cells(d - 1) - rank_exact(x.boundary(d - 1));
  auto rank_of = [&](const CellSet& s) { return rank_exact(top.select_columns(s)); };
  auto betti_top = [&](const CellSet& s) { return s.size() - rank_of(s); };
  auto betti_below = [&](const CellSet& s) { return cycles_below - rank_of(s); };
  const std::size_t bx_top = top.cols() - rank_x, bx_below = cycles_below - rank_x;
  const std::size_t rank_t = rank_of(t);

  ForestConditions c;
  c.betti_top_zero = betti_top(t) == 0;
  c.columns_independent = rank_t == t.size();
  const bool below_equal = betti_below(t) == bx_below;
  const bool size_ok = t.size() == top.cols() - bx_top;
  c.betti_top_zero_and_betti_below_equal = c.betti_top_zero && below_equal;
  c.betti_below_equal_and_size = below_equal && size_ok;
  c.betti_top_zero_and_size = c.betti_top_zero && size_ok;

  // Solvability of ∂_T c = z for each boundary z of X, and uniqueness.
  const IntMatrix sub = top.select_columns(t);
  bool every_boundary_reached = true;
  for (std::size_t j = 0; j < top.cols() && every_boundary_reached; ++j)
    if (rank_exact(concat_columns(sub, top.select_columns(CellSet{j}))) != rank_t) every_boundary_reached = false;
  const bool unique = rank_t == t.size();
  c.unique_bounding_chain = every_boundary_reached && unique;
  c.at_most_one_bounding_chain = unique;

  const CellSet rest = complement(t, top.cols());
  bool maximal = c.betti_top_zero;
  for (std::size_t j : rest) {
    if (!maximal) break;
    CellSet bigger = t;
    bigger.insert(std::upper_bound(bigger.begin(), bigger.end(), j), j);
    if (betti_top(bigger) == 0) maximal = false;
  }
  c.maximal_acyclic = maximal;
  bool minimal = below_equal;
  for (std::size_t i = 0; i < t.size() && minimal; ++i) {
    CellSet smaller = t;
    smaller.erase(smaller.begin() + static_cast<long>(i));
    if (betti_below(smaller) == bx_below) minimal = false;
  }
  c.minimal_spanning = minimal;
  c.columns_form_basis = unique && rank_t == rank_x;
  return c;
}

CellSet greedy_column_basis(const IntMatrix& m) {
  IncrementalBasis b(m.rows());
  CellSet out;
  auto cols = columns_of(m);
  for (std::size_t j = 0; j < cols.size(); ++j)
    if (b.try_add(cols[j])) out.push_back(j);
  return out;
}

CellSet greedy_row_basis(const IntMatrix& m) { return greedy_column_basis(m.transpose()); }

// ---------------------------------------------------------------------------

ForestCensus enumerate_forests(const ChainComplex& x, int k, std::uint64_t cap) {
  if (k < 0 || k > x.dim()) throw std::out_of_range("enumerate_forests: k outside [0, d]");
  const IntMatrix& b = x.boundary(k);
  ForestCensus census;
  census.k = k;
  census.rank = rank_exact(b);
  check_cap(b.cols(), census.rank, cap, "enumerate_forests");
  auto cols = columns_of(b);
  IndependentSubsets search(cols, b.rows());
  search.run(census.rank, false, [&](const CellSet& t) {
    census.forests.push_back(ForestEntry{t, torsion_of_cokernel(b.select_columns(t))});
  });
  return census;
}

Integer tau_bruteforce(const ChainComplex& x, int k, std::uint64_t cap) {
  Integer total = 0;
  for (const auto& f : enumerate_forests(x, k, cap).forests) total += f.torsion * f.torsion;
  return total;
}

Rational tau_weighted_bruteforce(const ChainComplex& x, int k, const WeightAssignment& w, std::uint64_t cap) {
  w.require_dimension(x, k);
  Rational total = 0;
  for (const auto& f : enumerate_forests(x, k, cap).forests)
    total += Rational(f.torsion * f.torsion) * weight_product(w, k, f.facets);
  return total;
}

std::string census_to_text(const ChainComplex& x, const ForestCensus& census) {
  std::ostringstream out;
  const auto& labels = x.labels(census.k);
  for (const auto& f : census.forests) {
    for (std::size_t i = 0; i < f.facets.size(); ++i) out << (i ? " " : "") << labels[f.facets[i]];
    out << " ; " << f.torsion.get_str() << "\n";
  }
  return out.str();
}

// ---------------------------------------------------------------------------

void for_each_rooted_forest(const ChainComplex& x,
                            const std::function<void(const CellSet&, const CellSet&, const Integer&)>& visit,
                            std::uint64_t cap) {
  const int d = x.dim();
  if (d < 1) throw std::invalid_argument("rooted forests need dimension >= 1");
  const IntMatrix& b = x.boundary(d);
  const std::size_t rows = b.rows();
  check_cap(rows + b.cols(), b.cols(), cap, "for_each_rooted_forest");
  auto cols = columns_of(b);
  IndependentSubsets search(cols, rows);
  CellSet s;
  search.run(b.cols(), true, [&](const CellSet& f) {
    const IntMatrix bf = b.select_columns(f);
    const std::size_t m = f.size();
    // Rows that vanish on F can never belong to a nonsingular square block.
    std::vector<std::size_t> useful;
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < m; ++j)
        if (bf(i, j) != 0) {
          useful.push_back(i);
          break;
        }
    std::function<void(std::size_t)> pick = [&](std::size_t pos) {
      if (s.size() == m) {
        Integer det = small_abs_det(bf.select_rows(s));
        if (det != 0) visit(f, s, det);
        return;
      }
      for (std::size_t u = pos; u + (m - s.size()) <= useful.size(); ++u) {
        s.push_back(useful[u]);
        pick(u + 1);
        s.pop_back();
      }
    };
    pick(0);
  });
}

std::vector<RootedForest> enumerate_rooted_forests(const ChainComplex& x, std::uint64_t cap) {
  std::vector<RootedForest> out;
  const std::size_t rows = x.num_cells(x.dim() - 1);
  for_each_rooted_forest(
      x, [&](const CellSet& f, const CellSet& s, const Integer& det) { out.push_back({f, complement(s, rows), det}); },
      cap);
  return out;
}

std::vector<Integer> rooted_forest_coefficients(const ChainComplex& x, std::uint64_t cap) {
  const std::size_t rows = x.num_cells(x.dim() - 1);
  std::vector<Integer> coeff(rows + 1, Integer(0));
  for_each_rooted_forest(
      x, [&](const CellSet&, const CellSet& s, const Integer& det) { coeff[rows - s.size()] += det * det; }, cap);
  return coeff;
}

Integer rooted_pair_torsion(const ChainComplex& x, const CellSet& forest, const CellSet& roots) {
  const int d = x.dim();
  require_cells(forest, x.num_cells(d), "rooted_pair_torsion");
  require_cells(roots, x.num_cells(d - 1), "rooted_pair_torsion");
  const CellSet s = complement(roots, x.num_cells(d - 1));
  if (s.size() != forest.size()) throw std::invalid_argument("rooted_pair_torsion: not a square block");
  const IntMatrix block = x.boundary(d).submatrix(s, forest);
  if (rank_exact(block) != s.size()) throw std::invalid_argument("rooted_pair_torsion: singular block, not a rooted forest");
  return torsion_of_cokernel(block);
}

std::uint64_t count_orientations(const ChainComplex& x, const CellSet& forest, const CellSet& roots) {
  const int d = x.dim();
  require_cells(forest, x.num_cells(d), "count_orientations");
  require_cells(roots, x.num_cells(d - 1), "count_orientations");
  const CellSet s = complement(roots, x.num_cells(d - 1));
  const std::size_t m = forest.size();
  if (s.size() != m) return 0;
  if (m > 24) throw CapExceeded("count_orientations: more than 24 facets");
  const IntMatrix& b = x.boundary(d);
  std::vector<std::uint64_t> ways(std::size_t{1} << m, 0);
  ways[0] = 1;
  // Rows are matched in order; popcount(mask) rows have been assigned.
  for (std::size_t mask = 0; mask < ways.size(); ++mask) {
    if (!ways[mask]) continue;
    const std::size_t i = static_cast<std::size_t>(__builtin_popcountll(mask));
    if (i == m) continue;
    for (std::size_t j = 0; j < m; ++j)
      if (!(mask >> j & 1) && b(s[i], forest[j]) != 0) ways[mask | (std::size_t{1} << j)] += ways[mask];
  }
  return ways.back();
}

Integer relative_homology_torsion(const ChainComplex& x, const CellSet& roots) {
  require_cells(roots, x.num_cells(x.dim() - 1), "relative_homology_torsion");
  return torsion_of_cokernel(relative_boundary(x, roots));
}

// ---------------------------------------------------------------------------

std::vector<CellSet> cobases(const ChainComplex& x, int j, std::uint64_t cap) {
  if (j < 0 || j >= x.dim()) throw std::out_of_range("cobases: j outside [0, d)");
  const IntMatrix rowsm = x.boundary(j + 1).transpose();
  const std::size_t r = rank_exact(rowsm);
  check_cap(rowsm.cols(), r, cap, "cobases");
  auto vecs = columns_of(rowsm);
  IndependentSubsets search(vecs, rowsm.rows());
  std::vector<CellSet> out;
  search.run(r, false, [&](const CellSet& s) { out.push_back(s); });
  return out;
}

Integer lyons_tprime(const ChainComplex& x, int k, const CellSet& s) {
  const std::size_t n = x.num_cells(k);
  require_cells(s, n, "lyons_tprime");
  const IntMatrix& bk = x.boundary(k);
  const IntMatrix cycles = kernel_basis(bk);
  const IntMatrix sat = saturation(x.boundary_or_zero(k + 1));
  const CellSet rest = complement(s, n);
  const IntMatrix rest_cycles = kernel_basis(bk.select_columns(rest));
  IntMatrix extended(n, rest_cycles.cols());
  for (std::size_t i = 0; i < rest.size(); ++i)
    for (std::size_t j = 0; j < rest_cycles.cols(); ++j) extended(rest[i], j) = rest_cycles(i, j);
  auto order = lattice_quotient_order(cycles, concat_columns(sat, extended));
  if (!order) throw std::domain_error("lyons_tprime: infinite quotient; S is not a cobase");
  return *order;
}

Integer lyons_hprime(const ChainComplex& x, int k, std::uint64_t cap) {
  Integer total = 0;
  const std::size_t n = x.num_cells(k + 1);
  for (const auto& s : cobases(x, k + 1, cap)) {
    const Integer t = subcomplex_torsion(x, k + 1, complement(s, n));
    const Integer tp = lyons_tprime(x, k + 1, s);
    total += t * t * tp * tp;
  }
  return total;
}

}  // namespace celltree
