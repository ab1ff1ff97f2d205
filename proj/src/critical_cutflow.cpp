#include "celltree/critical_cutflow.hpp"

#include <sstream>
#include <stdexcept>

namespace celltree {

Integer AbelianGroup::torsion_order() const {
  Integer out = 1;
  for (const auto& d : invariant_factors) out *= d;
  return out;
}

std::optional<Integer> AbelianGroup::order() const {
  if (!finite()) return std::nullopt;
  return torsion_order();
}

std::string AbelianGroup::to_text() const {
  std::string out;
  for (const auto& d : invariant_factors) out += (out.empty() ? "" : " + ") + std::string("Z/") + d.get_str();
  if (free_rank) out += (out.empty() ? "" : " + ") + std::string("Z") + (free_rank > 1 ? "^" + std::to_string(free_rank) : "");
  return out.empty() ? "0" : out;
}

AbelianGroup cokernel_group(const IntMatrix& m) {
  AbelianGroup g;
  const auto factors = invariant_factors(m);
  for (const auto& d : factors)
    if (d > 1) g.invariant_factors.push_back(d);
  g.free_rank = m.rows() - factors.size();
  return g;
}

AbelianGroup torsion_part(const AbelianGroup& g) { return AbelianGroup{g.invariant_factors, 0}; }

AbelianGroup critical_group(const ChainComplex& x, int i) {
  if (i < 0 || i >= x.dim()) throw std::out_of_range("critical_group: need 0 <= i < d");
  return torsion_part(cokernel_group(laplacian(x, i, LaplacianKind::up_down)));
}

namespace {

bool is_torsion_free_tree(const ChainComplex& x, int i, const CellSet& t) {
  const IntMatrix& b = x.boundary(i);
  if (i >= 1 && betti(x, i - 1) != 0) return false;
  return t.size() == rank_exact(b) && rank_exact(b.select_columns(t)) == t.size() && subcomplex_torsion(x, i, t) == 1;
}

}  // namespace

std::optional<CellSet> torsion_free_tree(const ChainComplex& x, int i, std::uint64_t cap) {
  if (i < 0 || i > x.dim()) throw std::out_of_range("torsion_free_tree: need 0 <= i <= d");
  if (i >= 1 && betti(x, i - 1) != 0) return std::nullopt;
  CellSet greedy = greedy_column_basis(x.boundary(i));
  if (subcomplex_torsion(x, i, greedy) == 1) return greedy;
  for (const auto& f : enumerate_forests(x, i, cap).forests)
    if (f.torsion == 1) return f.facets;
  return std::nullopt;
}

AbelianGroup critical_group_reduced(const ChainComplex& x, int i, const CellSet& tree) {
  if (i < 0 || i >= x.dim()) throw std::out_of_range("critical_group_reduced: need 0 <= i < d");
  if (!is_torsion_free_tree(x, i, tree))
    throw std::invalid_argument("critical_group_reduced: not a torsion-free spanning i-tree");
  const CellSet s = complement(tree, x.num_cells(i));
  return cokernel_group(laplacian(x, i, LaplacianKind::up_down).submatrix(s, s));
}

// ---------------------------------------------------------------------------

LatticeData cut_lattice(const ChainComplex& x, int k) {
  if (k < 1 || k > x.dim()) throw std::out_of_range("cut_lattice: need 1 <= k <= d");
  return LatticeData{x.num_cells(k), hermite_basis(x.boundary(k).transpose()), LatticeRole::cut};
}

LatticeData flow_lattice(const ChainComplex& x, int k) {
  if (k < 1 || k > x.dim()) throw std::out_of_range("flow_lattice: need 1 <= k <= d");
  return LatticeData{x.num_cells(k), kernel_basis(x.boundary(k)), LatticeRole::flow};
}

AbelianGroup discriminant_group(const LatticeData& l) {
  if (l.rank() == 0) return {};
  if (rank_exact(l.basis) != l.rank()) throw std::invalid_argument("discriminant_group: basis columns are dependent");
  return cokernel_group(l.basis.transpose() * l.basis);
}

// ---------------------------------------------------------------------------

namespace {

std::vector<Integer> make_primitive(std::vector<Integer> v, std::size_t positive_at) {
  Integer g = 0;
  for (const auto& e : v) g = gcd(g, e);
  if (g == 0) throw std::logic_error("fundamental_vectors: zero vector");
  if (v[positive_at] < 0) g = -g;
  for (auto& e : v) e /= g;
  return v;
}

}  // namespace

FundamentalVectors fundamental_vectors(const ChainComplex& x, const CellSet& tree) {
  const int d = x.dim();
  if (d < 1 || !is_spanning_tree(x, tree)) throw std::invalid_argument("fundamental_vectors: T is not a spanning tree");
  const IntMatrix& b = x.boundary(d);
  const std::size_t n = b.cols();
  FundamentalVectors out;

  const IntMatrix rows = hermite_basis(b.transpose());  // n x r basis of the cut lattice
  for (std::size_t j = 0; j < tree.size(); ++j) {
    CellSet others;
    for (std::size_t i = 0; i < tree.size(); ++i)
      if (i != j) others.push_back(tree[i]);
    std::vector<std::size_t> all(rows.cols());
    for (std::size_t c = 0; c < all.size(); ++c) all[c] = c;
    const IntMatrix coeff = kernel_basis(rows.submatrix(others, all));
    if (coeff.cols() != 1) throw std::logic_error("fundamental_vectors: bond space is not one-dimensional");
    const IntMatrix v = rows * coeff;
    std::vector<Integer> vec(n);
    for (std::size_t i = 0; i < n; ++i) vec[i] = v(i, 0);
    out.bonds.push_back(make_primitive(std::move(vec), tree[j]));
  }

  for (std::size_t sigma : complement(tree, n)) {
    CellSet cols = tree;
    cols.insert(std::upper_bound(cols.begin(), cols.end(), sigma), sigma);
    const IntMatrix k = kernel_basis(b.select_columns(cols));
    if (k.cols() != 1) throw std::logic_error("fundamental_vectors: circuit space is not one-dimensional");
    std::vector<Integer> vec(n, 0);
    for (std::size_t i = 0; i < cols.size(); ++i) vec[cols[i]] = k(i, 0);
    out.circuits.push_back(make_primitive(std::move(vec), sigma));
  }
  return out;
}

IntMatrix vectors_as_columns(const std::vector<std::vector<Integer>>& v, std::size_t rows) {
  IntMatrix m(rows, v.size());
  for (std::size_t j = 0; j < v.size(); ++j) {
    if (v[j].size() != rows) throw std::invalid_argument("vectors_as_columns: length mismatch");
    for (std::size_t i = 0; i < rows; ++i) m(i, j) = v[j][i];
  }
  return m;
}

// ---------------------------------------------------------------------------

bool SequenceOrders::consistent() const {
  return first_sequence && second_sequence && critical_is_cut && (all_equal == (error_term == 1));
}

std::string SequenceOrders::to_text() const {
  std::ostringstream out;
  out << "critical " << critical << "\n";
  out << "cut_discriminant " << cut_discriminant << "\n";
  out << "flow_discriminant " << flow_discriminant << "\n";
  out << "cut_plus_flow_quotient " << cut_plus_flow << "\n";
  out << "error_term " << error_term << "\n";
  out << "cocritical_inferred " << cocritical << "\n";
  out << "first_sequence " << (first_sequence ? "holds" : "fails") << "\n";
  out << "second_sequence " << (second_sequence ? "holds" : "fails") << "\n";
  out << "critical_equals_cut_discriminant " << (critical_is_cut ? "yes" : "no") << "\n";
  out << "all_orders_equal " << (all_equal ? "yes" : "no") << "\n";
  return out.str();
}

SequenceOrders sequence_order_check(const ChainComplex& x) {
  const int d = x.dim();
  if (d < 1) throw std::invalid_argument("sequence_order_check: need dimension >= 1");
  const LatticeData cut = cut_lattice(x, d), flow = flow_lattice(x, d);
  SequenceOrders s;
  s.critical = critical_group(x, d - 1).torsion_order();
  s.cut_discriminant = discriminant_group(cut).torsion_order();
  s.flow_discriminant = discriminant_group(flow).torsion_order();
  s.cut_plus_flow = abs(det_exact(concat_columns(cut.basis, flow.basis)));
  s.error_term = torsion(x, d - 1);
  if (s.cut_plus_flow % s.error_term != 0) throw std::logic_error("sequence_order_check: |E| does not divide |Z^n/(C+F)|");
  s.cocritical = s.cut_plus_flow / s.error_term;
  s.first_sequence = s.critical == s.cut_plus_flow * s.error_term;
  s.second_sequence = s.cut_plus_flow == s.error_term * s.flow_discriminant;
  s.critical_is_cut = s.critical == s.cut_discriminant;
  s.all_equal = s.critical == s.cut_discriminant && s.critical == s.flow_discriminant &&
                s.critical == s.cut_plus_flow && s.critical == s.cocritical;
  return s;
}

}  // namespace celltree
