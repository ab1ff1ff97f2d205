#include "celltree/complex_core.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

namespace celltree {

// ---------------------------------------------------------------------------
// ChainComplex

ChainComplex::ChainComplex(std::vector<std::vector<std::string>> labels, std::vector<IntMatrix> boundaries)
    : labels_(std::move(labels)) {
  if (labels_.empty()) throw std::invalid_argument("ChainComplex: need at least the 0-cells");
  if (boundaries.size() + 1 != labels_.size())
    throw std::invalid_argument("ChainComplex: expected one boundary matrix per positive dimension");
  boundaries_.reserve(labels_.size());
  boundaries_.emplace_back(1, labels_[0].size(), std::vector<Integer>(labels_[0].size(), Integer(1)));
  for (auto& b : boundaries) boundaries_.push_back(std::move(b));
  for (std::size_t k = 0; k < labels_.size(); ++k) {
    std::set<std::string> seen(labels_[k].begin(), labels_[k].end());
    if (seen.size() != labels_[k].size())
      throw std::invalid_argument("ChainComplex: duplicate label in dimension " + std::to_string(k));
  }
  for (int k = 1; k <= dim(); ++k) {
    const IntMatrix& b = boundaries_[k];
    if (b.rows() != num_cells(k - 1) || b.cols() != num_cells(k))
      throw std::invalid_argument("ChainComplex: boundary " + std::to_string(k) + " has wrong shape");
    if (!(boundaries_[k - 1] * b).is_zero())
      throw std::invalid_argument("ChainComplex: boundary of boundary is nonzero at dimension " + std::to_string(k));
  }
}

std::size_t ChainComplex::num_cells(int k) const {
  if (k == -1) return 1;
  if (k < -1 || k > dim()) return 0;
  return labels_[k].size();
}

const std::vector<std::string>& ChainComplex::labels(int k) const {
  if (k < 0 || k > dim()) throw std::out_of_range("ChainComplex::labels: dimension out of range");
  return labels_[k];
}

CellId ChainComplex::cell(int k, std::size_t index) const {
  if (k == -1 && index == 0) return CellId{-1, 0, "{}"};
  const auto& l = labels(k);
  if (index >= l.size()) throw std::out_of_range("ChainComplex::cell: index out of range");
  return CellId{k, index, l[index]};
}

std::optional<std::size_t> ChainComplex::find(int k, const std::string& label) const {
  const auto& l = labels(k);
  auto it = std::find(l.begin(), l.end(), label);
  if (it == l.end()) return std::nullopt;
  return static_cast<std::size_t>(it - l.begin());
}

const IntMatrix& ChainComplex::boundary(int k) const {
  if (k < 0 || k > dim())
    throw std::out_of_range("boundary: k = " + std::to_string(k) + " outside [0, " + std::to_string(dim()) + "]");
  return boundaries_[k];
}

IntMatrix ChainComplex::boundary_or_zero(int k) const {
  if (k >= 0 && k <= dim()) return boundaries_[k];
  return IntMatrix(num_cells(k - 1), num_cells(k));
}

// ---------------------------------------------------------------------------
// SimplicialComplex

std::string face_label(const Face& f) {
  std::string s;
  for (std::size_t i = 0; i < f.size(); ++i) {
    if (i) s += ',';
    s += std::to_string(f[i]);
  }
  return s;
}

SimplicialComplex SimplicialComplex::from_facets(int n, std::vector<Face> facets) {
  if (n < 0) throw std::invalid_argument("from_facets: negative vertex count");
  for (auto& f : facets) {
    if (f.empty()) throw std::invalid_argument("from_facets: empty facet");
    std::sort(f.begin(), f.end());
    f.erase(std::unique(f.begin(), f.end()), f.end());
    for (int v : f)
      if (v < 1 || v > n)
        throw std::invalid_argument("from_facets: vertex " + std::to_string(v) + " outside [1, " + std::to_string(n) + "]");
  }
  std::sort(facets.begin(), facets.end());
  facets.erase(std::unique(facets.begin(), facets.end()), facets.end());

  SimplicialComplex s;
  s.n_ = n;
  for (const auto& f : facets) {
    bool redundant = false;
    for (const auto& g : facets)
      if (g.size() > f.size() && std::includes(g.begin(), g.end(), f.begin(), f.end())) {
        redundant = true;
        break;
      }
    if (!redundant) s.facets_.push_back(f);
  }

  std::set<Face> all;
  for (const auto& f : s.facets_) {
    const std::size_t m = f.size();
    for (unsigned long mask = 1; mask < (1UL << m); ++mask) {
      Face sub;
      for (std::size_t i = 0; i < m; ++i)
        if (mask >> i & 1) sub.push_back(f[i]);
      all.insert(std::move(sub));
    }
  }
  for (const auto& f : all) {
    const std::size_t k = f.size() - 1;
    if (s.faces_.size() <= k) s.faces_.resize(k + 1);
    s.faces_[k].push_back(f);
  }
  for (auto& layer : s.faces_) {
    std::sort(layer.begin(), layer.end());
    for (std::size_t i = 0; i < layer.size(); ++i) s.index_[layer[i]] = i;
  }
  return s;
}

const std::vector<Face>& SimplicialComplex::faces(int k) const {
  static const std::vector<Face> empty_face{Face{}};
  static const std::vector<Face> none;
  if (k == -1) return empty_face;
  if (k < -1 || k > dim()) return none;
  return faces_[k];
}

std::optional<std::size_t> SimplicialComplex::index_of(const Face& f) const {
  if (f.empty()) return 0;
  auto it = index_.find(f);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

bool SimplicialComplex::is_pure() const {
  for (const auto& f : facets_)
    if (static_cast<int>(f.size()) - 1 != dim()) return false;
  return true;
}

ChainComplex SimplicialComplex::compile() const {
  if (faces_.empty()) throw std::invalid_argument("compile: the void complex has no chain complex");
  std::vector<std::vector<std::string>> labels;
  for (const auto& layer : faces_) {
    labels.emplace_back();
    for (const auto& f : layer) labels.back().push_back(face_label(f));
  }
  std::vector<IntMatrix> boundaries;
  for (int k = 1; k <= dim(); ++k) {
    IntMatrix b(faces_[k - 1].size(), faces_[k].size());
    for (std::size_t j = 0; j < faces_[k].size(); ++j) {
      const Face& f = faces_[k][j];
      for (std::size_t i = 0; i < f.size(); ++i) {
        Face g;
        for (std::size_t t = 0; t < f.size(); ++t)
          if (t != i) g.push_back(f[t]);
        b(index_.at(g), j) = (i % 2) ? -1 : 1;
      }
    }
    boundaries.push_back(std::move(b));
  }
  return ChainComplex(std::move(labels), std::move(boundaries));
}

// ---------------------------------------------------------------------------
// Weights

WeightAssignment WeightAssignment::ones(const ChainComplex& x) {
  WeightAssignment w;
  for (int k = 0; k <= x.dim(); ++k) w.w_[k] = std::vector<Rational>(x.num_cells(k), Rational(1));
  return w;
}

void WeightAssignment::set(int k, std::size_t index, const Rational& raw) {
  Rational value = raw;
  value.canonicalize();
  if (value <= 0) throw std::invalid_argument("weights must be strictly positive, got " + value.get_str());
  if (k < 0) throw std::invalid_argument("weights are set on cells of dimension >= 0");
  auto& v = w_[k];
  if (v.size() <= index) v.resize(index + 1, Rational(0));
  v[index] = value;
}

bool WeightAssignment::has(int k, std::size_t index) const {
  if (k == -1) return index == 0;
  auto it = w_.find(k);
  return it != w_.end() && index < it->second.size() && it->second[index] != 0;
}

const Rational& WeightAssignment::get(int k, std::size_t index) const {
  static const Rational one(1);
  if (k == -1 && index == 0) return one;
  if (!has(k, index))
    throw std::invalid_argument("missing weight for cell " + std::to_string(index) + " of dimension " + std::to_string(k));
  return w_.at(k)[index];
}

void WeightAssignment::require_dimension(const ChainComplex& x, int k) const {
  for (std::size_t i = 0; i < x.num_cells(k); ++i) get(k, i);
}

std::vector<Rational> WeightAssignment::dimension(int k) const {
  if (k == -1) return {Rational(1)};
  auto it = w_.find(k);
  if (it == w_.end()) return {};
  return it->second;
}

std::vector<std::tuple<int, std::size_t, Rational>> WeightAssignment::entries() const {
  std::vector<std::tuple<int, std::size_t, Rational>> out;
  for (const auto& [k, v] : w_)
    for (std::size_t i = 0; i < v.size(); ++i)
      if (v[i] != 0) out.emplace_back(k, i, v[i]);
  return out;
}

Rational weight_product(const WeightAssignment& w, int k, const CellSet& cells) {
  Rational p = 1;
  for (auto c : cells) p *= w.get(k, c);
  return p;
}

// ---------------------------------------------------------------------------
// Laplacians

IntMatrix laplacian(const ChainComplex& x, int k, LaplacianKind kind) {
  const int d = x.dim();
  auto ud = [&] {
    const IntMatrix& b = x.boundary(k + 1);
    return b * b.transpose();
  };
  auto du = [&] {
    const IntMatrix& b = x.boundary(k);
    return b.transpose() * b;
  };
  switch (kind) {
    case LaplacianKind::up_down:
      if (k < -1 || k >= d) throw std::out_of_range("up-down Laplacian needs -1 <= k < d");
      return ud();
    case LaplacianKind::down_up:
      if (k < 0 || k > d) throw std::out_of_range("down-up Laplacian needs 0 <= k <= d");
      return du();
    case LaplacianKind::total:
      if (k < 0 || k > d) throw std::out_of_range("total Laplacian needs 0 <= k <= d");
      return k == d ? du() : ud() + du();
  }
  throw std::logic_error("laplacian: unknown kind");
}

RatMatrix weighted_laplacian_comb(const ChainComplex& x, int k, const WeightAssignment& w) {
  const IntMatrix& b = x.boundary(k);
  RatMatrix scaled = to_rational(b);
  for (std::size_t j = 0; j < b.cols(); ++j) {
    const Rational& wj = w.get(k, j);
    for (std::size_t i = 0; i < b.rows(); ++i)
      if (b(i, j) != 0) scaled(i, j) *= wj;
  }
  return scaled * to_rational(b.transpose());
}

RatMatrix weighted_laplacian_alg_similar(const ChainComplex& x, int k, const WeightAssignment& w) {
  RatMatrix l = weighted_laplacian_comb(x, k, w);
  for (std::size_t i = 0; i < l.rows(); ++i) {
    const Rational inv = 1 / w.get(k - 1, i);
    for (std::size_t j = 0; j < l.cols(); ++j) l(i, j) *= inv;
  }
  return l;
}

// ---------------------------------------------------------------------------

CellSet complement(const CellSet& s, std::size_t universe) {
  CellSet out;
  std::vector<bool> in(universe, false);
  for (auto i : s) {
    if (i >= universe) throw std::invalid_argument("cell index out of range");
    in[i] = true;
  }
  for (std::size_t i = 0; i < universe; ++i)
    if (!in[i]) out.push_back(i);
  return out;
}

IntMatrix relative_boundary(const ChainComplex& x, const CellSet& roots) {
  const int d = x.dim();
  if (d < 1) throw std::invalid_argument("relative_boundary: complex has no top boundary");
  const IntMatrix& b = x.boundary(d);
  return b.select_rows(complement(roots, b.rows()));
}

ChainComplex dual_chain_complex(const ChainComplex& x) {
  const int d = x.dim();
  if (d < 1) throw std::invalid_argument("dual_chain_complex: need dimension >= 1");
  std::vector<std::vector<std::string>> labels;
  for (int k = 0; k <= d; ++k) {
    labels.emplace_back();
    for (const auto& l : x.labels(d - k)) labels.back().push_back(l + "*");
  }
  std::vector<IntMatrix> boundaries;
  for (int k = 1; k <= d; ++k) boundaries.push_back(x.boundary(d - k + 1).transpose());

  IntMatrix ker = kernel_basis(x.boundary(d));
  if (ker.cols() != 1)
    throw std::invalid_argument("dual_chain_complex: top cycle space must have rank 1 (a fundamental class)");
  for (std::size_t i = 0; i < ker.rows(); ++i) {
    if (abs(ker(i, 0)) != 1)
      throw std::invalid_argument("dual_chain_complex: fundamental class must have entries ±1");
    if (ker(i, 0) < 0)
      for (std::size_t j = 0; j < boundaries[0].cols(); ++j) boundaries[0](i, j) = -boundaries[0](i, j);
  }
  return ChainComplex(std::move(labels), std::move(boundaries));
}

WeightAssignment dual_weights(const ChainComplex& x, const WeightAssignment& w) {
  WeightAssignment out;
  const int d = x.dim();
  for (const auto& [k, i, value] : w.entries())
    if (k <= d) out.set(d - k, i, 1 / value);
  return out;
}

ChainComplex skeleton(const ChainComplex& x, int k) {
  if (k < 0 || k > x.dim()) throw std::out_of_range("skeleton: k outside [0, d]");
  std::vector<std::vector<std::string>> labels;
  std::vector<IntMatrix> boundaries;
  for (int j = 0; j <= k; ++j) {
    labels.push_back(x.labels(j));
    if (j > 0) boundaries.push_back(x.boundary(j));
  }
  return ChainComplex(std::move(labels), std::move(boundaries));
}

SimplicialComplex skeleton(const SimplicialComplex& s, int k) {
  if (k < 0 || k > s.dim()) throw std::out_of_range("skeleton: k outside [0, d]");
  std::vector<Face> facets;
  for (int j = 0; j <= k; ++j)
    for (const auto& f : s.faces(j)) facets.push_back(f);
  return SimplicialComplex::from_facets(s.vertex_count(), std::move(facets));
}

DeletionLink delete_and_link(const SimplicialComplex& s, int v) {
  std::vector<Face> del, lk;
  for (const auto& f : s.facets()) {
    Face g;
    for (int u : f)
      if (u != v) g.push_back(u);
    if (!g.empty()) del.push_back(g);
    if (g.size() < f.size() && !g.empty()) lk.push_back(g);
  }
  return {SimplicialComplex::from_facets(s.vertex_count(), std::move(del)),
          SimplicialComplex::from_facets(s.vertex_count(), std::move(lk))};
}

// ---------------------------------------------------------------------------
// Interchange format
//
// Simplicial:            Cellular:
//   dim d                  dim d
//   vertices n             cells c_0 ... c_d
//   facets m               labels k            (one block per k = 0..d)
//   v v v   (m lines)      l l l
//                          matrix k rows cols  (one block per k = 1..d)
//                          a a a   (rows lines)

namespace {

std::string join_row(const IntMatrix& m, std::size_t i) {
  std::string s;
  for (std::size_t j = 0; j < m.cols(); ++j) {
    if (j) s += ' ';
    s += m(i, j).get_str();
  }
  return s;
}

[[noreturn]] void parse_error(std::size_t line, const std::string& what) {
  throw std::invalid_argument("parse error at line " + std::to_string(line) + ": " + what);
}

struct LineReader {
  std::vector<std::string> lines;
  std::size_t pos = 0;
  explicit LineReader(const std::string& text) {
    std::istringstream in(text);
    std::string l;
    while (std::getline(in, l)) lines.push_back(l);
  }
  std::string next(const char* expecting) {
    if (pos >= lines.size()) parse_error(pos + 1, std::string("unexpected end of input, expected ") + expecting);
    return lines[pos++];
  }
  std::size_t line_no() const { return pos; }
};

std::vector<std::string> tokens(const std::string& line) {
  std::istringstream in(line);
  std::vector<std::string> out;
  std::string t;
  while (in >> t) out.push_back(t);
  return out;
}

long parse_long(const std::string& s, std::size_t line) {
  try {
    std::size_t used = 0;
    long v = std::stol(s, &used);
    if (used != s.size()) parse_error(line, "not an integer: " + s);
    return v;
  } catch (const std::logic_error&) {
    parse_error(line, "not an integer: " + s);
  }
}

Integer parse_integer(const std::string& s, std::size_t line) {
  Integer z;
  if (s.empty() || z.set_str(s, 10) != 0) parse_error(line, "not an integer: " + s);
  return z;
}

std::size_t keyword_count(LineReader& r, const std::string& keyword) {
  auto t = tokens(r.next(keyword.c_str()));
  if (t.size() != 2 || t[0] != keyword) parse_error(r.line_no(), "expected '" + keyword + " N'");
  long v = parse_long(t[1], r.line_no());
  if (v < 0) parse_error(r.line_no(), "negative count");
  return static_cast<std::size_t>(v);
}

}  // namespace

std::string serialize(const SimplicialComplex& s) {
  std::ostringstream out;
  out << "dim " << s.dim() << "\n";
  out << "vertices " << s.vertex_count() << "\n";
  out << "facets " << s.facets().size() << "\n";
  for (const auto& f : s.facets()) {
    for (std::size_t i = 0; i < f.size(); ++i) out << (i ? " " : "") << f[i];
    out << "\n";
  }
  return out.str();
}

std::string serialize(const ChainComplex& x) {
  std::ostringstream out;
  out << "dim " << x.dim() << "\n";
  out << "cells";
  for (int k = 0; k <= x.dim(); ++k) out << " " << x.num_cells(k);
  out << "\n";
  for (int k = 0; k <= x.dim(); ++k) {
    out << "labels " << k << "\n";
    const auto& l = x.labels(k);
    for (std::size_t i = 0; i < l.size(); ++i) out << (i ? " " : "") << l[i];
    out << "\n";
  }
  for (int k = 1; k <= x.dim(); ++k) {
    const IntMatrix& b = x.boundary(k);
    out << "matrix " << k << " " << b.rows() << " " << b.cols() << "\n";
    for (std::size_t i = 0; i < b.rows(); ++i) out << join_row(b, i) << "\n";
  }
  return out.str();
}

ComplexFile parse_complex(const std::string& text) {
  LineReader r(text);
  const long d = static_cast<long>(keyword_count(r, "dim"));
  auto t = tokens(r.next("'vertices' or 'cells'"));
  if (t.empty()) parse_error(r.line_no(), "expected 'vertices' or 'cells'");

  if (t[0] == "vertices") {
    if (t.size() != 2) parse_error(r.line_no(), "expected 'vertices N'");
    const long n = parse_long(t[1], r.line_no());
    const std::size_t m = keyword_count(r, "facets");
    std::vector<Face> facets;
    for (std::size_t i = 0; i < m; ++i) {
      Face f;
      for (const auto& tok : tokens(r.next("a facet line"))) f.push_back(static_cast<int>(parse_long(tok, r.line_no())));
      if (f.empty()) parse_error(r.line_no(), "empty facet");
      if (!std::is_sorted(f.begin(), f.end())) parse_error(r.line_no(), "facet vertices must be sorted");
      facets.push_back(std::move(f));
    }
    if (r.pos != r.lines.size()) parse_error(r.pos + 1, "trailing content");
    auto s = SimplicialComplex::from_facets(static_cast<int>(n), facets);
    if (s.dim() != d) parse_error(1, "declared dim does not match facets");
    if (s.facets() != facets) parse_error(1, "facets must be listed sorted, without redundancy");
    ComplexFile cf;
    cf.chain = s.compile();
    cf.simplicial = std::move(s);
    return cf;
  }

  if (t[0] != "cells") parse_error(r.line_no(), "expected 'vertices' or 'cells'");
  if (t.size() != static_cast<std::size_t>(d) + 2) parse_error(r.line_no(), "expected d+1 cell counts");
  std::vector<std::size_t> counts;
  for (std::size_t i = 1; i < t.size(); ++i) {
    long c = parse_long(t[i], r.line_no());
    if (c < 0) parse_error(r.line_no(), "negative cell count");
    counts.push_back(static_cast<std::size_t>(c));
  }
  std::vector<std::vector<std::string>> labels;
  for (long k = 0; k <= d; ++k) {
    auto h = tokens(r.next("'labels k'"));
    if (h.size() != 2 || h[0] != "labels" || parse_long(h[1], r.line_no()) != k)
      parse_error(r.line_no(), "expected 'labels " + std::to_string(k) + "'");
    labels.push_back(tokens(r.next("a label line")));
    if (labels.back().size() != counts[k]) parse_error(r.line_no(), "label count does not match cell count");
  }
  std::vector<IntMatrix> boundaries;
  for (long k = 1; k <= d; ++k) {
    auto h = tokens(r.next("'matrix k rows cols'"));
    if (h.size() != 4 || h[0] != "matrix" || parse_long(h[1], r.line_no()) != k)
      parse_error(r.line_no(), "expected 'matrix " + std::to_string(k) + " rows cols'");
    const long rows = parse_long(h[2], r.line_no()), cols = parse_long(h[3], r.line_no());
    if (rows != static_cast<long>(counts[k - 1]) || cols != static_cast<long>(counts[k]))
      parse_error(r.line_no(), "matrix shape does not match cell counts");
    IntMatrix b(rows, cols);
    for (long i = 0; i < rows; ++i) {
      auto row = tokens(r.next("a matrix row"));
      if (row.size() != static_cast<std::size_t>(cols)) parse_error(r.line_no(), "wrong number of matrix entries");
      for (long j = 0; j < cols; ++j) b(i, j) = parse_integer(row[j], r.line_no());
    }
    boundaries.push_back(std::move(b));
  }
  if (r.pos != r.lines.size()) parse_error(r.pos + 1, "trailing content");
  ComplexFile cf;
  cf.chain = ChainComplex(std::move(labels), std::move(boundaries));
  return cf;
}

std::string serialize(const WeightAssignment& w) {
  std::ostringstream out;
  for (const auto& [k, i, value] : w.entries()) out << k << " " << i << " " << value.get_str() << "\n";
  return out.str();
}

WeightAssignment parse_weights(const std::string& text) {
  LineReader r(text);
  WeightAssignment w;
  while (r.pos < r.lines.size()) {
    auto t = tokens(r.next("a weight line"));
    if (t.size() != 3) parse_error(r.line_no(), "expected 'dim index value'");
    const long k = parse_long(t[0], r.line_no()), i = parse_long(t[1], r.line_no());
    if (k < 0 || i < 0) parse_error(r.line_no(), "negative dimension or index");
    Rational q;
    if (q.set_str(t[2], 10) != 0 || q.get_den() == 0) parse_error(r.line_no(), "not a rational: " + t[2]);
    q.canonicalize();
    if (q.get_str() != t[2]) parse_error(r.line_no(), "rational not in lowest terms: " + t[2]);
    if (w.has(static_cast<int>(k), static_cast<std::size_t>(i))) parse_error(r.line_no(), "duplicate weight");
    try {
      w.set(static_cast<int>(k), static_cast<std::size_t>(i), q);
    } catch (const std::invalid_argument& e) {
      parse_error(r.line_no(), e.what());
    }
  }
  return w;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_file(const std::string& path, const std::string& contents) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << contents;
}

}  // namespace celltree
