#include "celltree/families.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <set>
#include <stdexcept>

namespace celltree {

namespace {

Integer power(const Integer& base, const Integer& exponent) {
  if (exponent < 0) throw std::domain_error("power: negative exponent");
  if (exponent == 0) return 1;
  if (base == 0) return 0;
  if (base == 1) return 1;
  if (!exponent.fits_ulong_p()) throw std::overflow_error("power: exponent too large");
  Integer out;
  mpz_pow_ui(out.get_mpz_t(), base.get_mpz_t(), exponent.get_ui());
  return out;
}

Rational rpower(const Rational& base, const Integer& exponent) {
  if (!exponent.fits_slong_p()) throw std::overflow_error("power: exponent too large");
  return rational_power(base, exponent.get_si());
}

// Subsets of [r] as bitmasks.
std::vector<std::uint32_t> subsets(int r) {
  std::vector<std::uint32_t> out(std::size_t{1} << r);
  std::iota(out.begin(), out.end(), 0u);
  return out;
}

void require_weights(const std::vector<Rational>& v, std::size_t n, const char* what) {
  if (v.size() != n) throw std::invalid_argument(std::string(what) + ": expected " + std::to_string(n) + " weights");
  for (const auto& w : v)
    if (w <= 0) throw std::invalid_argument(std::string(what) + ": weights must be positive");
}

std::vector<Face> all_subsets_of_size(int n, int size) {
  std::vector<Face> out;
  Face cur;
  auto rec = [&](auto&& self, int next) -> void {
    if (static_cast<int>(cur.size()) == size) {
      out.push_back(cur);
      return;
    }
    for (int v = next; v <= n; ++v) {
      cur.push_back(v);
      self(self, v + 1);
      cur.pop_back();
    }
  };
  rec(rec, 1);
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------

Partition::Partition(std::vector<int> parts) : parts_(std::move(parts)) {
  if (parts_.empty()) throw std::invalid_argument("partition: no parts");
  for (std::size_t i = 0; i < parts_.size(); ++i) {
    if (parts_[i] <= 0) throw std::invalid_argument("partition: parts must be positive");
    if (i && parts_[i] > parts_[i - 1]) throw std::invalid_argument("partition: parts must be weakly decreasing");
  }
}

int Partition::size() const { return std::accumulate(parts_.begin(), parts_.end(), 0); }

Partition Partition::conjugate() const {
  std::vector<int> c(parts_.front(), 0);
  for (int p : parts_)
    for (int j = 0; j < p; ++j) ++c[j];
  return Partition(std::move(c));
}

// ---------------------------------------------------------------------------

SimplicialComplex simplex_skeleton(int n, int d) {
  if (d < 0 || d >= n || n > 12) throw std::invalid_argument("simplex_skeleton: need 0 <= d < n <= 12");
  return SimplicialComplex::from_facets(n, all_subsets_of_size(n, d + 1));
}

Integer kalai_count(int n, int d) {
  if (d < 0 || d >= n) throw std::invalid_argument("kalai_count: need 0 <= d < n");
  if (d == 0) return n;
  return power(n, binomial(n - 2, d));
}

Rational kalai_weighted(int n, int d, const std::vector<Rational>& v) {
  if (d < 1 || d >= n) throw std::invalid_argument("kalai_weighted: need 1 <= d < n");
  require_weights(v, n, "kalai_weighted");
  Rational prod = 1, sum = 0;
  for (const auto& x : v) {
    prod *= x;
    sum += x;
  }
  return rpower(prod, binomial(n - 2, d - 1)) * rpower(sum, binomial(n - 2, d));
}

WeightAssignment vertex_weighting(const SimplicialComplex& s, const std::vector<Rational>& v) {
  require_weights(v, s.vertex_count(), "vertex_weighting");
  WeightAssignment w;
  for (int k = 0; k <= s.dim(); ++k) {
    const auto& faces = s.faces(k);
    for (std::size_t i = 0; i < faces.size(); ++i) {
      Rational p = 1;
      for (int u : faces[i]) p *= v[u - 1];
      w.set(k, i, p);
    }
  }
  return w;
}

// ---------------------------------------------------------------------------

SimplicialComplex complete_colorful(const std::vector<int>& sizes) {
  if (sizes.empty()) throw std::invalid_argument("complete_colorful: need at least one color");
  for (int n : sizes)
    if (n < 1) throw std::invalid_argument("complete_colorful: color classes must be nonempty");
  std::vector<int> first(sizes.size());
  int total = 0;
  for (std::size_t i = 0; i < sizes.size(); ++i) {
    first[i] = total + 1;
    total += sizes[i];
  }
  std::vector<Face> facets;
  Face cur;
  auto rec = [&](auto&& self, std::size_t color) -> void {
    if (color == sizes.size()) {
      facets.push_back(cur);
      return;
    }
    for (int t = 0; t < sizes[color]; ++t) {
      cur.push_back(first[color] + t);
      self(self, color + 1);
      cur.pop_back();
    }
  };
  rec(rec, 0);
  return SimplicialComplex::from_facets(total, std::move(facets));
}

Integer adin_count(int k, const std::vector<int>& sizes) {
  const int r = static_cast<int>(sizes.size());
  if (k < 0 || k > r - 1) throw std::invalid_argument("adin_count: need 0 <= k <= r-1");
  Integer out = 1;
  for (std::uint32_t d : subsets(r)) {
    const int size = std::popcount(d);
    if (size > k) continue;
    Integer sigma = 0, pi = 1;
    for (int i = 0; i < r; ++i) {
      if (d >> i & 1)
        pi *= sizes[i] - 1;
      else
        sigma += sizes[i];
    }
    out *= power(sigma, binomial(r - 2 - size, k - size) * pi);
  }
  return out;
}

Integer cross_polytope_count(int k, int r) {
  if (k < 0 || k > r - 1) throw std::invalid_argument("cross_polytope_count: need 0 <= k <= r-1");
  Integer out = 1;
  for (int d = 0; d <= k; ++d) out *= power(2 * (r - d), binomial(r, d) * binomial(r - 2 - d, k - d));
  return out;
}

Rational aalipour_duval_weighted(int k, const std::vector<int>& sizes, const std::vector<std::vector<Rational>>& v) {
  const int r = static_cast<int>(sizes.size());
  if (k < 0 || k > r - 1) throw std::invalid_argument("aalipour_duval_weighted: need 0 <= k <= r-1");
  if (static_cast<int>(v.size()) != r) throw std::invalid_argument("aalipour_duval_weighted: one weight list per color");
  std::vector<Rational> p(r, 1), s(r, 0);
  for (int j = 0; j < r; ++j) {
    require_weights(v[j], sizes[j], "aalipour_duval_weighted");
    for (const auto& x : v[j]) {
      p[j] *= x;
      s[j] += x;
    }
  }
  Rational out = 1;
  for (int j = 0; j < r; ++j) {
    Integer e = 0;
    for (std::uint32_t d : subsets(r)) {
      const int size = std::popcount(d);
      if ((d >> j & 1) || size > k - 1) continue;
      Integer prod = 1;
      for (int t = 0; t < r; ++t)
        if (d >> t & 1) prod *= sizes[t];
      e += ((k - 1 - size) % 2 == 0) ? prod : Integer(-prod);
    }
    out *= rpower(p[j], e);
  }
  for (std::uint32_t d : subsets(r)) {
    const int size = std::popcount(d);
    if (size > k) continue;
    Rational sum = 0;
    Integer pi = 1;
    for (int j = 0; j < r; ++j) {
      if (d >> j & 1)
        pi *= sizes[j] - 1;
      else
        sum += s[j];
    }
    out *= rpower(sum, binomial(r - 2 - size, k - size) * pi);
  }
  return out;
}

std::vector<Rational> flatten_color_weights(const std::vector<std::vector<Rational>>& v) {
  std::vector<Rational> out;
  for (const auto& c : v) out.insert(out.end(), c.begin(), c.end());
  return out;
}

// ---------------------------------------------------------------------------

std::vector<std::string> hypercube_cells(int n, int k) {
  if (n < 0 || n > 5) throw std::invalid_argument("hypercube: need 0 <= n <= 5");
  std::vector<std::string> out;
  std::string w(n, '0');
  auto rec = [&](auto&& self, int i, int left) -> void {
    if (i == n) {
      if (left == 0) out.push_back(w);
      return;
    }
    for (char c : {'0', '1', 'I'}) {
      if (c == 'I' && left == 0) continue;
      w[i] = c;
      self(self, i + 1, left - (c == 'I'));
    }
  };
  if (k >= 0 && k <= n) rec(rec, 0, k);
  return out;
}

ChainComplex hypercube_complex(int n) {
  if (n < 1 || n > 5) throw std::invalid_argument("hypercube_complex: need 1 <= n <= 5");
  std::vector<std::vector<std::string>> labels;
  for (int k = 0; k <= n; ++k) labels.push_back(hypercube_cells(n, k));
  std::vector<IntMatrix> boundaries;
  for (int k = 1; k <= n; ++k) {
    std::map<std::string, std::size_t> row;
    for (std::size_t i = 0; i < labels[k - 1].size(); ++i) row[labels[k - 1][i]] = i;
    IntMatrix b(labels[k - 1].size(), labels[k].size());
    for (std::size_t j = 0; j < labels[k].size(); ++j) {
      const std::string& c = labels[k][j];
      int before = 0;
      for (int i = 0; i < n; ++i) {
        if (c[i] != 'I') continue;
        const int sign = before % 2 ? -1 : 1;
        std::string up = c, down = c;
        up[i] = '1';
        down[i] = '0';
        b(row.at(up), j) += sign;
        b(row.at(down), j) -= sign;
        ++before;
      }
    }
    boundaries.push_back(std::move(b));
  }
  return ChainComplex(std::move(labels), std::move(boundaries));
}

Integer hypercube_tau(int k, int n) {
  if (n < 1 || k < 0 || k > n) throw std::invalid_argument("hypercube_tau: need 0 <= k <= n, n >= 1");
  if (k == 0) return power(2, n);
  if (k == 1) {
    Integer out = power(2, power(2, n) - n - 1);
    for (int j = 2; j <= n; ++j) out *= power(j, binomial(n, j));
    return out;
  }
  Integer out = 1;
  for (int j = k + 1; j <= n; ++j) out *= power(2 * j, binomial(n, j) * binomial(j - 2, k - 1));
  return out;
}

WeightAssignment hypercube_weights(const ChainComplex& cube, const std::vector<Rational>& q,
                                   const std::vector<Rational>& x, const std::vector<Rational>& y) {
  const int n = cube.dim();
  require_weights(q, n, "hypercube_weights");
  require_weights(x, n, "hypercube_weights");
  require_weights(y, n, "hypercube_weights");
  WeightAssignment w;
  for (int k = 0; k <= n; ++k) {
    const auto& labels = cube.labels(k);
    for (std::size_t j = 0; j < labels.size(); ++j) {
      Rational p = 1;
      for (int i = 0; i < n; ++i) p *= labels[j][i] == 'I' ? q[i] : labels[j][i] == '0' ? x[i] : y[i];
      w.set(k, j, p);
    }
  }
  return w;
}

Rational hypercube_weighted(int k, int n, const std::vector<Rational>& q, const std::vector<Rational>& x,
                            const std::vector<Rational>& y) {
  if (n < 1 || k < 1 || k > n) throw std::invalid_argument("hypercube_weighted: need 1 <= k <= n");
  require_weights(q, n, "hypercube_weighted");
  require_weights(x, n, "hypercube_weighted");
  require_weights(y, n, "hypercube_weighted");
  // The i = k-1 term carries binom(k-2, k-2) = 1, including binom(-1,-1) at k = 1.
  Integer qexp = 0;
  for (int i = k - 1; i <= n - 1; ++i) qexp += binomial(n - 1, i) * (i == k - 1 ? Integer(1) : binomial(i - 1, k - 2));
  Rational qprod = 1;
  for (const auto& v : q) qprod *= v;
  Rational out = rpower(qprod, qexp);
  for (std::uint32_t a : subsets(n)) {
    const int size = std::popcount(a);
    if (size <= k) continue;
    Rational u = 0, xy = 1;
    for (int i = 0; i < n; ++i)
      if (a >> i & 1) {
        u += q[i] / x[i] + q[i] / y[i];
        xy *= x[i] * y[i];
      }
    out *= rpower(u * xy, binomial(size - 2, k - 1));
  }
  return out;
}

// ---------------------------------------------------------------------------

bool componentwise_leq(const Face& a, const Face& b) {
  if (std::includes(b.begin(), b.end(), a.begin(), a.end())) return true;
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

SimplicialComplex shifted_complex(int n, const std::vector<Face>& generators) {
  if (generators.empty()) throw std::invalid_argument("shifted_complex: no generators");
  std::vector<Face> gens = generators;
  for (auto& g : gens) std::sort(g.begin(), g.end());
  const std::size_t size = gens.front().size();
  for (const auto& g : gens)
    if (g.size() != size) throw std::invalid_argument("shifted_complex: generators must have equal dimension");
  std::vector<Face> facets;
  for (const auto& f : all_subsets_of_size(n, static_cast<int>(size)))
    if (std::any_of(gens.begin(), gens.end(), [&](const Face& g) { return componentwise_leq(f, g); }))
      facets.push_back(f);
  return SimplicialComplex::from_facets(n, std::move(facets));
}

bool is_shifted(const SimplicialComplex& s) {
  for (int k = 0; k <= s.dim(); ++k)
    for (const auto& f : s.faces(k))
      for (std::size_t i = 0; i < f.size(); ++i) {
        const int lower = i ? f[i - 1] + 1 : 1;
        if (f[i] - 1 < lower) continue;
        Face g = f;
        --g[i];
        if (!s.contains(g)) return false;
      }
  return true;
}

std::vector<Signature> shifted_signatures(const SimplicialComplex& s) {
  const int d = s.dim();
  std::vector<Signature> out;
  for (const auto& a : s.faces(d)) {
    if (a.front() == 1) continue;  // not in the deletion of vertex 1
    for (std::size_t j = 0; j < a.size(); ++j) {
      if (j + 1 < a.size() && a[j] + 1 >= a[j + 1]) continue;
      Face b = a;
      ++b[j];
      if (s.contains(b)) continue;
      out.push_back(Signature{Face(a.begin(), a.begin() + static_cast<long>(j)), a[j]});
    }
  }
  return out;
}

Rational shifted_tau_coarse(const SimplicialComplex& s, const std::vector<Rational>& v) {
  if (!s.is_pure()) throw std::invalid_argument("shifted_tau_coarse: complex is not pure");
  if (!is_shifted(s)) throw std::invalid_argument("shifted_tau_coarse: complex is not shifted");
  const int d = s.dim();
  if (d < 1) throw std::invalid_argument("shifted_tau_coarse: need dimension >= 1");
  require_weights(v, s.vertex_count(), "shifted_tau_coarse");
  Rational out = 1;
  // Link of vertex 1 in dimension d-1: one factor v_1 Π_{j∈F} v_j per facet F ∪ {1}.
  for (const auto& f : s.faces(d)) {
    if (f.front() != 1) continue;
    for (int u : f) out *= v[u - 1];
  }
  for (const auto& sig : shifted_signatures(s)) {
    Rational sum = 0;
    for (int j = 1; j <= sig.t; ++j) sum += v[j - 1];
    out *= sum / v[0];
  }
  return out;
}

std::vector<int> facet_degrees(const SimplicialComplex& s) {
  std::vector<int> deg(s.vertex_count(), 0);
  for (const auto& f : s.faces(s.dim()))
    for (int u : f) ++deg[u - 1];
  std::sort(deg.begin(), deg.end(), std::greater<>());
  while (!deg.empty() && deg.back() == 0) deg.pop_back();
  return deg;
}

// ---------------------------------------------------------------------------

SimplicialComplex ferrers_graph(const Partition& lambda) {
  const int n = static_cast<int>(lambda.length()), m = lambda[0];
  std::vector<Face> edges;
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < lambda[p]; ++q) edges.push_back({p + 1, n + q + 1});
  return SimplicialComplex::from_facets(n + m, std::move(edges));
}

Rational ferrers_weighted(const Partition& lambda, const std::vector<Rational>& x, const std::vector<Rational>& y) {
  const Partition conj = lambda.conjugate();
  const std::size_t n = lambda.length(), m = conj.length();
  require_weights(x, n, "ferrers_weighted");
  require_weights(y, m, "ferrers_weighted");
  std::vector<Rational> xs(n + 1, 0), ys(m + 1, 0);  // prefix sums
  Rational out = 1;
  for (std::size_t i = 0; i < n; ++i) {
    xs[i + 1] = xs[i] + x[i];
    out *= x[i];
  }
  for (std::size_t i = 0; i < m; ++i) {
    ys[i + 1] = ys[i] + y[i];
    out *= y[i];
  }
  for (std::size_t p = 1; p < n; ++p) out *= ys[lambda[p]];
  for (std::size_t q = 1; q < m; ++q) out *= xs[conj[q]];
  return out;
}

// ---------------------------------------------------------------------------

MatroidOracle::MatroidOracle(int ground, std::function<int(std::uint32_t)> rank) : n_(ground) {
  if (ground < 0 || ground > kMaxGround) throw std::invalid_argument("matroid: ground set too large");
  rank_.resize(std::size_t{1} << ground);
  for (std::uint32_t a = 0; a < rank_.size(); ++a) rank_[a] = rank(a);
}

MatroidOracle MatroidOracle::graphic(int vertices, const std::vector<std::pair<int, int>>& edges) {
  for (const auto& [u, v] : edges)
    if (u < 1 || v < 1 || u > vertices || v > vertices)
      throw std::invalid_argument("graphic matroid: edge endpoint out of range");
  return MatroidOracle(static_cast<int>(edges.size()), [vertices, edges](std::uint32_t a) {
    std::vector<int> parent(vertices + 1);
    std::iota(parent.begin(), parent.end(), 0);
    auto find = [&](int x) {
      while (parent[x] != x) x = parent[x] = parent[parent[x]];
      return x;
    };
    int r = 0;
    for (std::size_t e = 0; e < edges.size(); ++e) {
      if (!(a >> e & 1)) continue;
      const int ru = find(edges[e].first), rv = find(edges[e].second);
      if (ru != rv) {
        parent[ru] = rv;
        ++r;
      }
    }
    return r;
  });
}

MatroidOracle MatroidOracle::uniform(int rank, int ground) {
  if (rank < 0 || rank > ground) throw std::invalid_argument("uniform matroid: need 0 <= rank <= ground");
  return MatroidOracle(ground, [rank](std::uint32_t a) { return std::min(rank, std::popcount(a)); });
}

int MatroidOracle::rank(std::uint32_t set) const {
  if (set & ~full()) throw std::out_of_range("matroid: set outside ground");
  return rank_[set];
}

std::vector<std::uint32_t> MatroidOracle::bases() const {
  std::vector<std::uint32_t> out;
  const int r = rank();
  for (std::uint32_t a = 0; a <= full(); ++a)
    if (std::popcount(a) == r && rank_[a] == r) out.push_back(a);
  return out;
}

std::vector<std::uint32_t> MatroidOracle::flats() const {
  std::vector<std::uint32_t> out;
  for (std::uint32_t a = 0; a <= full(); ++a) {
    bool closed = true;
    for (int e = 0; e < n_ && closed; ++e)
      if (!(a >> e & 1) && rank_[a | (1u << e)] == rank_[a]) closed = false;
    if (closed) out.push_back(a);
  }
  return out;
}

bool MatroidOracle::satisfies_rank_axioms() const {
  if (rank_[0] != 0) return false;
  for (std::uint32_t a = 0; a <= full(); ++a) {
    if (rank_[a] < 0 || rank_[a] > std::popcount(a)) return false;
    for (std::uint32_t b = 0; b <= full(); ++b) {
      if ((a & b) == a && rank_[a] > rank_[b]) return false;
      if (rank_[a | b] + rank_[a & b] > rank_[a] + rank_[b]) return false;
    }
  }
  return true;
}

namespace {

// Rank in the minor (M restricted to ground ∪ contracted) / contracted.
int minor_rank(const MatroidOracle& m, std::uint32_t a, std::uint32_t contracted) {
  return m.rank(a | contracted) - m.rank(contracted);
}

TuttePolynomial shift(const TuttePolynomial& t, int dx, int dy) {
  TuttePolynomial out;
  for (const auto& [e, c] : t) out[{e.first + dx, e.second + dy}] = c;
  return out;
}

void add_into(TuttePolynomial& a, const TuttePolynomial& b) {
  for (const auto& [e, c] : b) {
    a[e] += c;
    if (a[e] == 0) a.erase(e);
  }
}

TuttePolynomial tutte_minor(const MatroidOracle& m, std::uint32_t ground, std::uint32_t contracted,
                            std::map<std::pair<std::uint32_t, std::uint32_t>, TuttePolynomial>& memo) {
  if (ground == 0) return {{{0, 0}, Integer(1)}};
  const auto key = std::make_pair(ground, contracted);
  if (auto it = memo.find(key); it != memo.end()) return it->second;
  const std::uint32_t e = ground & (~ground + 1);
  const std::uint32_t rest = ground & ~e;
  TuttePolynomial out;
  if (minor_rank(m, e, contracted) == 0) {
    out = shift(tutte_minor(m, rest, contracted, memo), 0, 1);  // loop
  } else if (minor_rank(m, rest, contracted) < minor_rank(m, ground, contracted)) {
    out = shift(tutte_minor(m, rest, contracted | e, memo), 1, 0);  // coloop
  } else {
    out = tutte_minor(m, rest, contracted, memo);
    add_into(out, tutte_minor(m, rest, contracted | e, memo));
  }
  memo.emplace(key, out);
  return out;
}

TuttePolynomial tutte_of_minor(const MatroidOracle& m, std::uint32_t ground, std::uint32_t contracted) {
  std::map<std::pair<std::uint32_t, std::uint32_t>, TuttePolynomial> memo;
  return tutte_minor(m, ground, contracted, memo);
}

}  // namespace

TuttePolynomial tutte_polynomial(const MatroidOracle& m) { return tutte_of_minor(m, m.full(), 0); }

TuttePolynomial tutte_by_rank_expansion(const MatroidOracle& m) {
  // (x-1)^a (y-1)^b expanded binomially.
  TuttePolynomial out;
  const int r = m.rank();
  for (std::uint32_t s = 0; s <= m.full(); ++s) {
    const int a = r - m.rank(s), b = std::popcount(s) - m.rank(s);
    for (int i = 0; i <= a; ++i)
      for (int j = 0; j <= b; ++j) {
        Integer c = binomial(a, i) * binomial(b, j);
        if ((a - i + b - j) % 2) c = -c;
        out[{i, j}] += c;
      }
  }
  std::erase_if(out, [](const auto& kv) { return kv.second == 0; });
  return out;
}

Integer tutte_evaluate(const TuttePolynomial& t, const Integer& x, const Integer& y) {
  Integer out = 0;
  for (const auto& [e, c] : t) out += c * power(x, e.first) * power(y, e.second);
  return out;
}

std::string tutte_to_text(const TuttePolynomial& t) {
  if (t.empty()) return "0";
  std::string out;
  for (const auto& [e, c] : t) {
    if (!out.empty()) out += c < 0 ? " - " : " + ";
    else if (c < 0) out += "-";
    const Integer a = abs(c);
    std::string term;
    if (e.first) term += "x" + (e.first > 1 ? "^" + std::to_string(e.first) : "");
    if (e.second) term += (term.empty() ? "" : "*") + std::string("y") + (e.second > 1 ? "^" + std::to_string(e.second) : "");
    if (term.empty()) out += a.get_str();
    else out += (a == 1 ? "" : a.get_str() + "*") + term;
  }
  return out;
}

SimplicialComplex matroid_complex(const MatroidOracle& m) {
  if (m.rank() == 0) throw std::invalid_argument("matroid_complex: rank-0 matroid has an empty independence complex");
  std::vector<Face> facets;
  for (std::uint32_t b : m.bases()) {
    Face f;
    for (int e = 0; e < m.ground(); ++e)
      if (b >> e & 1) f.push_back(e + 1);
    facets.push_back(std::move(f));
  }
  return SimplicialComplex::from_facets(m.ground(), std::move(facets));
}

Integer crapo_beta(const MatroidOracle& m, std::uint32_t ground, std::uint32_t contracted) {
  Integer sum = 0;
  for (std::uint32_t a = ground;; a = (a - 1) & ground) {
    const int r = minor_rank(m, a, contracted);
    sum += (std::popcount(a) % 2) ? -r : r;
    if (a == 0) break;
  }
  return minor_rank(m, ground, contracted) % 2 ? Integer(-sum) : sum;
}

Integer kook_lee_tau(const MatroidOracle& m) {
  if (m.ground() > 10) throw std::invalid_argument("kook_lee_tau: ground set larger than 10");
  Integer out = 1;
  for (std::uint32_t f : m.flats()) {
    const std::uint32_t rest = m.full() & ~f;
    const Integer alpha = tutte_evaluate(tutte_of_minor(m, f, 0), 0, 1);
    const Integer beta = crapo_beta(m, rest, f);
    out *= power(std::popcount(rest), alpha * beta);
  }
  return out;
}

// ---------------------------------------------------------------------------

namespace {

const std::map<std::string, std::pair<int, std::vector<Face>>>& named_facets() {
  static const std::map<std::string, std::pair<int, std::vector<Face>>> table{
      {"bipyramid", {5, {{1, 2, 3}, {1, 2, 4}, {1, 2, 5}, {1, 3, 4}, {1, 3, 5}, {2, 3, 4}, {2, 3, 5}}}},
      // Antipodal quotient of the icosahedron.
      {"rp2_six_vertex",
       {6,
        {{1, 2, 5}, {1, 2, 6}, {1, 3, 4}, {1, 3, 5}, {1, 4, 6}, {2, 3, 4}, {2, 3, 6}, {2, 4, 5}, {3, 5, 6}, {4, 5, 6}}}},
      // Boundary circles 1-2-3 and 4-5-6.
      {"annulus", {6, {{1, 2, 4}, {2, 4, 5}, {2, 3, 5}, {3, 5, 6}, {1, 3, 6}, {1, 4, 6}}}},
      // Boundary is the single 5-cycle 1-3-5-2-4.
      {"moebius", {5, {{1, 2, 3}, {2, 3, 4}, {3, 4, 5}, {1, 4, 5}, {1, 2, 5}}}},
  };
  return table;
}

}  // namespace

const std::vector<std::string>& named_complex_names() {
  static const std::vector<std::string> names{"annulus", "bipyramid", "moebius", "rp2_cell", "rp2_six_vertex"};
  return names;
}

SimplicialComplex named_simplicial(const std::string& name) {
  const auto& table = named_facets();
  auto it = table.find(name);
  if (it == table.end()) throw std::invalid_argument("unknown simplicial complex name '" + name + "'");
  return SimplicialComplex::from_facets(it->second.first, it->second.second);
}

ChainComplex named_complex(const std::string& name) {
  if (name == "rp2_cell") return ChainComplex({{"v"}, {"e"}, {"f"}}, {IntMatrix{{0}}, IntMatrix{{2}}});
  if (!named_facets().count(name)) throw std::invalid_argument("unknown complex name '" + name + "'");
  return named_simplicial(name).compile();
}

}  // namespace celltree
