#include "celltree/exact_linalg.hpp"

#include <algorithm>
#include <utility>

namespace celltree {

namespace {

void require_square(std::size_t rows, std::size_t cols, const char* what) {
  if (rows != cols) throw std::invalid_argument(std::string(what) + ": matrix must be square");
}

Integer lcm_of_row_denominators(const RatMatrix& m, std::size_t i) {
  Integer l = 1;
  for (std::size_t j = 0; j < m.cols(); ++j) mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), m(i, j).get_den_mpz_t());
  return l;
}

// Clears row denominators; returns the integer matrix and the product of the
// row scale factors.
std::pair<IntMatrix, Integer> clear_denominators(const RatMatrix& m) {
  IntMatrix out(m.rows(), m.cols());
  Integer scale = 1;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    Integer l = lcm_of_row_denominators(m, i);
    scale *= l;
    for (std::size_t j = 0; j < m.cols(); ++j) {
      Rational v = m(i, j) * l;
      out(i, j) = v.get_num();
    }
  }
  return {std::move(out), scale};
}

// Fraction-free (Bareiss) forward elimination in place. Returns the rank and
// flips `sign` on every row swap. For square nonsingular input the last
// pivot is the determinant up to sign.
std::size_t bareiss(IntMatrix& a, int& sign) {
  const std::size_t rows = a.rows(), cols = a.cols();
  Integer prev = 1;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < rows; ++c) {
    std::size_t p = r;
    while (p < rows && a(p, c) == 0) ++p;
    if (p == rows) continue;
    if (p != r) {
      for (std::size_t j = 0; j < cols; ++j) std::swap(a(p, j), a(r, j));
      sign = -sign;
    }
    for (std::size_t i = r + 1; i < rows; ++i) {
      for (std::size_t j = c + 1; j < cols; ++j) {
        Integer v = a(r, c) * a(i, j) - a(i, c) * a(r, j);
        mpz_divexact(a(i, j).get_mpz_t(), v.get_mpz_t(), prev.get_mpz_t());
      }
      a(i, c) = 0;
    }
    prev = a(r, c);
    ++r;
  }
  return r;
}

Integer abs_int(const Integer& x) { return x < 0 ? Integer(-x) : x; }

int cmp_abs(const Integer& a, const Integer& b) { return mpz_cmpabs(a.get_mpz_t(), b.get_mpz_t()); }

// Shared SNF engine; transforms are only maintained when the pointers are set.
std::vector<Integer> snf_engine(IntMatrix& d, IntMatrix* u, IntMatrix* v) {
  const std::size_t m = d.rows(), n = d.cols();
  auto swap_rows = [&](std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t j = 0; j < n; ++j) std::swap(d(a, j), d(b, j));
    if (u)
      for (std::size_t j = 0; j < m; ++j) std::swap((*u)(a, j), (*u)(b, j));
  };
  auto swap_cols = [&](std::size_t a, std::size_t b) {
    if (a == b) return;
    for (std::size_t i = 0; i < m; ++i) std::swap(d(i, a), d(i, b));
    if (v)
      for (std::size_t i = 0; i < n; ++i) std::swap((*v)(i, a), (*v)(i, b));
  };
  // row_dst += q * row_src
  auto add_row = [&](std::size_t dst, std::size_t src, const Integer& q) {
    for (std::size_t j = 0; j < n; ++j)
      if (d(src, j) != 0) d(dst, j) += q * d(src, j);
    if (u)
      for (std::size_t j = 0; j < m; ++j)
        if ((*u)(src, j) != 0) (*u)(dst, j) += q * (*u)(src, j);
  };
  auto add_col = [&](std::size_t dst, std::size_t src, const Integer& q) {
    for (std::size_t i = 0; i < m; ++i)
      if (d(i, src) != 0) d(i, dst) += q * d(i, src);
    if (v)
      for (std::size_t i = 0; i < n; ++i)
        if ((*v)(i, src) != 0) (*v)(i, dst) += q * (*v)(i, src);
  };

  std::vector<Integer> factors;
  const std::size_t limit = std::min(m, n);
  for (std::size_t t = 0; t < limit; ++t) {
    // Global smallest pivot in the trailing block.
    std::size_t bi = m, bj = n;
    for (std::size_t i = t; i < m; ++i)
      for (std::size_t j = t; j < n; ++j)
        if (d(i, j) != 0 && (bi == m || cmp_abs(d(i, j), d(bi, bj)) < 0)) bi = i, bj = j;
    if (bi == m) break;
    swap_rows(t, bi);
    swap_cols(t, bj);

    while (true) {
      bool clean = true;
      Integer q;
      for (std::size_t i = t + 1; i < m; ++i) {
        if (d(i, t) == 0) continue;
        mpz_fdiv_q(q.get_mpz_t(), d(i, t).get_mpz_t(), d(t, t).get_mpz_t());
        add_row(i, t, Integer(-q));
        if (d(i, t) != 0) clean = false;
      }
      for (std::size_t j = t + 1; j < n; ++j) {
        if (d(t, j) == 0) continue;
        mpz_fdiv_q(q.get_mpz_t(), d(t, j).get_mpz_t(), d(t, t).get_mpz_t());
        add_col(j, t, Integer(-q));
        if (d(t, j) != 0) clean = false;
      }
      if (!clean) {
        std::size_t pi = t, pj = t;
        for (std::size_t i = t + 1; i < m; ++i)
          if (d(i, t) != 0 && cmp_abs(d(i, t), d(pi, pj)) < 0) pi = i, pj = t;
        for (std::size_t j = t + 1; j < n; ++j)
          if (d(t, j) != 0 && cmp_abs(d(t, j), d(pi, pj)) < 0) pi = t, pj = j;
        swap_rows(t, pi);
        swap_cols(t, pj);
        continue;
      }
      // Divisibility fix-up: pull an offending row into the pivot row.
      std::size_t bad = m;
      for (std::size_t i = t + 1; i < m && bad == m; ++i)
        for (std::size_t j = t + 1; j < n; ++j)
          if (!mpz_divisible_p(d(i, j).get_mpz_t(), d(t, t).get_mpz_t())) {
            bad = i;
            break;
          }
      if (bad == m) break;
      add_row(t, bad, Integer(1));
    }
    if (d(t, t) < 0) {
      for (std::size_t j = 0; j < n; ++j) d(t, j) = -d(t, j);
      if (u)
        for (std::size_t j = 0; j < m; ++j) (*u)(t, j) = -(*u)(t, j);
    }
    factors.push_back(d(t, t));
  }
  return factors;
}

template <class T>
CharPoly<T> berkowitz(const Matrix<T>& a) {
  require_square(a.rows(), a.cols(), "char_poly");
  const std::size_t n = a.rows();
  std::vector<T> p{T(1)};  // ascending coefficients of det(zI - A_k)
  for (std::size_t k = 0; k < n; ++k) {
    // A_{k+1} = [[B, c], [r, x]] with B = leading k x k block.
    const T& x = a(k, k);
    std::vector<T> s(k);  // s_j = r B^j c
    std::vector<T> vec(k), next(k);
    for (std::size_t i = 0; i < k; ++i) vec[i] = a(i, k);
    for (std::size_t j = 0; j < k; ++j) {
      T acc = 0;
      for (std::size_t i = 0; i < k; ++i) acc += a(k, i) * vec[i];
      s[j] = acc;
      if (j + 1 == k) break;
      for (std::size_t i = 0; i < k; ++i) {
        T t = 0;
        for (std::size_t l = 0; l < k; ++l)
          if (vec[l] != 0) t += a(i, l) * vec[l];
        next[i] = t;
      }
      std::swap(vec, next);
    }
    std::vector<T> q(k + 2, T(0));
    for (std::size_t i = 0; i <= k; ++i) {
      q[i + 1] += p[i];
      q[i] -= x * p[i];
    }
    // r adj(zI - B) c = sum_j s_j sum_{i>j} p_i z^{i-j-1}
    for (std::size_t j = 0; j < k; ++j) {
      if (s[j] == 0) continue;
      for (std::size_t i = j + 1; i <= k; ++i) q[i - j - 1] -= s[j] * p[i];
    }
    p = std::move(q);
  }
  return CharPoly<T>{std::move(p)};
}

template <class T>
Rational lowest_nonzero_abs(const std::vector<T>& c) {
  for (const auto& x : c)
    if (x != 0) return Rational(abs(x));
  return Rational(1);
}

}  // namespace

RatMatrix to_rational(const IntMatrix& m) {
  RatMatrix r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = Rational(m(i, j));
  return r;
}

IntMatrix to_integer(const RatMatrix& m) {
  IntMatrix r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) {
      if (m(i, j).get_den() != 1) throw std::invalid_argument("to_integer: non-integral entry " + m(i, j).get_str());
      r(i, j) = m(i, j).get_num();
    }
  return r;
}

std::size_t rank_exact(const IntMatrix& m) {
  IntMatrix a = m;
  int sign = 1;
  return bareiss(a, sign);
}

std::size_t rank_exact(const RatMatrix& m) { return rank_exact(clear_denominators(m).first); }

Integer det_exact(const IntMatrix& m) {
  require_square(m.rows(), m.cols(), "det_exact");
  const std::size_t n = m.rows();
  if (n == 0) return 1;
  IntMatrix a = m;
  int sign = 1;
  if (bareiss(a, sign) < n) return 0;
  return sign * a(n - 1, n - 1);
}

Rational det_exact(const RatMatrix& m) {
  require_square(m.rows(), m.cols(), "det_exact");
  auto [a, scale] = clear_denominators(m);
  Rational r(det_exact(a), scale);
  r.canonicalize();
  return r;
}

RatMatrix solve(const RatMatrix& a, const RatMatrix& b) {
  require_square(a.rows(), a.cols(), "solve");
  if (b.rows() != a.rows()) throw std::invalid_argument("solve: right-hand side row count mismatch");
  const std::size_t n = a.rows(), k = b.cols();
  RatMatrix m = a, x = b;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && m(p, c) == 0) ++p;
    if (p == n) throw std::domain_error("solve: singular matrix");
    if (p != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(p, j), m(c, j));
      for (std::size_t j = 0; j < k; ++j) std::swap(x(p, j), x(c, j));
    }
    const Rational inv = 1 / m(c, c);
    for (std::size_t j = 0; j < n; ++j) m(c, j) *= inv;
    for (std::size_t j = 0; j < k; ++j) x(c, j) *= inv;
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || m(i, c) == 0) continue;
      const Rational f = m(i, c);
      for (std::size_t j = 0; j < n; ++j) m(i, j) -= f * m(c, j);
      for (std::size_t j = 0; j < k; ++j) x(i, j) -= f * x(c, j);
    }
  }
  return x;
}

SNFResult smith_normal_form(const IntMatrix& m) {
  SNFResult out;
  out.diagonal = m;
  out.left_transform = IntMatrix::identity(m.rows());
  out.right_transform = IntMatrix::identity(m.cols());
  out.invariant_factors = snf_engine(out.diagonal, &out.left_transform, &out.right_transform);
  return out;
}

std::vector<Integer> invariant_factors(const IntMatrix& m) {
  IntMatrix d = m;
  return snf_engine(d, nullptr, nullptr);
}

Integer torsion_of_cokernel(const IntMatrix& m) {
  Integer t = 1;
  for (const auto& f : invariant_factors(m)) t *= f;
  return t;
}

CharPoly<Integer> char_poly(const IntMatrix& m) { return berkowitz(m); }
CharPoly<Rational> char_poly(const RatMatrix& m) { return berkowitz(m); }

Rational pseudodeterminant(const IntMatrix& m) { return lowest_nonzero_abs(char_poly(m).coefficients); }
Rational pseudodeterminant(const RatMatrix& m) { return lowest_nonzero_abs(char_poly(m).coefficients); }

std::optional<std::vector<Integer>> nonnegative_integer_roots(const CharPoly<Integer>& poly) {
  std::vector<Integer> c = poly.coefficients;
  std::vector<Integer> roots;
  while (c.size() > 1 && c.front() == 0) {
    roots.push_back(0);
    c.erase(c.begin());
  }
  if (c.size() == 1) return roots;
  // All roots are nonnegative, so each is at most their sum.
  Integer bound = abs_int(c[c.size() - 2]);
  auto eval = [&](const Integer& z) {
    Integer acc = 0;
    for (std::size_t i = c.size(); i-- > 0;) acc = acc * z + c[i];
    return acc;
  };
  for (Integer r = 1; r <= bound && c.size() > 1; ++r) {
    while (c.size() > 1 && eval(r) == 0) {
      // synthetic division by (z - r)
      std::vector<Integer> q(c.size() - 1);
      Integer carry = 0;
      for (std::size_t i = c.size() - 1; i-- > 0;) {
        carry = c[i + 1] + carry * r;
        q[i] = carry;
      }
      c = std::move(q);
      roots.push_back(r);
    }
  }
  if (c.size() > 1) return std::nullopt;
  return roots;
}

CharPoly<Integer> poly_from_roots(std::span<const Integer> roots) {
  std::vector<Integer> p{1};
  for (const auto& r : roots) {
    std::vector<Integer> q(p.size() + 1, 0);
    for (std::size_t i = 0; i < p.size(); ++i) {
      q[i + 1] += p[i];
      q[i] -= r * p[i];
    }
    p = std::move(q);
  }
  return CharPoly<Integer>{std::move(p)};
}

namespace {

// Column Hermite reduction of a; v accumulates the unimodular column
// operations so that a_in · v = [H | 0]. Returns the number of pivot columns.
std::size_t column_hermite(IntMatrix& a, IntMatrix& v) {
  const std::size_t m = a.rows(), n = a.cols();
  v = IntMatrix::identity(n);
  auto combine = [&](std::size_t c, std::size_t j, const Integer& s, const Integer& t, const Integer& x,
                     const Integer& y) {
    // col_c <- s col_c + t col_j ; col_j <- x col_c + y col_j
    for (IntMatrix* mat : {&a, &v}) {
      for (std::size_t i = 0; i < mat->rows(); ++i) {
        Integer ci = (*mat)(i, c), ji = (*mat)(i, j);
        (*mat)(i, c) = s * ci + t * ji;
        (*mat)(i, j) = x * ci + y * ji;
      }
    }
  };
  std::size_t r = 0;
  for (std::size_t i = 0; i < m && r < n; ++i) {
    for (std::size_t j = r + 1; j < n; ++j) {
      if (a(i, j) == 0) continue;
      if (a(i, r) == 0) {
        combine(r, j, 0, 1, 1, 0);
        continue;
      }
      Integer g, s, t;
      const Integer p = a(i, r), q = a(i, j);
      mpz_gcdext(g.get_mpz_t(), s.get_mpz_t(), t.get_mpz_t(), p.get_mpz_t(), q.get_mpz_t());
      combine(r, j, s, t, Integer(-q / g), Integer(p / g));
    }
    if (a(i, r) == 0) continue;
    if (a(i, r) < 0)
      for (IntMatrix* mat : {&a, &v})
        for (std::size_t k = 0; k < mat->rows(); ++k) (*mat)(k, r) = -(*mat)(k, r);
    for (std::size_t c = 0; c < r; ++c) {
      Integer q;
      mpz_fdiv_q(q.get_mpz_t(), a(i, c).get_mpz_t(), a(i, r).get_mpz_t());
      if (q == 0) continue;
      for (IntMatrix* mat : {&a, &v})
        for (std::size_t k = 0; k < mat->rows(); ++k) (*mat)(k, c) -= q * (*mat)(k, r);
    }
    ++r;
  }
  return r;
}

std::vector<std::size_t> iota(std::size_t from, std::size_t to) {
  std::vector<std::size_t> out;
  for (std::size_t i = from; i < to; ++i) out.push_back(i);
  return out;
}

}  // namespace

IntMatrix hermite_basis(const IntMatrix& a) {
  IntMatrix h = a, v;
  const std::size_t r = column_hermite(h, v);
  return h.select_columns(iota(0, r));
}

IntMatrix kernel_basis(const IntMatrix& a) {
  IntMatrix h = a, v;
  const std::size_t r = column_hermite(h, v);
  return v.select_columns(iota(r, a.cols()));
}

IntMatrix saturation(const IntMatrix& a) {
  IntMatrix orth = kernel_basis(a.transpose());
  if (orth.cols() == 0) return IntMatrix::identity(a.rows());
  return kernel_basis(orth.transpose());
}

Integer covolume_squared(const IntMatrix& a) {
  if (rank_exact(a) != a.cols()) throw std::invalid_argument("covolume_squared: columns are linearly dependent");
  return det_exact(a.transpose() * a);
}

std::optional<Integer> lattice_quotient_order(const IntMatrix& basis, const IntMatrix& generators) {
  const std::size_t r = basis.cols();
  if (generators.cols() > 0 && generators.rows() != basis.rows())
    throw std::invalid_argument("lattice_quotient_order: ambient dimension mismatch");
  if (r == 0) {
    if (!generators.is_zero()) throw std::invalid_argument("lattice_quotient_order: generator outside the lattice");
    return Integer(1);
  }
  if (rank_exact(basis) != r) throw std::invalid_argument("lattice_quotient_order: basis columns are dependent");
  if (generators.cols() == 0) return std::nullopt;
  const RatMatrix k = to_rational(basis), s = to_rational(generators);
  const RatMatrix kt = k.transpose();
  const RatMatrix coords = solve(kt * k, kt * s);
  if (!(k * coords == s)) throw std::invalid_argument("lattice_quotient_order: generator outside the span");
  IntMatrix c;
  try {
    c = to_integer(coords);
  } catch (const std::invalid_argument&) {
    throw std::invalid_argument("lattice_quotient_order: generator outside the lattice");
  }
  auto f = invariant_factors(c);
  if (f.size() < r) return std::nullopt;
  Integer order = 1;
  for (const auto& x : f) order *= x;
  return order;
}

bool IncrementalBasis::reduce(std::vector<Integer>& v) const {
  if (v.size() != dim_) throw std::invalid_argument("IncrementalBasis: vector length mismatch");
  for (std::size_t r = 0; r < rows_.size(); ++r) {
    const std::size_t p = pivots_[r];
    if (v[p] == 0) continue;
    const Integer a = rows_[r][p], b = v[p];
    for (std::size_t j = 0; j < dim_; ++j) v[j] = a * v[j] - b * rows_[r][j];
  }
  Integer g = 0;
  for (const auto& x : v)
    if (x != 0) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), x.get_mpz_t());
  if (g == 0) return false;
  if (g != 1)
    for (auto& x : v) mpz_divexact(x.get_mpz_t(), x.get_mpz_t(), g.get_mpz_t());
  return true;
}

bool IncrementalBasis::try_add(std::vector<Integer> v) {
  if (!reduce(v)) return false;
  std::size_t p = 0;
  while (v[p] == 0) ++p;
  rows_.push_back(std::move(v));
  pivots_.push_back(p);
  return true;
}

bool IncrementalBasis::in_span(std::vector<Integer> v) const { return !reduce(v); }

void IncrementalBasis::pop() {
  if (rows_.empty()) throw std::logic_error("IncrementalBasis::pop on empty basis");
  rows_.pop_back();
  pivots_.pop_back();
}

Integer binomial(long n, long k) {
  if (k < 0) return 0;
  if (n < 0) {
    Integer b = binomial(k - n - 1, k);
    return (k % 2) ? Integer(-b) : b;
  }
  if (k > n) return 0;
  Integer out;
  mpz_bin_uiui(out.get_mpz_t(), static_cast<unsigned long>(n), static_cast<unsigned long>(k));
  return out;
}

Rational rational_power(const Rational& base, long exponent) {
  if (exponent == 0) return 1;
  if (base == 0) {
    if (exponent < 0) throw std::domain_error("rational_power: zero to a negative power");
    return 0;
  }
  const unsigned long e = static_cast<unsigned long>(exponent < 0 ? -exponent : exponent);
  Integer num, den;
  mpz_pow_ui(num.get_mpz_t(), base.get_num_mpz_t(), e);
  mpz_pow_ui(den.get_mpz_t(), base.get_den_mpz_t(), e);
  Rational r = exponent > 0 ? Rational(num, den) : Rational(den, num);
  r.canonicalize();
  return r;
}

std::string to_string(const Rational& q) { return q.get_str(); }
std::string to_string(const Integer& z) { return z.get_str(); }

}  // namespace celltree
