#pragma once

// Exact integer and rational matrix kernel. Everything here is arbitrary
// precision (GMP); no floating point is used anywhere.

#include <gmpxx.h>

#include <cstddef>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace celltree {

using Integer = mpz_class;
using Rational = mpq_class;

template <class T>
class Matrix {
 public:
  using value_type = T;

  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  Matrix(std::size_t rows, std::size_t cols, std::vector<T> entries)
      : rows_(rows), cols_(cols), data_(std::move(entries)) {
    if (data_.size() != rows_ * cols_) throw std::invalid_argument("Matrix: entry count != rows*cols");
  }
  Matrix(std::initializer_list<std::initializer_list<T>> init) {
    rows_ = init.size();
    cols_ = rows_ ? init.begin()->size() : 0;
    data_.reserve(rows_ * cols_);
    for (const auto& row : init) {
      if (row.size() != cols_) throw std::invalid_argument("Matrix: ragged initializer");
      data_.insert(data_.end(), row.begin(), row.end());
    }
  }

  static Matrix identity(std::size_t n) {
    Matrix m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool square() const { return rows_ == cols_; }
  bool empty() const { return rows_ == 0 || cols_ == 0; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  const std::vector<T>& entries() const { return data_; }

  Matrix transpose() const {
    Matrix t(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  Matrix submatrix(std::span<const std::size_t> rows, std::span<const std::size_t> cols) const {
    Matrix s(rows.size(), cols.size());
    for (std::size_t i = 0; i < rows.size(); ++i)
      for (std::size_t j = 0; j < cols.size(); ++j) s(i, j) = (*this)(rows[i], cols[j]);
    return s;
  }

  Matrix select_columns(std::span<const std::size_t> cols) const {
    Matrix s(rows_, cols.size());
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols.size(); ++j) s(i, j) = (*this)(i, cols[j]);
    return s;
  }

  Matrix select_rows(std::span<const std::size_t> rows) const {
    Matrix s(rows.size(), cols_);
    for (std::size_t i = 0; i < rows.size(); ++i)
      for (std::size_t j = 0; j < cols_; ++j) s(i, j) = (*this)(rows[i], j);
    return s;
  }

  std::vector<T> column(std::size_t j) const {
    std::vector<T> c(rows_);
    for (std::size_t i = 0; i < rows_; ++i) c[i] = (*this)(i, j);
    return c;
  }

  bool is_zero() const {
    for (const auto& x : data_)
      if (x != 0) return false;
    return true;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (a.cols_ != b.rows_) throw std::invalid_argument("Matrix product: shape mismatch");
    Matrix c(a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i)
      for (std::size_t k = 0; k < a.cols_; ++k) {
        const T& aik = a(i, k);
        if (aik == 0) continue;
        for (std::size_t j = 0; j < b.cols_; ++j) c(i, j) += aik * b(k, j);
      }
    return c;
  }

  friend Matrix operator+(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("Matrix sum: shape mismatch");
    Matrix c = a;
    for (std::size_t i = 0; i < c.data_.size(); ++i) c.data_[i] += b.data_[i];
    return c;
  }

  friend Matrix operator-(const Matrix& a, const Matrix& b) {
    if (a.rows_ != b.rows_ || a.cols_ != b.cols_) throw std::invalid_argument("Matrix difference: shape mismatch");
    Matrix c = a;
    for (std::size_t i = 0; i < c.data_.size(); ++i) c.data_[i] -= b.data_[i];
    return c;
  }

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<T> data_;
};

using IntMatrix = Matrix<Integer>;
using RatMatrix = Matrix<Rational>;

RatMatrix to_rational(const IntMatrix& m);
/// Throws if some entry is not an integer.
IntMatrix to_integer(const RatMatrix& m);
/// Hstack; both operands must have the same row count.
template <class T>
Matrix<T> concat_columns(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.rows() != b.rows() && a.cols() && b.cols())
    throw std::invalid_argument("concat_columns: row count mismatch");
  const std::size_t rows = a.cols() ? a.rows() : b.rows();
  Matrix<T> c(rows, a.cols() + b.cols());
  for (std::size_t i = 0; i < rows; ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) c(i, j) = a(i, j);
    for (std::size_t j = 0; j < b.cols(); ++j) c(i, a.cols() + j) = b(i, j);
  }
  return c;
}

// ---------------------------------------------------------------------------
// Rank, determinant, solving

std::size_t rank_exact(const IntMatrix& m);
std::size_t rank_exact(const RatMatrix& m);

Integer det_exact(const IntMatrix& m);
/// Rows are cleared of denominators, the integer determinant is taken, and
/// the row scale factors are divided back out.
Rational det_exact(const RatMatrix& m);

/// Solves A·X = B for square nonsingular A. Throws std::domain_error if A is singular.
RatMatrix solve(const RatMatrix& a, const RatMatrix& b);

// ---------------------------------------------------------------------------
// Smith normal form

struct SNFResult {
  /// d1 | d2 | ... | dr, all positive; r = rank.
  std::vector<Integer> invariant_factors;
  IntMatrix left_transform;   // U, rows x rows
  IntMatrix right_transform;  // V, cols x cols
  /// U·M·V as computed; equals the padded invariant-factor diagonal.
  IntMatrix diagonal;
};

SNFResult smith_normal_form(const IntMatrix& m);
/// Same invariant factors as smith_normal_form, without tracking transforms.
std::vector<Integer> invariant_factors(const IntMatrix& m);
/// Product of the invariant factors > 1, i.e. the order of the torsion part
/// of the cokernel of m.
Integer torsion_of_cokernel(const IntMatrix& m);

// ---------------------------------------------------------------------------
// Characteristic polynomial and spectral quantities

/// Monic characteristic polynomial det(z·Id − M); coefficients in ascending
/// order of degree, so coefficients.back() == 1.
template <class T>
struct CharPoly {
  std::vector<T> coefficients;
  std::size_t degree() const { return coefficients.size() - 1; }
  friend bool operator==(const CharPoly&, const CharPoly&) = default;
};

/// Division-free (Samuelson–Berkowitz) so it runs over Z or Q alike.
CharPoly<Integer> char_poly(const IntMatrix& m);
CharPoly<Rational> char_poly(const RatMatrix& m);

/// Product of the nonzero eigenvalues, read off as |lowest nonzero
/// coefficient| of the characteristic polynomial. Only meaningful when m is
/// similar to a positive semidefinite matrix; the sign is not checked.
/// The empty product (zero or 0x0 matrix) is 1.
Rational pseudodeterminant(const IntMatrix& m);
Rational pseudodeterminant(const RatMatrix& m);

/// Returns the multiset of roots when the polynomial splits over the
/// nonnegative integers (the only case Laplacians can split in), else nullopt.
std::optional<std::vector<Integer>> nonnegative_integer_roots(const CharPoly<Integer>& p);

/// Polynomial Π (z − root) in ascending coefficient order.
CharPoly<Integer> poly_from_roots(std::span<const Integer> roots);

// ---------------------------------------------------------------------------
// Lattices

/// Column-style Hermite normal form with zero columns dropped: an integer
/// basis of the lattice spanned by the columns of a.
IntMatrix hermite_basis(const IntMatrix& a);

/// Saturated integer basis (as columns) of ker_Z(a).
IntMatrix kernel_basis(const IntMatrix& a);

/// Integer basis of Z^n ∩ span_Q(columns of a).
IntMatrix saturation(const IntMatrix& a);

/// det(AᵀA), the squared covolume of the lattice spanned by the columns of a.
/// Throws std::invalid_argument if the columns are dependent.
Integer covolume_squared(const IntMatrix& a);

/// Index of the sublattice generated by the columns of `generators` inside
/// the lattice with basis `basis`; nullopt means the quotient is infinite.
/// Throws std::invalid_argument if some generator is outside the lattice.
std::optional<Integer> lattice_quotient_order(const IntMatrix& basis, const IntMatrix& generators);

// ---------------------------------------------------------------------------

/// Grows a linearly independent set of integer vectors one at a time,
/// keeping a fraction-free echelon form. try_add is the workhorse of every
/// brute-force enumeration in the library.
class IncrementalBasis {
 public:
  explicit IncrementalBasis(std::size_t ambient_dim) : dim_(ambient_dim) {}

  std::size_t size() const { return rows_.size(); }
  std::size_t ambient_dim() const { return dim_; }

  /// Adds v if it is independent of the current vectors; returns whether it was added.
  bool try_add(std::vector<Integer> v);
  /// True if v lies in the current span; does not modify the basis.
  bool in_span(std::vector<Integer> v) const;
  void pop();

 private:
  bool reduce(std::vector<Integer>& v) const;

  std::size_t dim_;
  std::vector<std::vector<Integer>> rows_;
  std::vector<std::size_t> pivots_;
};

// ---------------------------------------------------------------------------
// Small helpers shared by the formula evaluators.

Integer binomial(long n, long k);
Rational rational_power(const Rational& base, long exponent);
std::string to_string(const Rational& q);
std::string to_string(const Integer& z);

}  // namespace celltree
