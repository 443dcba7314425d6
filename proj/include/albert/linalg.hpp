#pragma once

// Exact linear algebra over any field type exposing value_type, zero/one,
// add/sub/neg/mul/inv and is_zero (gf::Field and gf::Tower both do).
// Value-initialised elements are the zero of their field.

#include <algorithm>
#include <concepts>
#include <cstddef>
#include <span>
#include <string>
#include <vector>

#include "albert/error.hpp"

namespace albert::linalg {

template <class F>
concept FieldLike = requires(const F& f, const typename F::value_type& a) {
  { f.zero() } -> std::convertible_to<typename F::value_type>;
  { f.one() } -> std::convertible_to<typename F::value_type>;
  { f.add(a, a) } -> std::convertible_to<typename F::value_type>;
  { f.sub(a, a) } -> std::convertible_to<typename F::value_type>;
  { f.neg(a) } -> std::convertible_to<typename F::value_type>;
  { f.mul(a, a) } -> std::convertible_to<typename F::value_type>;
  { f.inv(a) } -> std::convertible_to<typename F::value_type>;
  { f.is_zero(a) } -> std::convertible_to<bool>;
};

template <class V>
class Matrix {
 public:
  Matrix() = default;
  Matrix(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  Matrix(std::size_t rows, std::size_t cols, std::vector<V> data) : rows_(rows), cols_(cols), data_(std::move(data)) {
    if (data_.size() != rows_ * cols_) throw UsageError("matrix entry count does not match its shape");
  }

  static Matrix from_rows(const std::vector<std::vector<V>>& rows) {
    const std::size_t c = rows.empty() ? 0 : rows.front().size();
    Matrix m(rows.size(), c);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != c) throw UsageError("ragged matrix rows");
      std::copy(rows[i].begin(), rows[i].end(), m.row(i).begin());
    }
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  bool empty() const { return data_.empty(); }

  V& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const V& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }

  std::span<V> row(std::size_t r) { return {data_.data() + r * cols_, cols_}; }
  std::span<const V> row(std::size_t r) const { return {data_.data() + r * cols_, cols_}; }

  std::vector<V> row_vector(std::size_t r) const { return {row(r).begin(), row(r).end()}; }
  std::vector<V> col_vector(std::size_t c) const {
    std::vector<V> out(rows_);
    for (std::size_t r = 0; r < rows_; ++r) out[r] = (*this)(r, c);
    return out;
  }

  const std::vector<V>& data() const { return data_; }

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<V> data_;
};

template <FieldLike F>
Matrix<typename F::value_type> identity(const F& field, std::size_t n) {
  Matrix<typename F::value_type> m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = field.one();
  return m;
}

template <class V>
Matrix<V> transpose(const Matrix<V>& m) {
  Matrix<V> t(m.cols(), m.rows());
  for (std::size_t r = 0; r < m.rows(); ++r)
    for (std::size_t c = 0; c < m.cols(); ++c) t(c, r) = m(r, c);
  return t;
}

template <FieldLike F>
Matrix<typename F::value_type> multiply(const F& field, const Matrix<typename F::value_type>& a,
                                        const Matrix<typename F::value_type>& b) {
  if (a.cols() != b.rows()) throw UsageError("matrix product shape mismatch");
  Matrix<typename F::value_type> out(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      if (field.is_zero(a(i, k))) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) out(i, j) = field.add(out(i, j), field.mul(a(i, k), b(k, j)));
    }
  return out;
}

template <FieldLike F>
std::vector<typename F::value_type> apply(const F& field, const Matrix<typename F::value_type>& a,
                                          std::span<const typename F::value_type> x) {
  if (a.cols() != x.size()) throw UsageError("matrix-vector shape mismatch");
  std::vector<typename F::value_type> out(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) out[i] = field.add(out[i], field.mul(a(i, j), x[j]));
  return out;
}

template <class V>
struct RrefResult {
  Matrix<V> matrix;
  std::size_t rank = 0;
  std::vector<std::size_t> pivots;
};

/// Reduced row echelon form: pivots are 1, strictly increasing, and the only
/// nonzero entry of their column.
template <FieldLike F>
RrefResult<typename F::value_type> rref(const F& field, Matrix<typename F::value_type> m) {
  using V = typename F::value_type;
  RrefResult<V> out;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t piv = r;
    while (piv < m.rows() && field.is_zero(m(piv, c))) ++piv;
    if (piv == m.rows()) continue;
    if (piv != r)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(piv, j), m(r, j));
    const V scale = field.inv(m(r, c));
    for (std::size_t j = c; j < m.cols(); ++j) m(r, j) = field.mul(m(r, j), scale);
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || field.is_zero(m(i, c))) continue;
      const V factor = m(i, c);
      for (std::size_t j = c; j < m.cols(); ++j) m(i, j) = field.sub(m(i, j), field.mul(factor, m(r, j)));
    }
    out.pivots.push_back(c);
    ++r;
  }
  out.rank = r;
  out.matrix = std::move(m);
  return out;
}

template <FieldLike F>
std::size_t rank(const F& field, const Matrix<typename F::value_type>& m) {
  return rref(field, m).rank;
}

template <FieldLike F>
typename F::value_type det(const F& field, Matrix<typename F::value_type> m) {
  using V = typename F::value_type;
  if (m.rows() != m.cols()) throw UsageError("determinant of a non-square matrix");
  const std::size_t n = m.rows();
  V d = field.one();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && field.is_zero(m(piv, c))) ++piv;
    if (piv == n) return field.zero();
    if (piv != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(piv, j), m(c, j));
      d = field.neg(d);
    }
    d = field.mul(d, m(c, c));
    const V inv = field.inv(m(c, c));
    for (std::size_t i = c + 1; i < n; ++i) {
      if (field.is_zero(m(i, c))) continue;
      const V factor = field.mul(m(i, c), inv);
      for (std::size_t j = c; j < n; ++j) m(i, j) = field.sub(m(i, j), field.mul(factor, m(c, j)));
    }
  }
  return d;
}

template <FieldLike F>
Matrix<typename F::value_type> inverse(const F& field, const Matrix<typename F::value_type>& m) {
  using V = typename F::value_type;
  if (m.rows() != m.cols()) throw UsageError("inverse of a non-square matrix");
  const std::size_t n = m.rows();
  Matrix<V> aug(n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = field.one();
  }
  auto r = rref(field, std::move(aug));
  if (r.rank < n || r.pivots[n - 1] != n - 1) throw DomainError("matrix is singular");
  Matrix<V> out(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) out(i, j) = r.matrix(i, n + j);
  return out;
}

/// A subspace of F^n held by its RREF basis, so structural equality is
/// subspace equality.
template <class V>
class Subspace {
 public:
  Subspace() = default;
  explicit Subspace(std::size_t ambient) : ambient_(ambient), basis_(0, ambient) {}

  /// Wraps rows that are already in RREF with no zero rows.
  static Subspace from_rref(std::size_t ambient, Matrix<V> basis) {
    Subspace s(ambient);
    s.basis_ = std::move(basis);
    return s;
  }

  std::size_t ambient() const { return ambient_; }
  std::size_t dim() const { return basis_.rows(); }
  const Matrix<V>& basis() const { return basis_; }

  friend bool operator==(const Subspace&, const Subspace&) = default;

 private:
  std::size_t ambient_ = 0;
  Matrix<V> basis_;
};

template <FieldLike F>
Subspace<typename F::value_type> row_space(const F& field, const Matrix<typename F::value_type>& m) {
  using V = typename F::value_type;
  auto r = rref(field, m);
  Matrix<V> basis(r.rank, m.cols());
  for (std::size_t i = 0; i < r.rank; ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) basis(i, j) = r.matrix(i, j);
  return Subspace<V>::from_rref(m.cols(), std::move(basis));
}

template <FieldLike F>
Subspace<typename F::value_type> span(const F& field, std::size_t ambient,
                                      const std::vector<std::vector<typename F::value_type>>& vectors) {
  using V = typename F::value_type;
  Matrix<V> m(vectors.size(), ambient);
  for (std::size_t i = 0; i < vectors.size(); ++i) {
    if (vectors[i].size() != ambient) throw UsageError("span: vector length differs from the ambient dimension");
    std::copy(vectors[i].begin(), vectors[i].end(), m.row(i).begin());
  }
  return row_space(field, m);
}

template <class V>
Matrix<V> stack(const Matrix<V>& a, const Matrix<V>& b) {
  if (a.cols() != b.cols()) throw UsageError("stack: column mismatch");
  Matrix<V> m(a.rows() + b.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i) std::copy(a.row(i).begin(), a.row(i).end(), m.row(i).begin());
  for (std::size_t i = 0; i < b.rows(); ++i) std::copy(b.row(i).begin(), b.row(i).end(), m.row(a.rows() + i).begin());
  return m;
}

template <FieldLike F>
Subspace<typename F::value_type> subspace_sum(const F& field, const Subspace<typename F::value_type>& a,
                                              const Subspace<typename F::value_type>& b) {
  if (a.ambient() != b.ambient()) throw UsageError("subspace sum: ambient dimension mismatch");
  return row_space(field, stack(a.basis(), b.basis()));
}

/// Null space {z : m z = 0}, dimension cols - rank.
template <FieldLike F>
Subspace<typename F::value_type> kernel(const F& field, const Matrix<typename F::value_type>& m) {
  using V = typename F::value_type;
  auto r = rref(field, m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : r.pivots) is_pivot[c] = true;
  std::vector<std::vector<V>> basis;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    std::vector<V> z(m.cols());
    z[free] = field.one();
    for (std::size_t i = 0; i < r.rank; ++i) z[r.pivots[i]] = field.neg(r.matrix(i, free));
    basis.push_back(std::move(z));
  }
  return span(field, m.cols(), basis);
}

template <FieldLike F>
bool contains(const F& field, const Subspace<typename F::value_type>& s, std::span<const typename F::value_type> v) {
  if (v.size() != s.ambient()) throw UsageError("contains: vector length differs from the ambient dimension");
  Matrix<typename F::value_type> one_row(1, v.size(), {v.begin(), v.end()});
  return rank(field, stack(s.basis(), one_row)) == s.dim();
}

/// Intersection via the left kernel of the stacked bases: (a, b) with
/// a B1 = b B2, mapped back through B1.
template <FieldLike F>
Subspace<typename F::value_type> intersect(const F& field, const Subspace<typename F::value_type>& a,
                                           const Subspace<typename F::value_type>& b) {
  using V = typename F::value_type;
  if (a.ambient() != b.ambient()) throw UsageError("intersect: ambient dimension mismatch");
  const std::size_t k1 = a.dim();
  const auto coeffs = kernel(field, transpose(stack(a.basis(), b.basis())));
  std::vector<std::vector<V>> vectors;
  for (std::size_t r = 0; r < coeffs.dim(); ++r) {
    std::vector<V> v(a.ambient());
    for (std::size_t i = 0; i < k1; ++i) {
      const V c = coeffs.basis()(r, i);
      if (field.is_zero(c)) continue;
      for (std::size_t j = 0; j < v.size(); ++j) v[j] = field.add(v[j], field.mul(c, a.basis()(i, j)));
    }
    vectors.push_back(std::move(v));
  }
  return span(field, a.ambient(), vectors);
}

/// Coefficients (c0, c1, c2, c3) of det(X I - m) = c3 X^3 + c2 X^2 + c1 X + c0
/// for a 3x3 matrix, from trace, principal 2-minors and determinant.
template <FieldLike F>
std::vector<typename F::value_type> char_poly3(const F& field, const Matrix<typename F::value_type>& m) {
  if (m.rows() != 3 || m.cols() != 3) throw UsageError("char_poly3 expects a 3x3 matrix");
  auto minor = [&](std::size_t i, std::size_t j) {
    return field.sub(field.mul(m(i, i), m(j, j)), field.mul(m(i, j), m(j, i)));
  };
  const auto tr = field.add(field.add(m(0, 0), m(1, 1)), m(2, 2));
  const auto m2 = field.add(field.add(minor(0, 1), minor(1, 2)), minor(0, 2));
  return {field.neg(det(field, m)), m2, field.neg(tr), field.one()};
}

}  // namespace albert::linalg
