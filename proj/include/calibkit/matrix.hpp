#pragma once

#include <calibkit/rational.hpp>

#include <cmath>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <stdexcept>
#include <type_traits>
#include <vector>

namespace calibkit {

/// Dense matrix over a field T (Rational for exact work, double for numerics).
/// Index convention throughout: entry (i, j) is row i, column j, and a matrix
/// acts on basis vectors by x.e_j = sum_i x(i,j) e_i.
template <typename T>
class MatrixT {
 public:
  MatrixT() = default;
  MatrixT(std::size_t rows, std::size_t cols) : rows_(rows), cols_(cols), data_(rows * cols) {}
  MatrixT(std::size_t rows, std::size_t cols, std::initializer_list<T> entries)
      : rows_(rows), cols_(cols), data_(entries) {
    if (data_.size() != rows * cols) throw std::invalid_argument("entry count mismatch");
  }

  static MatrixT identity(std::size_t n) {
    MatrixT m(n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = T(1);
    return m;
  }

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  T& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  const T& operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  bool operator==(const MatrixT& o) const {
    return rows_ == o.rows_ && cols_ == o.cols_ && data_ == o.data_;
  }
  bool operator!=(const MatrixT& o) const { return !(*this == o); }

  MatrixT operator+(const MatrixT& o) const {
    check_same_shape(o);
    MatrixT r = *this;
    for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] += o.data_[i];
    return r;
  }
  MatrixT operator-(const MatrixT& o) const {
    check_same_shape(o);
    MatrixT r = *this;
    for (std::size_t i = 0; i < data_.size(); ++i) r.data_[i] -= o.data_[i];
    return r;
  }
  MatrixT operator-() const {
    MatrixT r = *this;
    for (auto& x : r.data_) x = -x;
    return r;
  }
  MatrixT operator*(const T& c) const {
    MatrixT r = *this;
    for (auto& x : r.data_) x *= c;
    return r;
  }
  MatrixT operator*(const MatrixT& o) const {
    if (cols_ != o.rows_) throw std::invalid_argument("matrix product shape mismatch");
    MatrixT r(rows_, o.cols_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t k = 0; k < cols_; ++k) {
        const T& a = (*this)(i, k);
        if (a == T(0)) continue;
        for (std::size_t j = 0; j < o.cols_; ++j) r(i, j) += a * o(k, j);
      }
    return r;
  }

  MatrixT transpose() const {
    MatrixT r(cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) r(j, i) = (*this)(i, j);
    return r;
  }

  T trace() const {
    T t(0);
    for (std::size_t i = 0; i < rows_ && i < cols_; ++i) t += (*this)(i, i);
    return t;
  }

  bool is_square() const { return rows_ == cols_; }
  bool is_skew() const {
    if (!is_square()) return false;
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j)
        if ((*this)(i, j) != -(*this)(j, i)) return false;
    return true;
  }
  bool is_symmetric() const {
    if (!is_square()) return false;
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = i + 1; j < cols_; ++j)
        if ((*this)(i, j) != (*this)(j, i)) return false;
    return true;
  }

  /// Row-major flattening M_n -> R^{n^2}; the single embedding used for all
  /// matrix subspaces.
  std::vector<T> flatten() const { return data_; }

  static MatrixT from_flat(const std::vector<T>& v, std::size_t n) {
    if (v.size() != n * n) throw std::invalid_argument("flat vector size mismatch");
    MatrixT m(n, n);
    m.data_ = v;
    return m;
  }

 private:
  void check_same_shape(const MatrixT& o) const {
    if (rows_ != o.rows_ || cols_ != o.cols_) throw std::invalid_argument("shape mismatch");
  }

  std::size_t rows_ = 0, cols_ = 0;
  std::vector<T> data_;
};

using Mat = MatrixT<Rational>;
using MatD = MatrixT<double>;

template <typename T>
MatrixT<T> commutator(const MatrixT<T>& a, const MatrixT<T>& b) {
  return a * b - b * a;
}

namespace detail {
template <typename T>
bool pivot_viable(const T& x) {
  if constexpr (std::is_floating_point_v<T>)
    return std::abs(x) > 0.0;
  else
    return x != T(0);
}
template <typename T>
bool pivot_better(const T& cand, const T& best) {
  if constexpr (std::is_floating_point_v<T>)
    return std::abs(cand) > std::abs(best);
  else
    return best == T(0) && cand != T(0);
}
}  // namespace detail

/// Determinant by Gaussian elimination; exact over Rational, partial pivoting
/// over double.
template <typename T>
T determinant(MatrixT<T> m) {
  if (!m.is_square()) throw std::invalid_argument("determinant of non-square matrix");
  const std::size_t n = m.rows();
  T det(1);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t sel = c;
    for (std::size_t i = c + 1; i < n; ++i)
      if (detail::pivot_better(m(i, c), m(sel, c))) sel = i;
    if (!detail::pivot_viable(m(sel, c))) return T(0);
    if (sel != c) {
      for (std::size_t j = 0; j < n; ++j) std::swap(m(c, j), m(sel, j));
      det = -det;
    }
    det *= m(c, c);
    for (std::size_t i = c + 1; i < n; ++i) {
      if (m(i, c) == T(0)) continue;
      T f = m(i, c) / m(c, c);
      for (std::size_t j = c; j < n; ++j) m(i, j) -= f * m(c, j);
    }
  }
  return det;
}

/// Inverse by Gauss-Jordan; nullopt when singular.
template <typename T>
std::optional<MatrixT<T>> inverse(const MatrixT<T>& a) {
  if (!a.is_square()) throw std::invalid_argument("inverse of non-square matrix");
  const std::size_t n = a.rows();
  MatrixT<T> m = a;
  MatrixT<T> inv = MatrixT<T>::identity(n);
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t sel = c;
    for (std::size_t i = c + 1; i < n; ++i)
      if (detail::pivot_better(m(i, c), m(sel, c))) sel = i;
    if (!detail::pivot_viable(m(sel, c))) return std::nullopt;
    if (sel != c)
      for (std::size_t j = 0; j < n; ++j) {
        std::swap(m(c, j), m(sel, j));
        std::swap(inv(c, j), inv(sel, j));
      }
    T piv = m(c, c);
    for (std::size_t j = 0; j < n; ++j) {
      m(c, j) /= piv;
      inv(c, j) /= piv;
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == c || m(i, c) == T(0)) continue;
      T f = m(i, c);
      for (std::size_t j = 0; j < n; ++j) {
        m(i, j) -= f * m(c, j);
        inv(i, j) -= f * inv(c, j);
      }
    }
  }
  return inv;
}

inline MatD to_double(const Mat& m) {
  MatD r(m.rows(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r(i, j) = to_double(m(i, j));
  return r;
}

inline double max_abs(const MatD& m) {
  double r = 0.0;
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) r = std::max(r, std::abs(m(i, j)));
  return r;
}

}  // namespace calibkit
