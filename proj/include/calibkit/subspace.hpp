#pragma once

#include <calibkit/matrix.hpp>
#include <calibkit/rational.hpp>

#include <cstddef>
#include <stdexcept>
#include <utility>
#include <vector>

namespace calibkit {

using RationalRow = std::vector<Rational>;

namespace detail {

/// Fraction-free (Bareiss) forward elimination on integer-scaled rows, then a
/// rational back-substitution pass to unit-pivot reduced echelon form.
/// No pivot tolerance exists anywhere: zero means zero.
struct Echelon {
  std::size_t rank = 0;
  std::vector<std::size_t> pivots;
  std::vector<RationalRow> rows;  // rank rows, unit pivots, fully reduced
};

inline Echelon reduced_echelon(std::vector<RationalRow> input, std::size_t cols) {
  const std::size_t nrows = input.size();
  std::vector<std::vector<BigInt>> a(nrows, std::vector<BigInt>(cols));
  for (std::size_t i = 0; i < nrows; ++i) {
    if (input[i].size() != cols) throw std::invalid_argument("row length mismatch");
    BigInt scale = 1;
    for (const auto& x : input[i]) scale = boost::multiprecision::lcm(scale, denominator(x));
    for (std::size_t j = 0; j < cols; ++j)
      a[i][j] = numerator(input[i][j]) * (scale / denominator(input[i][j]));
  }

  Echelon e;
  BigInt prev = 1;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols && r < nrows; ++c) {
    std::size_t sel = nrows;
    for (std::size_t i = r; i < nrows; ++i)
      if (a[i][c] != 0) {
        sel = i;
        break;
      }
    if (sel == nrows) continue;
    std::swap(a[r], a[sel]);
    for (std::size_t i = r + 1; i < nrows; ++i) {
      for (std::size_t j = c + 1; j < cols; ++j) {
        BigInt num = a[r][c] * a[i][j] - a[i][c] * a[r][j];
        BigInt q, rem;
        boost::multiprecision::divide_qr(num, prev, q, rem);
        if (rem != 0) throw std::logic_error("fraction-free elimination lost exactness");
        a[i][j] = q;
      }
      a[i][c] = 0;
    }
    prev = a[r][c];
    e.pivots.push_back(c);
    ++r;
  }
  e.rank = r;

  e.rows.assign(r, RationalRow(cols));
  for (std::size_t i = 0; i < r; ++i)
    for (std::size_t j = 0; j < cols; ++j) e.rows[i][j] = Rational(a[i][j]);
  for (std::size_t ii = r; ii-- > 0;) {
    const std::size_t pc = e.pivots[ii];
    Rational piv = e.rows[ii][pc];
    for (std::size_t j = pc; j < cols; ++j) e.rows[ii][j] /= piv;
    for (std::size_t i2 = 0; i2 < ii; ++i2) {
      Rational f = e.rows[i2][pc];
      if (f == 0) continue;
      for (std::size_t j = pc; j < cols; ++j) e.rows[i2][j] -= f * e.rows[ii][j];
    }
  }
  return e;
}

inline std::vector<RationalRow> nullspace_rows(const Echelon& e, std::size_t cols) {
  std::vector<bool> is_pivot(cols, false);
  for (auto p : e.pivots) is_pivot[p] = true;
  std::vector<RationalRow> out;
  for (std::size_t f = 0; f < cols; ++f) {
    if (is_pivot[f]) continue;
    RationalRow v(cols, Rational(0));
    v[f] = 1;
    for (std::size_t i = 0; i < e.rank; ++i) v[e.pivots[i]] = -e.rows[i][f];
    out.push_back(std::move(v));
  }
  return out;
}

}  // namespace detail

/// Exact rank of the rows of a rational matrix.
inline std::size_t rational_rank(const std::vector<RationalRow>& rows, std::size_t cols) {
  return detail::reduced_echelon(rows, cols).rank;
}

/// A linear subspace of R^d held in its unique reduced-echelon canonical basis.
/// Equality of subspaces is equality of bases.
class Subspace {
 public:
  explicit Subspace(std::size_t ambient_dim) : ambient_(ambient_dim) {}

  static Subspace zero(std::size_t d) { return Subspace(d); }
  static Subspace full(std::size_t d) {
    Subspace s(d);
    s.basis_.assign(d, RationalRow(d, Rational(0)));
    for (std::size_t i = 0; i < d; ++i) s.basis_[i][i] = 1;
    return s;
  }
  static Subspace span(std::size_t d, const std::vector<RationalRow>& vectors) {
    Subspace s(d);
    s.basis_ = detail::reduced_echelon(vectors, d).rows;
    return s;
  }
  static Subspace span_matrices(const std::vector<Mat>& mats) {
    if (mats.empty()) throw std::invalid_argument("empty matrix span");
    const std::size_t n = mats.front().rows();
    std::vector<RationalRow> v;
    for (const auto& m : mats) {
      if (m.rows() != n || m.cols() != n) throw std::invalid_argument("matrix size mismatch");
      v.push_back(m.flatten());
    }
    return span(n * n, v);
  }

  std::size_t ambient() const { return ambient_; }
  std::size_t dim() const { return basis_.size(); }
  const std::vector<RationalRow>& basis() const { return basis_; }

  bool operator==(const Subspace& o) const {
    return ambient_ == o.ambient_ && basis_ == o.basis_;
  }
  bool operator!=(const Subspace& o) const { return !(*this == o); }

  bool contains(const RationalRow& v) const {
    if (v.size() != ambient_) throw std::invalid_argument("ambient dimension mismatch");
    RationalRow w = v;
    for (const auto& b : basis_) {
      std::size_t p = pivot_col(b);
      if (w[p] != 0) {
        Rational f = w[p];
        for (std::size_t j = p; j < ambient_; ++j) w[j] -= f * b[j];
      }
    }
    for (const auto& x : w)
      if (x != 0) return false;
    return true;
  }
  bool contains(const Subspace& o) const {
    if (o.ambient_ != ambient_) throw std::invalid_argument("ambient dimension mismatch");
    for (const auto& b : o.basis_)
      if (!contains(b)) return false;
    return true;
  }

  /// Basis as n x n matrices (ambient must be a perfect square n^2).
  std::vector<Mat> basis_matrices() const {
    std::size_t n = 0;
    while (n * n < ambient_) ++n;
    if (n * n != ambient_) throw std::logic_error("ambient dimension is not a square");
    std::vector<Mat> out;
    out.reserve(basis_.size());
    for (const auto& b : basis_) out.push_back(Mat::from_flat(b, n));
    return out;
  }

 private:
  static std::size_t pivot_col(const RationalRow& r) {
    for (std::size_t j = 0; j < r.size(); ++j)
      if (r[j] != 0) return j;
    throw std::logic_error("zero basis row");
  }

  std::size_t ambient_;
  std::vector<RationalRow> basis_;
};

/// Rank and (canonicalized) nullspace of A acting on column vectors.
inline std::pair<std::size_t, Subspace> rank_nullspace(const Mat& a) {
  std::vector<RationalRow> rows;
  rows.reserve(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    RationalRow r(a.cols());
    for (std::size_t j = 0; j < a.cols(); ++j) r[j] = a(i, j);
    rows.push_back(std::move(r));
  }
  auto e = detail::reduced_echelon(rows, a.cols());
  auto null = detail::nullspace_rows(e, a.cols());
  return {e.rank, Subspace::span(a.cols(), null)};
}

/// Intersection and sum. dim(meet) + dim(join) = dim(S) + dim(T).
inline std::pair<Subspace, Subspace> meet_join(const Subspace& s, const Subspace& t) {
  if (s.ambient() != t.ambient()) throw std::invalid_argument("ambient dimension mismatch");
  const std::size_t d = s.ambient();
  std::vector<RationalRow> joined = s.basis();
  for (const auto& r : t.basis()) joined.push_back(r);
  Subspace join = Subspace::span(d, joined);

  // x in meet iff x = sum a_i s_i = sum b_j t_j; solve for (a, b) via the
  // nullspace of the d x (k+l) matrix whose columns are s_i and -t_j.
  const std::size_t k = s.dim(), l = t.dim();
  Mat m(d, k + l);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t row = 0; row < d; ++row) m(row, i) = s.basis()[i][row];
  for (std::size_t j = 0; j < l; ++j)
    for (std::size_t row = 0; row < d; ++row) m(row, k + j) = -t.basis()[j][row];
  auto [rank, coeffs] = rank_nullspace(m);
  (void)rank;
  std::vector<RationalRow> meet_vecs;
  for (const auto& ab : coeffs.basis()) {
    RationalRow v(d, Rational(0));
    for (std::size_t i = 0; i < k; ++i)
      if (ab[i] != 0)
        for (std::size_t row = 0; row < d; ++row) v[row] += ab[i] * s.basis()[i][row];
    meet_vecs.push_back(std::move(v));
  }
  return {Subspace::span(d, meet_vecs), join};
}

/// Whether g S g^{-1} = S for a subspace S of M_n (ambient n^2). Throws on
/// singular g.
inline bool conj_invariant(const Subspace& s, const Mat& g) {
  auto gi = inverse(g);
  if (!gi) throw std::invalid_argument("conjugating matrix is singular");
  for (const auto& m : s.basis_matrices())
    if (!s.contains((g * m * *gi).flatten())) return false;
  return true;
}

/// Infinitesimal version: [x, S] ⊆ S.
inline bool bracket_invariant(const Subspace& s, const Mat& x) {
  for (const auto& m : s.basis_matrices())
    if (!s.contains(commutator(x, m).flatten())) return false;
  return true;
}

/// Complement with respect to the trace pairing <x,y> = tr(x^T y), which is
/// the dot product in the row-major flattening; hence also the general
/// dot-product complement on R^d.
inline Subspace ortho_complement(const Subspace& s) {
  const std::size_t d = s.ambient();
  if (s.dim() == 0) return Subspace::full(d);
  Mat m(s.dim(), d);
  for (std::size_t i = 0; i < s.dim(); ++i)
    for (std::size_t j = 0; j < d; ++j) m(i, j) = s.basis()[i][j];
  return rank_nullspace(m).second;
}

}  // namespace calibkit
