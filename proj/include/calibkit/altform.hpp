#pragma once

#include <calibkit/matrix.hpp>
#include <calibkit/rational.hpp>

#include <bit>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <vector>

namespace calibkit {

/// Index subsets of {1..n} as bitmasks: index i (1-based) <-> bit (i-1).
using IndexMask = std::uint32_t;

inline int mask_degree(IndexMask m) { return std::popcount(m); }

inline std::vector<int> mask_indices(IndexMask m) {
  std::vector<int> out;
  for (int i = 0; m; ++i, m >>= 1)
    if (m & 1u) out.push_back(i + 1);
  return out;
}

inline IndexMask indices_mask(const std::vector<int>& idx) {
  IndexMask m = 0;
  for (int i : idx) m |= IndexMask(1) << (i - 1);
  return m;
}

/// Sign of concatenating the increasing tuples of a then b (0 if they meet):
/// (-1)^{#\{(i,j) : i in a, j in b, i > j\}}.
inline int merge_sign(IndexMask a, IndexMask b) {
  if (a & b) return 0;
  int inv = 0;
  for (IndexMask t = b; t;) {
    const int j = std::countr_zero(t);
    t &= t - 1;
    inv += std::popcount(a >> (j + 1));
  }
  return (inv & 1) ? -1 : 1;
}

template <typename T>
class VecT {
 public:
  VecT() = default;
  VecT(int dim) : comps_(dim) {}
  VecT(std::vector<T> comps) : comps_(std::move(comps)) {}
  static VecT basis(int dim, int i) {
    VecT v(dim);
    v.comps_[i - 1] = T(1);
    return v;
  }
  int dim() const { return static_cast<int>(comps_.size()); }
  T& operator[](int i) { return comps_[i]; }
  const T& operator[](int i) const { return comps_[i]; }
  const std::vector<T>& components() const { return comps_; }

 private:
  std::vector<T> comps_;
};

using Vec = VecT<Rational>;
using VecD = VecT<double>;

/// Constant-coefficient alternating p-form on R^n with sparse terms keyed by
/// strictly increasing index tuples. Zero coefficients are never stored.
template <typename T>
class FormT {
 public:
  FormT() : dim_(0), degree_(0) {}
  FormT(int dim, int degree) : dim_(dim), degree_(degree) {
    if (degree < 0 || degree > dim) throw std::invalid_argument("degree out of range");
  }

  /// The constant 1 as a 0-form.
  static FormT one(int dim) {
    FormT f(dim, 0);
    f.terms_[0] = T(1);
    return f;
  }

  /// c * dx^{i1} ∧ ... ∧ dx^{ip} for an arbitrary-order index list (signed sort;
  /// zero on repeats).
  static FormT monomial(int dim, std::vector<int> idx, T coef = T(1)) {
    int sign = 1;
    for (std::size_t i = 0; i + 1 < idx.size(); ++i)
      for (std::size_t j = 0; j + 1 < idx.size() - i; ++j)
        if (idx[j] > idx[j + 1]) {
          std::swap(idx[j], idx[j + 1]);
          sign = -sign;
        }
    for (std::size_t i = 0; i + 1 < idx.size(); ++i)
      if (idx[i] == idx[i + 1]) return FormT(dim, static_cast<int>(idx.size()));
    for (int i : idx)
      if (i < 1 || i > dim) throw std::invalid_argument("form index out of range");
    FormT f(dim, static_cast<int>(idx.size()));
    if (coef != T(0)) f.terms_[indices_mask(idx)] = coef * T(sign);
    return f;
  }

  static FormT volume(int dim) {
    FormT f(dim, dim);
    f.terms_[(IndexMask(1) << dim) - 1] = T(1);
    return f;
  }

  int dim() const { return dim_; }
  int degree() const { return degree_; }
  bool is_zero() const { return terms_.empty(); }
  const std::map<IndexMask, T>& terms() const { return terms_; }

  T coefficient(IndexMask m) const {
    auto it = terms_.find(m);
    return it == terms_.end() ? T(0) : it->second;
  }
  T coefficient(const std::vector<int>& idx) const { return coefficient(indices_mask(idx)); }

  void set_coefficient(IndexMask m, const T& c) {
    if (mask_degree(m) != degree_) throw std::invalid_argument("term degree mismatch");
    if (c == T(0))
      terms_.erase(m);
    else
      terms_[m] = c;
  }
  void add_term(IndexMask m, const T& c) {
    auto it = terms_.find(m);
    if (it == terms_.end()) {
      if (c != T(0)) terms_[m] = c;
    } else {
      it->second += c;
      if (it->second == T(0)) terms_.erase(it);
    }
  }

  bool operator==(const FormT& o) const {
    return dim_ == o.dim_ && degree_ == o.degree_ && terms_ == o.terms_;
  }
  bool operator!=(const FormT& o) const { return !(*this == o); }

  FormT operator+(const FormT& o) const {
    check_compatible(o);
    FormT r = *this;
    for (const auto& [m, c] : o.terms_) r.add_term(m, c);
    return r;
  }
  FormT operator-(const FormT& o) const {
    check_compatible(o);
    FormT r = *this;
    for (const auto& [m, c] : o.terms_) r.add_term(m, -c);
    return r;
  }
  FormT operator-() const {
    FormT r = *this;
    for (auto& [m, c] : r.terms_) c = -c;
    return r;
  }
  FormT operator*(const T& s) const {
    FormT r(dim_, degree_);
    if (s == T(0)) return r;
    for (const auto& [m, c] : terms_) r.terms_[m] = c * s;
    return r;
  }

 private:
  void check_compatible(const FormT& o) const {
    if (dim_ != o.dim_ || degree_ != o.degree_)
      throw std::invalid_argument("form dimension/degree mismatch");
  }

  int dim_;
  int degree_;
  std::map<IndexMask, T> terms_;
};

using AltForm = FormT<Rational>;
using AltFormD = FormT<double>;

template <typename T>
FormT<T> wedge(const FormT<T>& a, const FormT<T>& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("wedge dimension mismatch");
  const int deg = a.degree() + b.degree();
  if (deg > a.dim()) return FormT<T>(a.dim(), a.dim());  // zero form of top degree
  FormT<T> r(a.dim(), deg);
  for (const auto& [ma, ca] : a.terms())
    for (const auto& [mb, cb] : b.terms()) {
      const int s = merge_sign(ma, mb);
      if (s) r.add_term(ma | mb, ca * cb * T(s));
    }
  return r;
}

template <typename T>
FormT<T> interior(const VecT<T>& v, const FormT<T>& a) {
  if (v.dim() != a.dim()) throw std::invalid_argument("interior product dimension mismatch");
  if (a.degree() == 0) return FormT<T>(a.dim(), 0);
  FormT<T> r(a.dim(), a.degree() - 1);
  for (const auto& [m, c] : a.terms()) {
    int pos = 0;
    for (IndexMask t = m; t; ++pos) {
      const int bit = std::countr_zero(t);
      t &= t - 1;
      const T& comp = v[bit];
      if (comp != T(0)) r.add_term(m & ~(IndexMask(1) << bit), ((pos & 1) ? -comp : comp) * c);
    }
  }
  return r;
}

/// Fully antisymmetric multilinear evaluation a(v_1, ..., v_p).
template <typename T>
T eval(const FormT<T>& a, const std::vector<VecT<T>>& vs) {
  if (static_cast<int>(vs.size()) != a.degree())
    throw std::invalid_argument("evaluation arity mismatch");
  for (const auto& v : vs)
    if (v.dim() != a.dim()) throw std::invalid_argument("evaluation dimension mismatch");
  const int p = a.degree();
  T total(0);
  MatrixT<T> minor(p, p);
  for (const auto& [m, c] : a.terms()) {
    auto idx = mask_indices(m);
    for (int r = 0; r < p; ++r)
      for (int t = 0; t < p; ++t) minor(r, t) = vs[t][idx[r] - 1];
    total += c * determinant(minor);
  }
  return total;
}

/// Pullback (A*α)(v_1,...,v_p) = α(Av_1,...,Av_p); contravariant:
/// (AB)* = B* ∘ A*.
template <typename T>
FormT<T> pullback(const MatrixT<T>& a, const FormT<T>& alpha) {
  const int n = alpha.dim();
  if (a.rows() != static_cast<std::size_t>(n) || a.cols() != static_cast<std::size_t>(n))
    throw std::invalid_argument("pullback dimension mismatch");
  const int p = alpha.degree();
  FormT<T> r(n, p);
  if (p == 0) return alpha;
  // (A*α)_J = sum_I α_I det A[I rows, J cols]
  std::vector<IndexMask> target;
  for (IndexMask m = 0; m < (IndexMask(1) << n); ++m)
    if (mask_degree(m) == p) target.push_back(m);
  MatrixT<T> minor(p, p);
  for (IndexMask j : target) {
    auto jc = mask_indices(j);
    T coef(0);
    for (const auto& [mi, ci] : alpha.terms()) {
      auto ic = mask_indices(mi);
      for (int rr = 0; rr < p; ++rr)
        for (int cc = 0; cc < p; ++cc) minor(rr, cc) = a(ic[rr] - 1, jc[cc] - 1);
      coef += ci * determinant(minor);
    }
    r.add_term(j, coef);
  }
  return r;
}

/// Hodge star for the standard metric and the orientation dx^1 ∧ ... ∧ dx^n.
template <typename T>
FormT<T> hodge(const FormT<T>& a) {
  const int n = a.dim();
  const IndexMask full = (IndexMask(1) << n) - 1;
  FormT<T> r(n, n - a.degree());
  for (const auto& [m, c] : a.terms()) {
    const IndexMask comp = full & ~m;
    r.add_term(comp, c * T(merge_sign(m, comp)));
  }
  return r;
}

/// Pull back along the inclusion R^k -> R^n: keep terms supported in 1..k.
template <typename T>
FormT<T> restrict_to(const FormT<T>& a, int k) {
  if (k > a.dim()) throw std::invalid_argument("restriction target exceeds dimension");
  if (a.degree() > k) return FormT<T>(k, k);  // nothing survives
  FormT<T> r(k, a.degree());
  const IndexMask keep = (IndexMask(1) << k) - 1;
  for (const auto& [m, c] : a.terms())
    if ((m & ~keep) == 0) r.add_term(m, c);
  return r;
}

/// Reinterpret on a larger ambient space (same terms).
template <typename T>
FormT<T> extend_to(const FormT<T>& a, int n) {
  if (n < a.dim()) throw std::invalid_argument("extension target below dimension");
  FormT<T> r(n, a.degree());
  for (const auto& [m, c] : a.terms()) r.add_term(m, c);
  return r;
}

/// Infinitesimal gl(n)-action, the t-derivative at 0 of pullback by exp(tx):
/// (x·α)(v_1,...,v_p) = Σ_i α(v_1,...,x v_i,...,v_p). Acts as the derivation
/// with x·dx^i = Σ_j x(i,j) dx^j.
template <typename T>
FormT<T> inf_action(const MatrixT<T>& x, const FormT<T>& a) {
  const int n = a.dim();
  if (x.rows() != static_cast<std::size_t>(n) || x.cols() != static_cast<std::size_t>(n))
    throw std::invalid_argument("action dimension mismatch");
  FormT<T> r(n, a.degree());
  for (const auto& [m, c] : a.terms()) {
    auto idx = mask_indices(m);
    for (int t = 0; t < static_cast<int>(idx.size()); ++t) {
      const int i = idx[t];
      const IndexMask rest = m & ~(IndexMask(1) << (i - 1));
      for (int j = 1; j <= n; ++j) {
        const T& xc = x(i - 1, j - 1);
        if (xc == T(0)) continue;
        if (j == i) {
          r.add_term(m, c * xc);
        } else if (!(rest & (IndexMask(1) << (j - 1)))) {
          // sign of moving dx^j from slot t to its sorted slot: one transposition
          // per element of `rest` strictly between i and j
          const int lo = std::min(i, j), hi = std::max(i, j);
          IndexMask between = 0;
          for (int b = lo; b < hi - 1; ++b) between |= IndexMask(1) << b;  // bits lo+1..hi-1
          const int cnt = std::popcount(rest & between);
          r.add_term(rest | (IndexMask(1) << (j - 1)), ((cnt & 1) ? -c : c) * xc);
        }
      }
    }
  }
  return r;
}

template <typename T, typename U>
FormT<U> form_cast(const FormT<T>& a) {
  FormT<U> r(a.dim(), a.degree());
  for (const auto& [m, c] : a.terms()) r.add_term(m, static_cast<U>(c));
  return r;
}

inline AltFormD to_double(const AltForm& a) {
  AltFormD r(a.dim(), a.degree());
  for (const auto& [m, c] : a.terms()) r.add_term(m, to_double(c));
  return r;
}

inline double max_abs_coefficient(const AltFormD& a) {
  double r = 0.0;
  for (const auto& [m, c] : a.terms()) r = std::max(r, std::abs(c));
  return r;
}

}  // namespace calibkit
