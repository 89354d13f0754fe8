#pragma once

#include <calibkit/altform.hpp>
#include <calibkit/matrix.hpp>
#include <calibkit/rational.hpp>

#include <array>
#include <cmath>
#include <stdexcept>
#include <type_traits>

namespace calibkit {

namespace detail {

template <typename T>
T scalar_sqrt(const T& x) {
  if constexpr (std::is_floating_point_v<T>) {
    return std::sqrt(x);
  } else {
    auto r = exact_sqrt(x);
    if (!r) throw std::invalid_argument("value has no exact rational square root");
    return *r;
  }
}

template <typename T>
T scalar_kth_root(const T& x, unsigned k) {
  if constexpr (std::is_floating_point_v<T>) {
    return std::pow(x, 1.0 / k);
  } else {
    auto r = exact_kth_root(x, k);
    if (!r) throw std::invalid_argument("value has no exact rational k-th root");
    return *r;
  }
}

template <typename T>
bool near_zero(const T& x, double tol) {
  if constexpr (std::is_floating_point_v<T>)
    return std::abs(x) <= tol;
  else
    return x == T(0);
}

template <typename T>
bool positive_definite(const MatrixT<T>& g) {
  // leading principal minors (exact over Rational)
  const std::size_t n = g.rows();
  for (std::size_t k = 1; k <= n; ++k) {
    MatrixT<T> lead(k, k);
    for (std::size_t i = 0; i < k; ++i)
      for (std::size_t j = 0; j < k; ++j) lead(i, j) = g(i, j);
    if (!(determinant(lead) > T(0))) return false;
  }
  return true;
}

}  // namespace detail

// ---------------------------------------------------------------------------
// Self-dual triples on R^4
// ---------------------------------------------------------------------------

/// Three 2-forms on R^4 with a reference volume form; the pointwise model of
/// a trivialized bundle of self-dual forms.
template <typename T>
struct SdTripleT {
  std::array<FormT<T>, 3> omegas;
  FormT<T> vol;  // reference 4-form, nonvanishing

  SdTripleT(FormT<T> o1, FormT<T> o2, FormT<T> o3, FormT<T> volume)
      : omegas{std::move(o1), std::move(o2), std::move(o3)}, vol(std::move(volume)) {
    for (const auto& o : omegas)
      if (o.dim() != 4 || o.degree() != 2)
        throw std::invalid_argument("triple entries must be 2-forms on R^4");
    if (vol.dim() != 4 || vol.degree() != 4)
      throw std::invalid_argument("reference volume must be a 4-form");
    if (vol.is_zero()) throw std::invalid_argument("reference volume vanishes");
  }
};

using SdTriple = SdTripleT<Rational>;
using SdTripleD = SdTripleT<double>;

/// The pairing Gram matrix a with Ω_i ∧ Ω_j = 2 a_{ij} Φ. Symmetric; the
/// triple is nondegenerate iff a is positive definite.
template <typename T>
MatrixT<T> sd_gram(const SdTripleT<T>& t) {
  const T volc = t.vol.coefficient(IndexMask(0xF));
  MatrixT<T> a(3, 3);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      FormT<T> w = wedge(t.omegas[i], t.omegas[j]);
      a(i, j) = w.coefficient(IndexMask(0xF)) / (T(2) * volc);
    }
  return a;
}

namespace detail {
/// Skew 4x4 coefficient matrix of a 2-form: B(r,s) = Ω(e_{r+1}, e_{s+1}).
template <typename T>
MatrixT<T> form_matrix_4(const FormT<T>& w) {
  MatrixT<T> b(4, 4);
  for (const auto& [m, c] : w.terms()) {
    auto idx = mask_indices(m);
    b(idx[0] - 1, idx[1] - 1) = c;
    b(idx[1] - 1, idx[0] - 1) = -c;
  }
  return b;
}
}  // namespace detail

/// An oriented orthonormal coframe (α_0, α_1, α_2, α_3), returned as the rows
/// of a 4x4 matrix, satisfying
///   Ω_1 = α0∧α1 + α2∧α3,  Ω_2 = α0∧α2 + α3∧α1,  Ω_3 = α0∧α3 + α1∧α2.
///
/// Route: use Ω_1 as an index-lowering map; K = B1^{-1}B2 is minus the third
/// complex structure and is metric-independent, the metric is G = -B3·K, and
/// the quaternionic frame (u, J1 u, J2 u, J3 u) of a unit vector u closes the
/// coframe. The identities are re-verified on the result before returning.
template <typename T>
MatrixT<T> standardize_sd_triple(const SdTripleT<T>& t, double tol = 1e-9) {
  MatrixT<T> gram = sd_gram(t);
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j)
      if (!detail::near_zero(gram(i, j) - (i == j ? T(1) : T(0)), tol))
        throw std::invalid_argument("degenerate triple: pairing Gram matrix is not the identity");

  const auto b1 = detail::form_matrix_4(t.omegas[0]);
  const auto b2 = detail::form_matrix_4(t.omegas[1]);
  const auto b3 = detail::form_matrix_4(t.omegas[2]);
  auto b1inv = inverse(b1);
  if (!b1inv) throw std::invalid_argument("degenerate triple: first form is singular");
  MatrixT<T> k = *b1inv * b2;
  MatrixT<T> g = -(b3 * k);
  if constexpr (std::is_floating_point_v<T>) {
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = i + 1; j < 4; ++j) {
        T avg = (g(i, j) + g(j, i)) / T(2);
        g(i, j) = g(j, i) = avg;
      }
  }
  if (!g.is_symmetric() || !detail::positive_definite(g))
    throw std::invalid_argument("triple is not compatibly oriented (recovered metric not SPD)");

  auto ginv = inverse(g);
  std::array<MatrixT<T>, 3> j = {-(*ginv * b1), -(*ginv * b2), -(*ginv * b3)};

  // unit vector and its quaternionic orbit
  const T norm = detail::scalar_sqrt(g(0, 0));
  MatrixT<T> u(4, 4);  // columns u_0..u_3
  u(0, 0) = T(1) / norm;
  for (int c = 1; c <= 3; ++c)
    for (int r = 0; r < 4; ++r) u(r, c) = j[c - 1](r, 0) * u(0, 0);

  MatrixT<T> coframe = (g * u).transpose();  // row r = α_r = g(u_r, ·)

  // verify the three identities against the input forms
  auto row_form = [&](int r) {
    FormT<T> f(4, 1);
    for (int c = 0; c < 4; ++c) f.add_term(IndexMask(1) << c, coframe(r, c));
    return f;
  };
  std::array<FormT<T>, 4> alpha = {row_form(0), row_form(1), row_form(2), row_form(3)};
  std::array<FormT<T>, 3> rebuilt = {
      wedge(alpha[0], alpha[1]) + wedge(alpha[2], alpha[3]),
      wedge(alpha[0], alpha[2]) + wedge(alpha[3], alpha[1]),
      wedge(alpha[0], alpha[3]) + wedge(alpha[1], alpha[2]),
  };
  for (int i = 0; i < 3; ++i) {
    FormT<T> diff = rebuilt[i] - t.omegas[i];
    for (const auto& [m, c] : diff.terms())
      if (!detail::near_zero(c, tol))
        throw std::logic_error("standardization failed to reproduce the triple");
  }
  return coframe;
}

namespace detail {
inline double to_double_value(double x) { return x; }
inline double to_double_value(const Rational& x) { return to_double(x); }
}  // namespace detail

/// Residual of the three coframe identities (for reporting).
template <typename T>
double sd_identity_residual(const SdTripleT<T>& t, const MatrixT<T>& coframe) {
  auto row_form = [&](int r) {
    FormT<T> f(4, 1);
    for (int c = 0; c < 4; ++c) f.add_term(IndexMask(1) << c, coframe(r, c));
    return f;
  };
  std::array<FormT<T>, 4> a = {row_form(0), row_form(1), row_form(2), row_form(3)};
  std::array<FormT<T>, 3> rebuilt = {
      wedge(a[0], a[1]) + wedge(a[2], a[3]),
      wedge(a[0], a[2]) + wedge(a[3], a[1]),
      wedge(a[0], a[3]) + wedge(a[1], a[2]),
  };
  double worst = 0.0;
  for (int i = 0; i < 3; ++i) {
    FormT<T> diff = rebuilt[i] - t.omegas[i];
    for (const auto& [m, c] : diff.terms())
      worst = std::max(worst, std::abs(detail::to_double_value(c)));
  }
  return worst;
}

// ---------------------------------------------------------------------------
// Product structure on R^4 ⊕ R^3
// ---------------------------------------------------------------------------

template <typename T>
struct G2Structure {
  FormT<T> phibar;       // 3-form on R^7
  FormT<T> star_phibar;  // 4-form on R^7
  MatrixT<T> frame_map;  // u with pullback(u, phi_0) = phibar
};

/// The product 3-form dy^123 - dy^1∧Ω_1 - dy^2∧Ω_2 - dy^3∧Ω_3 on R^7 with
/// base coordinates 1..4 and fiber coordinates y = (5, 6, 7), together with
/// its dual 4-form Φ - dy^23∧Ω_1 - dy^31∧Ω_2 - dy^12∧Ω_3 and a GL(7) witness
/// pulling the flat model back to it.
template <typename T>
G2Structure<T> build_g2_structure(const SdTripleT<T>& t, double tol = 1e-9) {
  MatrixT<T> coframe = standardize_sd_triple(t, tol);  // also checks the Gram precondition

  auto dy = [&](int i) { return FormT<T>::monomial(7, {4 + i}); };
  std::array<FormT<T>, 3> w;
  for (int i = 0; i < 3; ++i) w[i] = extend_to(t.omegas[i], 7);

  G2Structure<T> out{FormT<T>(7, 3), FormT<T>(7, 4), MatrixT<T>(7, 7)};
  out.phibar = wedge(wedge(dy(1), dy(2)), dy(3)) - wedge(dy(1), w[0]) - wedge(dy(2), w[1]) -
               wedge(dy(3), w[2]);
  out.star_phibar = extend_to(t.vol, 7) - wedge(wedge(dy(2), dy(3)), w[0]) -
                    wedge(wedge(dy(3), dy(1)), w[1]) - wedge(wedge(dy(1), dy(2)), w[2]);

  // witness: rows 1..4 are the recovered coframe, rows 5..7 the fiber axes
  for (int r = 0; r < 4; ++r)
    for (int c = 0; c < 4; ++c) out.frame_map(r, c) = coframe(r, c);
  for (int r = 4; r < 7; ++r) out.frame_map(r, r) = T(1);
  return out;
}

// ---------------------------------------------------------------------------
// Torus metric correspondence
// ---------------------------------------------------------------------------

template <typename T>
struct TorusRoundtrip {
  MatrixT<T> h;       // det(g)^{1/2} g^{-1}
  MatrixT<T> g_back;  // det(h)^{1/(m-2)} h^{-1}
  bool divergence_ok = true;  // constant coefficients solve dh^{ij}/dx^j = 0
};

/// The correspondence g ↦ h = Δ^{1/2} g^{-1} and its inverse
/// h ↦ det(h)^{1/(m-2)} h^{-1}; a round trip returns g (exactly over the
/// rationals when the determinant roots exist).
template <typename T>
TorusRoundtrip<T> torus_metric_roundtrip(const MatrixT<T>& g) {
  const std::size_t m = g.rows();
  if (!g.is_square() || g.cols() != m) throw std::invalid_argument("metric must be square");
  if (m < 3) throw std::invalid_argument("the exponent 1/(m-2) needs m >= 3");
  if (!g.is_symmetric()) throw std::invalid_argument("metric must be symmetric");
  if (!detail::positive_definite(g)) throw std::invalid_argument("metric must be positive definite");

  TorusRoundtrip<T> out{MatrixT<T>(m, m), MatrixT<T>(m, m), true};
  const T det_g = determinant(g);
  const T sqrt_det = detail::scalar_sqrt(det_g);
  out.h = *inverse(g) * sqrt_det;
  const T det_h = determinant(out.h);
  const T scale = detail::scalar_kth_root(det_h, static_cast<unsigned>(m - 2));
  out.g_back = *inverse(out.h) * scale;
  return out;
}

}  // namespace calibkit
