#pragma once

#include <calibkit/stabilizer.hpp>
#include <calibkit/subspace.hpp>

#include <cstddef>
#include <stdexcept>
#include <vector>

namespace calibkit {

/// Polar fiber space h_k = {x in M_n : restriction to R^k of x·α vanishes for
/// every generator α}. Contains h_{k+1} and every matrix whose first k
/// columns vanish.
inline Subspace polar_h(const FormSystem& f, int k) {
  const int n = f.dim;
  if (k < 0 || k > n) throw std::invalid_argument("polar index out of range");
  auto rows = detail::action_rows(f, k);
  if (rows.empty()) return Subspace::full(n * n);
  Mat m(rows.size(), n * n);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (int j = 0; j < n * n; ++j) m(i, j) = rows[i][j];
  return rank_nullspace(m).second;
}

/// Dimensions of h_0..h_n and the codimension sequence c_k = n^2 - dim h_k.
struct PolarProfile {
  int n = 0;
  std::vector<std::size_t> h_dims;  // length n+1
  std::vector<std::size_t> c_seq;   // length n+1
  std::size_t g_dim = 0;            // dim of the stabilizer = dim h_n
};

inline PolarProfile polar_profile(const FormSystem& f) {
  PolarProfile p;
  p.n = f.dim;
  for (int k = 0; k <= f.dim; ++k) {
    std::size_t d = polar_h(f, k).dim();
    p.h_dims.push_back(d);
    p.c_seq.push_back(static_cast<std::size_t>(f.dim) * f.dim - d);
  }
  p.g_dim = p.h_dims.back();
  return p;
}

struct CartanTestResult {
  PolarProfile profile;
  std::size_t cartan_sum = 0;   // c_0 + ... + c_{n-1}
  std::size_t symbol_rank = 0;  // codim of the transverse integral-element variety
  bool regularly_presented = false;
};

/// Cartan's test as arithmetic: the presentation is regular iff the sum of the
/// polar codimensions c_0..c_{n-1} equals the symbol rank.
inline CartanTestResult cartan_test(const FormSystem& f) {
  CartanTestResult r;
  r.profile = polar_profile(f);
  for (int k = 0; k < f.dim; ++k) r.cartan_sum += r.profile.c_seq[k];
  r.symbol_rank = calibkit::symbol_rank(f);
  r.regularly_presented = (r.cartan_sum == r.symbol_rank);
  return r;
}

/// Polar-space dimensions on the quotient bundle S and the extension rank of
/// the canonical k-flag element: dim_S = n + n^2 - dim g, dim_H = dim_S - c_k,
/// r = dim_H - k - 1.
struct ExtensionRank {
  int k = 0;
  std::size_t dim_S = 0;
  std::size_t dim_H = 0;
  long r = 0;
};

inline ExtensionRank extension_rank_S(const FormSystem& f, int k,
                                      const PolarProfile* cached = nullptr) {
  const int n = f.dim;
  if (k < 0 || k >= n) throw std::invalid_argument("extension index out of range");
  PolarProfile local;
  if (!cached) {
    local = polar_profile(f);
    cached = &local;
  }
  ExtensionRank e;
  e.k = k;
  e.dim_S = static_cast<std::size_t>(n) + static_cast<std::size_t>(n) * n - cached->g_dim;
  e.dim_H = e.dim_S - cached->c_seq[k];
  e.r = static_cast<long>(e.dim_H) - k - 1;
  return e;
}

/// Transversality data for a candidate restraining subspace W against h_k:
/// zero meet, complementary dimensions, and invariance under the listed
/// symmetries (conjugation for group elements, bracket for algebra elements).
struct RestrainingReport {
  std::size_t w_dim = 0;
  std::size_t h_dim = 0;
  std::size_t meet_dim = 0;
  bool dims_complementary = false;
  bool conj_ok = true;
  bool bracket_ok = true;
  bool pass = false;
};

inline RestrainingReport restraining_check(const Subspace& w, const FormSystem& f, int k,
                                           const std::vector<Mat>& conj_sym,
                                           const std::vector<Mat>& bracket_sym = {}) {
  const std::size_t n2 = static_cast<std::size_t>(f.dim) * f.dim;
  if (w.ambient() != n2) throw std::invalid_argument("W must live in M_n");
  Subspace h = polar_h(f, k);
  RestrainingReport r;
  r.w_dim = w.dim();
  r.h_dim = h.dim();
  r.meet_dim = meet_join(w, h).first.dim();
  r.dims_complementary = (r.w_dim + r.h_dim == n2);
  for (const auto& g : conj_sym)
    if (!conj_invariant(w, g)) r.conj_ok = false;
  for (const auto& x : bracket_sym)
    if (!bracket_invariant(w, x)) r.bracket_ok = false;
  r.pass = (r.meet_dim == 0) && r.dims_complementary && r.conj_ok && r.bracket_ok;
  return r;
}

/// The su(2) subalgebra of g_2 fixing the associative form and each of
/// dx^5, dx^6, dx^7.
inline Subspace su2_in_g2() {
  FormSystem f(7, "su2-slice",
               {phi0(), AltForm::monomial(7, {5}), AltForm::monomial(7, {6}),
                AltForm::monomial(7, {7})});
  return stab_algebra(f);
}

struct G2Restrainers {
  Subspace w5, w15, w28;
  G2Restrainers() : w5(49), w15(49), w28(49) {}
};

/// Nested restraining subspaces W5 ⊂ W15 ⊂ W28 of M_7(R), built as the
/// trace-orthogonal complements of h_4, h_5, h_6. Conjugation by R7 and the
/// su(2) slice act orthogonally, so the complements inherit their invariance;
/// both properties are verified, not assumed.
inline G2Restrainers build_g2_restrainers(const FormSystem& g2sys) {
  if (g2sys.dim != 7) throw std::invalid_argument("expected the 7-dimensional system");
  G2Restrainers out;
  out.w5 = ortho_complement(polar_h(g2sys, 4));
  out.w15 = ortho_complement(polar_h(g2sys, 5));
  out.w28 = ortho_complement(polar_h(g2sys, 6));
  if (out.w5.dim() != 5 || out.w15.dim() != 15 || out.w28.dim() != 28)
    throw std::logic_error("restraining space dimensions are off");
  if (!out.w15.contains(out.w5) || !out.w28.contains(out.w15))
    throw std::logic_error("restraining spaces are not nested");
  const Mat r7 = matrix_R7();
  for (const Subspace* s : {&out.w5, &out.w15, &out.w28})
    if (!conj_invariant(*s, r7)) throw std::logic_error("restraining space not R7-invariant");
  for (const auto& x : su2_in_g2().basis_matrices())
    for (const Subspace* s : {&out.w5, &out.w15, &out.w28})
      if (!bracket_invariant(*s, x))
        throw std::logic_error("restraining space not su(2)-invariant");
  return out;
}

}  // namespace calibkit
