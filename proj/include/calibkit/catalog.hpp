#pragma once

#include <calibkit/altform.hpp>
#include <calibkit/matrix.hpp>
#include <calibkit/subspace.hpp>

#include <array>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace calibkit {

// ---------------------------------------------------------------------------
// Forms
// ---------------------------------------------------------------------------

/// Kaehler form for the split pairing (i, m+i): Σ dx^i ∧ dx^{m+i} on R^{2m}.
inline AltForm omega0(int m) {
  AltForm f(2 * m, 2);
  for (int i = 1; i <= m; ++i) f = f + AltForm::monomial(2 * m, {i, m + i});
  return f;
}

namespace detail {
/// Real and imaginary part of ∧_k (dx^{a_k} + i dx^{b_k}).
inline std::pair<AltForm, AltForm> complex_volume(int n,
                                                  const std::vector<std::pair<int, int>>& pairs) {
  AltForm re = AltForm::one(n);
  AltForm im(n, 0);
  for (auto [a, b] : pairs) {
    AltForm da = AltForm::monomial(n, {a});
    AltForm db = AltForm::monomial(n, {b});
    AltForm nre = wedge(re, da) - wedge(im, db);
    AltForm nim = wedge(re, db) + wedge(im, da);
    re = std::move(nre);
    im = std::move(nim);
  }
  return {re, im};
}
}  // namespace detail

/// (Re, Im) of Υ = ∧_i (dx^i + i dx^{m+i}) on R^{2m}.
inline std::pair<AltForm, AltForm> upsilon0(int m) {
  std::vector<std::pair<int, int>> p;
  for (int i = 1; i <= m; ++i) p.emplace_back(i, m + i);
  return detail::complex_volume(2 * m, p);
}

/// Kaehler form for the interleaved pairing (2i-1, 2i).
inline AltForm omega_star(int m) {
  AltForm f(2 * m, 2);
  for (int i = 1; i <= m; ++i) f = f + AltForm::monomial(2 * m, {2 * i - 1, 2 * i});
  return f;
}

/// (Re, Im) of ∧_i (dx^{2i-1} + i dx^{2i}).
inline std::pair<AltForm, AltForm> upsilon_star(int m) {
  std::vector<std::pair<int, int>> p;
  for (int i = 1; i <= m; ++i) p.emplace_back(2 * i - 1, 2 * i);
  return detail::complex_volume(2 * m, p);
}

/// The self-dual pair basis of Λ²₊(R^4): omega_pair(1) = dx12+dx34,
/// omega_pair(2) = dx13+dx42, omega_pair(3) = dx14+dx23.
inline AltForm omega_pair(int i, int dim = 4) {
  switch (i) {
    case 1:
      return AltForm::monomial(dim, {1, 2}) + AltForm::monomial(dim, {3, 4});
    case 2:
      return AltForm::monomial(dim, {1, 3}) + AltForm::monomial(dim, {4, 2});
    case 3:
      return AltForm::monomial(dim, {1, 4}) + AltForm::monomial(dim, {2, 3});
    default:
      throw std::invalid_argument("omega_pair index must be 1, 2 or 3");
  }
}

/// The associative 3-form on R^7:
/// dx567 - dx5∧(dx12+dx34) - dx6∧(dx13+dx42) - dx7∧(dx14+dx23).
inline AltForm phi0() {
  AltForm f = AltForm::monomial(7, {5, 6, 7});
  f = f - wedge(AltForm::monomial(7, {5}), omega_pair(1, 7));
  f = f - wedge(AltForm::monomial(7, {6}), omega_pair(2, 7));
  f = f - wedge(AltForm::monomial(7, {7}), omega_pair(3, 7));
  return f;
}

/// The coassociative 4-form:
/// dx1234 - dx67∧(dx12+dx34) - dx75∧(dx13+dx42) - dx56∧(dx14+dx23).
inline AltForm star_phi0() {
  AltForm f = AltForm::monomial(7, {1, 2, 3, 4});
  f = f - wedge(AltForm::monomial(7, {6, 7}), omega_pair(1, 7));
  f = f - wedge(AltForm::monomial(7, {7, 5}), omega_pair(2, 7));
  f = f - wedge(AltForm::monomial(7, {5, 6}), omega_pair(3, 7));
  return f;
}

/// Wirtinger calibration ω^p / p! on R^{2m}.
inline AltForm wirtinger(int m, int p) {
  if (p < 0 || p > m) throw std::invalid_argument("wirtinger power out of range");
  AltForm w = omega0(m);
  AltForm f = AltForm::one(2 * m);
  Rational fact(1);
  for (int k = 1; k <= p; ++k) {
    f = wedge(f, w);
    fact *= k;
  }
  return f * (Rational(1) / fact);
}

/// Fundamental 4-form of Sp(2)Sp(1) on R^8 = H^2: ω_I∧ω_I + ω_J∧ω_J + ω_K∧ω_K
/// for the Kaehler forms of right quaternion multiplication by i, j, k.
inline AltForm kraines() {
  // 4x4 matrices of right multiplication on (1, i, j, k) coordinates
  const std::array<std::array<std::array<int, 4>, 4>, 3> rmul = {{
      {{{0, -1, 0, 0}, {1, 0, 0, 0}, {0, 0, 0, 1}, {0, 0, -1, 0}}},   // by i
      {{{0, 0, -1, 0}, {0, 0, 0, -1}, {1, 0, 0, 0}, {0, 1, 0, 0}}},   // by j
      {{{0, 0, 0, -1}, {0, 0, 1, 0}, {0, -1, 0, 0}, {1, 0, 0, 0}}},   // by k
  }};
  AltForm total(8, 4);
  for (const auto& J : rmul) {
    AltForm w(8, 2);  // ω(e_r, e_s) = <J e_r, e_s> = J_{sr}, per quaternion block
    for (int blk = 0; blk < 8; blk += 4)
      for (int r = 0; r < 4; ++r)
        for (int s = r + 1; s < 4; ++s)
          if (J[s][r] != 0)
            w = w + AltForm::monomial(8, {blk + r + 1, blk + s + 1}, Rational(J[s][r]));
    total = total + wedge(w, w);
  }
  return total;
}

// ---------------------------------------------------------------------------
// Matrices
// ---------------------------------------------------------------------------

/// J(m) = [[0, I_m], [-I_m, 0]].
inline Mat matrix_J(int m) {
  Mat j(2 * m, 2 * m);
  for (int i = 0; i < m; ++i) {
    j(i, m + i) = 1;
    j(m + i, i) = -1;
  }
  return j;
}

/// Block-diagonal with m copies of J(1).
inline Mat matrix_Jstar(int m) {
  Mat j(2 * m, 2 * m);
  for (int i = 0; i < m; ++i) {
    j(2 * i, 2 * i + 1) = 1;
    j(2 * i + 1, 2 * i) = -1;
  }
  return j;
}

inline Mat matrix_R6() {
  Mat r = Mat::identity(6);
  for (int i = 3; i < 6; ++i) r(i, i) = -1;
  return r;
}

inline Mat matrix_R7() {
  Mat r = Mat::identity(7);
  for (int i = 4; i < 7; ++i) r(i, i) = -1;
  return r;
}

/// Permutation taking split coordinates (i, m+i) to interleaved (2i-1, 2i):
/// P e_i = e_{2i-1}, P e_{m+i} = e_{2i}. Conjugates the two presentations.
inline Mat matrix_pair_permutation(int m) {
  Mat p(2 * m, 2 * m);
  for (int i = 1; i <= m; ++i) {
    p(2 * i - 2, i - 1) = 1;      // P e_i = e_{2i-1}
    p(2 * i - 1, m + i - 1) = 1;  // P e_{m+i} = e_{2i}
  }
  return p;
}

// ---------------------------------------------------------------------------
// Subspaces of M_n(R)
// ---------------------------------------------------------------------------

namespace detail {
struct EntryPattern {
  int row, col, coef;  // 1-based
};
inline Subspace subspace_from_patterns(int n, const std::vector<std::vector<EntryPattern>>& gens) {
  std::vector<Mat> mats;
  for (const auto& g : gens) {
    Mat m(n, n);
    for (const auto& e : g) m(e.row - 1, e.col - 1) += Rational(e.coef);
    mats.push_back(std::move(m));
  }
  return Subspace::span_matrices(mats);
}

inline std::vector<std::vector<EntryPattern>> w5_patterns() {
  return {
      {{5, 3, 1}, {6, 2, -1}},
      {{4, 3, -1}, {6, 1, 1}},
      {{4, 2, 1}, {5, 1, -1}},
      {{4, 1, 1}, {5, 2, 1}, {6, 3, 1}},
      {{1, 1, 1}, {2, 2, 1}, {3, 3, 1}},
  };
}
inline std::vector<std::vector<EntryPattern>> w14_patterns() {
  auto p = w5_patterns();
  p.push_back({{2, 4, 1}, {5, 1, 1}});
  p.push_back({{3, 4, 1}, {6, 1, 1}});
  p.push_back({{1, 4, 1}, {5, 2, -1}, {6, 3, -1}});
  p.push_back({{2, 2, 1}, {3, 3, 1}, {4, 4, 1}});
  p.push_back({{1, 1, 1}, {4, 4, 1}});
  p.push_back({{1, 2, 1}, {5, 4, 1}});
  p.push_back({{1, 3, 1}, {6, 4, 1}});
  p.push_back({{3, 1, -1}, {6, 4, 1}});
  p.push_back({{2, 1, -1}, {5, 4, 1}});
  return p;
}
inline std::vector<std::vector<EntryPattern>> w22_patterns() {
  auto p = w14_patterns();
  p.push_back({{1, 5, 1}, {2, 4, -1}});
  p.push_back({{2, 1, 1}, {4, 5, 1}});
  p.push_back({{2, 2, 1}, {5, 5, 1}});
  p.push_back({{2, 3, 1}, {6, 5, 1}});
  p.push_back({{2, 5, 1}, {4, 1, -1}, {6, 3, -1}});
  p.push_back({{3, 5, 1}, {6, 2, 1}});
  p.push_back({{3, 2, -1}, {6, 5, 1}});
  p.push_back({{3, 3, 1}, {4, 4, 1}, {5, 5, 1}});
  return p;
}
}  // namespace detail

/// The 5/14/22-dimensional restraining subspaces of M_6(R), spanned by the
/// coefficient matrices of their parameterized displays.
inline Subspace space_W5() { return detail::subspace_from_patterns(6, detail::w5_patterns()); }
inline Subspace space_W14() { return detail::subspace_from_patterns(6, detail::w14_patterns()); }
inline Subspace space_W22() { return detail::subspace_from_patterns(6, detail::w22_patterns()); }

/// su(m) in the split presentation: blocks [[a, b], [-b, a]] with a skew and
/// b traceless symmetric.
inline Subspace space_su(int m) {
  const int n = 2 * m;
  std::vector<Mat> gens;
  for (int r = 0; r < m; ++r)
    for (int s = r + 1; s < m; ++s) {
      Mat x(n, n);  // a = E_rs - E_sr in both diagonal blocks
      x(r, s) = 1;
      x(s, r) = -1;
      x(m + r, m + s) = 1;
      x(m + s, m + r) = -1;
      gens.push_back(std::move(x));
      Mat y(n, n);  // b = E_rs + E_sr off-diagonal blocks
      y(r, m + s) = 1;
      y(s, m + r) = 1;
      y(m + r, s) = -1;
      y(m + s, r) = -1;
      gens.push_back(std::move(y));
    }
  for (int r = 0; r + 1 < m; ++r) {
    Mat y(n, n);  // b = E_rr - E_{r+1,r+1}
    y(r, m + r) = 1;
    y(r + 1, m + r + 1) = -1;
    y(m + r, r) = -1;
    y(m + r + 1, r + 1) = 1;
    gens.push_back(std::move(y));
  }
  return Subspace::span_matrices(gens);
}

/// *su(m): skew matrices commuting with Jstar(m) with tr(Jstar x) = 0,
/// computed as the solution space of those linear conditions.
inline Subspace space_su_star(int m) {
  const int n = 2 * m;
  const Mat js = matrix_Jstar(m);
  std::vector<RationalRow> rows;
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {  // x + x^T = 0
      RationalRow r(n * n, Rational(0));
      r[i * n + j] += 1;
      r[j * n + i] += 1;
      rows.push_back(std::move(r));
    }
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {  // (x Js - Js x)_{ij} = 0
      RationalRow r(n * n, Rational(0));
      for (int k = 0; k < n; ++k) {
        r[i * n + k] += js(k, j);
        r[k * n + j] -= js(i, k);
      }
      rows.push_back(std::move(r));
    }
  RationalRow tr(n * n, Rational(0));  // tr(Js x) = 0
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < n; ++k) tr[k * n + i] += js(i, k);
  rows.push_back(std::move(tr));

  Mat system(rows.size(), n * n);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (int j = 0; j < n * n; ++j) system(i, j) = rows[i][j];
  return rank_nullspace(system).second;
}

// ---------------------------------------------------------------------------
// String-keyed access (the `dump` interface)
// ---------------------------------------------------------------------------

struct CatalogKey {
  std::string name;
  std::vector<int> params;

  /// Parses "phi0", "omega0(3)", "wirtinger(3,2)", ...
  static CatalogKey parse(const std::string& text) {
    CatalogKey k;
    auto open = text.find('(');
    if (open == std::string::npos) {
      k.name = text;
      return k;
    }
    if (text.back() != ')') throw std::invalid_argument("malformed catalog key: " + text);
    k.name = text.substr(0, open);
    std::string inner = text.substr(open + 1, text.size() - open - 2);
    std::size_t pos = 0;
    while (pos < inner.size()) {
      auto comma = inner.find(',', pos);
      if (comma == std::string::npos) comma = inner.size();
      k.params.push_back(std::stoi(inner.substr(pos, comma - pos)));
      pos = comma + 1;
    }
    return k;
  }
};

inline AltForm catalog_form(const CatalogKey& key) {
  auto need = [&](std::size_t n) {
    if (key.params.size() != n)
      throw std::invalid_argument("catalog key '" + key.name + "' takes " + std::to_string(n) +
                                  " parameter(s)");
  };
  const std::string& n = key.name;
  if (n == "phi0") {
    need(0);
    return phi0();
  }
  if (n == "star_phi0") {
    need(0);
    return star_phi0();
  }
  if (n == "kraines") {
    need(0);
    return kraines();
  }
  if (n == "omega0") {
    need(1);
    return omega0(key.params[0]);
  }
  if (n == "omega_star") {
    need(1);
    return omega_star(key.params[0]);
  }
  if (n == "re_upsilon0") {
    need(1);
    return upsilon0(key.params[0]).first;
  }
  if (n == "im_upsilon0") {
    need(1);
    return upsilon0(key.params[0]).second;
  }
  if (n == "re_upsilon_star") {
    need(1);
    return upsilon_star(key.params[0]).first;
  }
  if (n == "im_upsilon_star") {
    need(1);
    return upsilon_star(key.params[0]).second;
  }
  if (n == "omega_pair") {
    if (key.params.size() == 1) return omega_pair(key.params[0]);
    need(2);
    return omega_pair(key.params[0], key.params[1]);
  }
  if (n == "omega_cal") {  // alias indexed 2..4 on the coassociative 4-plane
    need(1);
    return omega_pair(key.params[0] - 1);
  }
  if (n == "wirtinger") {
    need(2);
    return wirtinger(key.params[0], key.params[1]);
  }
  throw std::invalid_argument("unknown form key: " + n);
}

inline Mat catalog_matrix(const CatalogKey& key) {
  const std::string& n = key.name;
  if (n == "R6") return matrix_R6();
  if (n == "R7") return matrix_R7();
  if (n == "J" && key.params.size() == 1) return matrix_J(key.params[0]);
  if (n == "Jstar" && key.params.size() == 1) return matrix_Jstar(key.params[0]);
  if (n == "pair_permutation" && key.params.size() == 1)
    return matrix_pair_permutation(key.params[0]);
  throw std::invalid_argument("unknown matrix key: " + n);
}

inline Subspace catalog_space(const CatalogKey& key) {
  const std::string& n = key.name;
  if (n == "W5") return space_W5();
  if (n == "W14") return space_W14();
  if (n == "W22") return space_W22();
  if (n == "su" && key.params.size() == 1) return space_su(key.params[0]);
  if (n == "su_star" && key.params.size() == 1) return space_su_star(key.params[0]);
  throw std::invalid_argument("unknown subspace key: " + n);
}

}  // namespace calibkit
