#pragma once

#include <calibkit/altform.hpp>
#include <calibkit/catalog.hpp>
#include <calibkit/matrix.hpp>
#include <calibkit/subspace.hpp>

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace calibkit {

/// A finite generating set of constant-coefficient forms on R^n.
struct FormSystem {
  int dim = 0;
  std::string name;
  std::vector<AltForm> generators;

  FormSystem(int n, std::string id, std::vector<AltForm> gens)
      : dim(n), name(std::move(id)), generators(std::move(gens)) {
    if (generators.empty()) throw std::invalid_argument("form system needs generators");
    for (const auto& g : generators)
      if (g.dim() != dim) throw std::invalid_argument("form system dimension mismatch");
  }
};

inline FormSystem system_su3() {
  auto [re, im] = upsilon0(3);
  return FormSystem(6, "su3", {omega0(3), re, im});
}
inline FormSystem system_su3_star() {
  auto [re, im] = upsilon_star(3);
  return FormSystem(6, "su3-star", {omega_star(3), re, im});
}
inline FormSystem system_g2() { return FormSystem(7, "g2", {phi0(), star_phi0()}); }
inline FormSystem system_omega_only() { return FormSystem(6, "omega-only", {omega0(3)}); }
inline FormSystem system_sp2sp1() { return FormSystem(8, "sp2sp1", {kraines()}); }

inline FormSystem system_by_name(const std::string& name) {
  if (name == "su3") return system_su3();
  if (name == "su3-star") return system_su3_star();
  if (name == "g2") return system_g2();
  if (name == "omega-only") return system_omega_only();
  if (name == "sp2sp1") return system_sp2sp1();
  throw std::invalid_argument("unknown system: " + name +
                              " (expected su3|su3-star|g2|omega-only|sp2sp1)");
}

namespace detail {

/// Linear rows (over the n^2 matrix entries, row-major) of the condition that
/// x·α vanish on a chosen set of target index masks, for each generator.
inline std::vector<RationalRow> action_rows(const FormSystem& f, int max_index) {
  const int n = f.dim;
  std::vector<RationalRow> rows;
  // coefficient of x(a,b): E_ab · dx^I replaces index a by b in I
  for (const auto& g : f.generators) {
    const int p = g.degree();
    if (p > max_index) continue;
    std::map<IndexMask, std::size_t> row_of;
    std::vector<RationalRow> local;
    for (int a = 1; a <= n; ++a)
      for (int b = 1; b <= n; ++b) {
        Mat eab(n, n);
        eab(a - 1, b - 1) = 1;
        AltForm acted = inf_action(eab, g);
        for (const auto& [m, c] : acted.terms()) {
          if (max_index < n && (m >> max_index) != 0) continue;
          auto it = row_of.find(m);
          if (it == row_of.end()) {
            it = row_of.emplace(m, local.size()).first;
            local.emplace_back(n * n, Rational(0));
          }
          local[it->second][(a - 1) * n + (b - 1)] += c;
        }
      }
    for (auto& r : local) rows.push_back(std::move(r));
  }
  return rows;
}

}  // namespace detail

/// Infinitesimal stabilizer {x in M_n : x·α = 0 for every generator α},
/// the nullspace of the action map. Closed under the matrix commutator.
inline Subspace stab_algebra(const FormSystem& f) {
  const int n = f.dim;
  auto rows = detail::action_rows(f, n);
  if (rows.empty()) return Subspace::full(n * n);
  Mat m(rows.size(), n * n);
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (int j = 0; j < n * n; ++j) m(i, j) = rows[i][j];
  return rank_nullspace(m).second;
}

/// Checks [x, y] ∈ S for all basis pairs of a matrix subspace.
inline bool bracket_closed(const Subspace& s) {
  auto mats = s.basis_matrices();
  for (std::size_t i = 0; i < mats.size(); ++i)
    for (std::size_t j = i + 1; j < mats.size(); ++j)
      if (!s.contains(commutator(mats[i], mats[j]).flatten())) return false;
  return true;
}

inline bool all_skew(const Subspace& s) {
  for (const auto& m : s.basis_matrices())
    if (!m.is_skew()) return false;
  return true;
}

/// Rank of the symbol map Φ : Hom(R^n, M_n) -> ⊕_α Λ^{deg α + 1},
/// Φ(X) = Σ_i dx^i ∧ (X(e_i)·α). This is the codimension of the transverse
/// integral-element variety at the flat point.
inline std::size_t symbol_rank(const FormSystem& f) {
  const int n = f.dim;
  // columns indexed (i, a, b); rows indexed (generator, target mask of degree p+1)
  std::vector<std::pair<std::size_t, IndexMask>> row_keys;  // (generator idx, mask)
  std::map<std::pair<std::size_t, IndexMask>, std::size_t> row_of;
  for (std::size_t gi = 0; gi < f.generators.size(); ++gi) {
    const int p1 = f.generators[gi].degree() + 1;
    for (IndexMask m = 0; m < (IndexMask(1) << n); ++m)
      if (mask_degree(m) == p1) {
        row_of[{gi, m}] = row_keys.size();
        row_keys.emplace_back(gi, m);
      }
  }
  const std::size_t ncols = static_cast<std::size_t>(n) * n * n;
  std::vector<RationalRow> rows(row_keys.size(), RationalRow(ncols, Rational(0)));
  for (int i = 1; i <= n; ++i)
    for (int a = 1; a <= n; ++a)
      for (int b = 1; b <= n; ++b) {
        const std::size_t col = (static_cast<std::size_t>(i - 1) * n + (a - 1)) * n + (b - 1);
        Mat eab(f.dim, f.dim);
        eab(a - 1, b - 1) = 1;
        for (std::size_t gi = 0; gi < f.generators.size(); ++gi) {
          AltForm w = wedge(AltForm::monomial(n, {i}), inf_action(eab, f.generators[gi]));
          for (const auto& [m, c] : w.terms()) rows[row_of.at({gi, m})][col] = c;
        }
      }
  return rational_rank(rows, ncols);
}

struct AdmissibilityReport {
  std::size_t n = 0;
  std::size_t stab_dim = 0;
  std::size_t rank = 0;
  std::size_t expected_rank = 0;    // n(n(n-1)/2 - dim g)
  std::size_t kernel_dim = 0;       // n^3 - rank
  std::size_t expected_kernel = 0;  // n·dim g + n^2(n+1)/2
  bool strongly_admissible = false;
};

/// Verdict: the symbol rank equals n·(n(n-1)/2 - dim g). Requires the
/// stabilizer to lie in the skew matrices (so the first prolongation
/// vanishes and the kernel dimension cross-check applies).
inline AdmissibilityReport strong_admissibility(const FormSystem& f) {
  Subspace g = stab_algebra(f);
  if (!all_skew(g))
    throw std::invalid_argument("stabilizer of '" + f.name +
                                "' is not contained in the skew matrices");
  AdmissibilityReport r;
  r.n = static_cast<std::size_t>(f.dim);
  r.stab_dim = g.dim();
  r.rank = symbol_rank(f);
  r.expected_rank = r.n * (r.n * (r.n - 1) / 2 - r.stab_dim);
  r.kernel_dim = r.n * r.n * r.n - r.rank;
  r.expected_kernel = r.n * r.stab_dim + r.n * r.n * (r.n + 1) / 2;
  r.strongly_admissible = (r.rank == r.expected_rank);
  return r;
}

}  // namespace calibkit
