#pragma once

#include <calibkit/altform.hpp>
#include <calibkit/catalog.hpp>
#include <calibkit/matrix.hpp>
#include <calibkit/subspace.hpp>

#include <cmath>
#include <complex>
#include <cstdint>
#include <numbers>
#include <optional>
#include <stdexcept>
#include <vector>

namespace calibkit {

// ---------------------------------------------------------------------------
// Deterministic splittable RNG: every stochastic result records its seed and
// stream so parallel and serial runs agree exactly.
// ---------------------------------------------------------------------------

class Rng {
 public:
  static Rng stream(std::uint64_t seed, std::uint64_t stream_id) {
    Rng r;
    r.state_ = mix(mix(seed) ^ mix(stream_id * 0x9E3779B97F4A7C15ull + 0xBF58476D1CE4E5B9ull));
    return r;
  }
  explicit Rng(std::uint64_t seed = 1) : state_(mix(seed)) {}

  std::uint64_t next_u64() {
    // splitmix64 step
    state_ += 0x9E3779B97F4A7C15ull;
    return mix(state_);
  }
  double uniform() {  // [0, 1)
    return static_cast<double>(next_u64() >> 11) * 0x1.0p-53;
  }
  double uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }
  double gaussian() {
    if (have_spare_) {
      have_spare_ = false;
      return spare_;
    }
    double u1 = 0.0;
    while (u1 <= 0.0) u1 = uniform();
    const double u2 = uniform();
    const double r = std::sqrt(-2.0 * std::log(u1));
    const double theta = 2.0 * std::numbers::pi * u2;
    spare_ = r * std::sin(theta);
    have_spare_ = true;
    return r * std::cos(theta);
  }

 private:
  static std::uint64_t mix(std::uint64_t z) {
    z ^= z >> 30;
    z *= 0xBF58476D1CE4E5B9ull;
    z ^= z >> 27;
    z *= 0x94D049BB133111EBull;
    z ^= z >> 31;
    return z;
  }
  std::uint64_t state_ = 0;
  bool have_spare_ = false;
  double spare_ = 0.0;
};

// ---------------------------------------------------------------------------
// Small dense numerics: thin QR and the matrix exponential.
// ---------------------------------------------------------------------------

/// Thin QR of an n x p matrix (p <= n) by twice-through modified Gram-Schmidt,
/// with the sign fixed so R has positive diagonal.
inline MatD thin_qr_q(const MatD& a) {
  const std::size_t n = a.rows(), p = a.cols();
  MatD q = a;
  for (std::size_t j = 0; j < p; ++j) {
    for (int pass = 0; pass < 2; ++pass)
      for (std::size_t k = 0; k < j; ++k) {
        double dot = 0.0;
        for (std::size_t i = 0; i < n; ++i) dot += q(i, k) * q(i, j);
        for (std::size_t i = 0; i < n; ++i) q(i, j) -= dot * q(i, k);
      }
    double norm = 0.0;
    for (std::size_t i = 0; i < n; ++i) norm += q(i, j) * q(i, j);
    norm = std::sqrt(norm);
    if (norm < 1e-300) throw std::runtime_error("rank-deficient frame in QR");
    double inv = 1.0 / norm;
    // keep the diagonal of R positive: R(j,j) = norm > 0 already
    for (std::size_t i = 0; i < n; ++i) q(i, j) *= inv;
  }
  return q;
}

/// exp(x) by scaling-and-squaring with a truncated series.
inline MatD expm(const MatD& x) {
  if (!x.is_square()) throw std::invalid_argument("expm of non-square matrix");
  const std::size_t n = x.rows();
  double norm = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    double row = 0.0;
    for (std::size_t j = 0; j < n; ++j) row += std::abs(x(i, j));
    norm = std::max(norm, row);
  }
  int squarings = 0;
  while (norm > 0.25) {
    norm *= 0.5;
    ++squarings;
  }
  MatD scaled = x * std::ldexp(1.0, -squarings);
  MatD result = MatD::identity(n);
  MatD term = MatD::identity(n);
  for (int k = 1; k <= 20; ++k) {
    term = term * scaled;
    term = term * (1.0 / k);
    result = result + term;
  }
  for (int s = 0; s < squarings; ++s) result = result * result;
  return result;
}

// ---------------------------------------------------------------------------
// Frames (Stiefel points with orientation)
// ---------------------------------------------------------------------------

/// p orthonormal vectors in R^n, stored as the columns of an n x p matrix,
/// together with an orientation sign for the spanned plane.
class Frame {
 public:
  Frame(MatD vectors, int orientation) : v_(std::move(vectors)), orientation_(orientation) {
    if (orientation_ != 1 && orientation_ != -1)
      throw std::invalid_argument("orientation must be +1 or -1");
    if (gram_residual() > 1e-12)
      throw std::invalid_argument("frame vectors are not orthonormal (Gram residual > 1e-12)");
  }

  std::size_t n() const { return v_.rows(); }
  std::size_t p() const { return v_.cols(); }
  const MatD& vectors() const { return v_; }
  int orientation() const { return orientation_; }
  Frame with_orientation(int o) const { return Frame(v_, o); }

  VecD column(std::size_t j) const {
    VecD out(static_cast<int>(n()));
    for (std::size_t i = 0; i < n(); ++i) out[static_cast<int>(i)] = v_(i, j);
    return out;
  }
  std::vector<VecD> columns() const {
    std::vector<VecD> out;
    for (std::size_t j = 0; j < p(); ++j) out.push_back(column(j));
    return out;
  }

  double gram_residual() const {
    double r = 0.0;
    for (std::size_t a = 0; a < p(); ++a)
      for (std::size_t b = 0; b < p(); ++b) {
        double dot = 0.0;
        for (std::size_t i = 0; i < n(); ++i) dot += v_(i, a) * v_(i, b);
        r = std::max(r, std::abs(dot - (a == b ? 1.0 : 0.0)));
      }
    return r;
  }

 private:
  MatD v_;
  int orientation_;
};

inline Frame random_frame(Rng& rng, int n, int p) {
  MatD g(n, p);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < p; ++j) g(i, j) = rng.gaussian();
  return Frame(thin_qr_q(g), 1);
}

/// Raw multilinear value a(v_1, ..., v_p) on the frame columns.
inline double raw_value(const AltFormD& a, const Frame& e) {
  return eval(a, e.columns());
}

/// Value against the oriented unit volume of the plane: a(v)·orientation.
inline double frame_value(const AltFormD& a, const Frame& e) {
  return raw_value(a, e) * e.orientation();
}

/// ι_E*φ = Ω_E within tol.
inline bool is_calibrated_plane(const AltFormD& a, const Frame& e, double tol) {
  if (a.degree() != static_cast<int>(e.p()))
    throw std::invalid_argument("form degree does not match frame size");
  return std::abs(frame_value(a, e) - 1.0) <= tol;
}

// ---------------------------------------------------------------------------
// Comass estimation by projected-gradient ascent over the Stiefel manifold
// ---------------------------------------------------------------------------

struct ComassConfig {
  int restarts = 200;
  int iterations = 500;
  std::uint64_t seed = 1;
};

struct ComassResult {
  double estimate = 0.0;
  std::optional<Frame> argmax_frame;
  int samples = 0;       // restarts performed
  long iterations = 0;   // total ascent iterations across restarts
  std::uint64_t seed = 0;
  bool converged = true;  // every restart hit the gradient tolerance
};

namespace detail {

struct FlatTerm {
  std::vector<int> idx;  // 1-based indices, increasing
  double coef;
};

inline std::vector<FlatTerm> flatten_terms(const AltFormD& a) {
  std::vector<FlatTerm> out;
  for (const auto& [m, c] : a.terms()) out.push_back({mask_indices(m), c});
  return out;
}

inline double flat_eval(const std::vector<FlatTerm>& terms, int p, const MatD& v) {
  MatD minor(p, p);
  double total = 0.0;
  for (const auto& t : terms) {
    for (int r = 0; r < p; ++r)
      for (int c = 0; c < p; ++c) minor(r, c) = v(t.idx[r] - 1, c);
    total += t.coef * determinant(minor);
  }
  return total;
}

inline MatD cofactor_matrix(const MatD& m) {
  const std::size_t p = m.rows();
  MatD cof(p, p);
  MatD sub(p - 1, p - 1);
  for (std::size_t r = 0; r < p; ++r)
    for (std::size_t c = 0; c < p; ++c) {
      std::size_t si = 0;
      for (std::size_t i = 0; i < p; ++i) {
        if (i == r) continue;
        std::size_t sj = 0;
        for (std::size_t j = 0; j < p; ++j) {
          if (j == c) continue;
          sub(si, sj++) = m(i, j);
        }
        ++si;
      }
      double d = (p == 1) ? 1.0 : determinant(sub);
      cof(r, c) = (((r + c) & 1) ? -d : d);
    }
  return cof;
}

/// Euclidean gradient of V |-> a(columns of V).
inline MatD flat_grad(const std::vector<FlatTerm>& terms, int n, int p, const MatD& v) {
  MatD grad(n, p);
  MatD minor(p, p);
  for (const auto& t : terms) {
    for (int r = 0; r < p; ++r)
      for (int c = 0; c < p; ++c) minor(r, c) = v(t.idx[r] - 1, c);
    MatD cof = cofactor_matrix(minor);
    for (int r = 0; r < p; ++r)
      for (int c = 0; c < p; ++c) grad(t.idx[r] - 1, c) += t.coef * cof(r, c);
  }
  return grad;
}

/// Projection onto the tangent space of the Stiefel manifold at V.
inline MatD stiefel_project(const MatD& v, const MatD& g) {
  const std::size_t n = v.rows(), p = v.cols();
  MatD vtg(p, p);
  for (std::size_t a = 0; a < p; ++a)
    for (std::size_t b = 0; b < p; ++b) {
      double dot = 0.0;
      for (std::size_t i = 0; i < n; ++i) dot += v(i, a) * g(i, b);
      vtg(a, b) = dot;
    }
  MatD sym(p, p);
  for (std::size_t a = 0; a < p; ++a)
    for (std::size_t b = 0; b < p; ++b) sym(a, b) = 0.5 * (vtg(a, b) + vtg(b, a));
  return g - v * sym;
}

}  // namespace detail

/// Lower bound on the comass of a p-form: the best |a(frame)| found by
/// projected-gradient ascent with QR retraction from seeded random restarts.
/// Deterministic given the seed; restarts use independent derived streams.
inline ComassResult comass_estimate(const AltFormD& a, int p, const ComassConfig& cfg = {}) {
  if (a.degree() != p) throw std::invalid_argument("comass degree mismatch");
  const int n = a.dim();
  auto terms = detail::flatten_terms(a);
  ComassResult best;
  best.seed = cfg.seed;
  best.samples = cfg.restarts;
  double best_abs = -1.0;
  MatD best_v(n, p);
  for (int restart = 0; restart < cfg.restarts; ++restart) {
    Rng rng = Rng::stream(cfg.seed, static_cast<std::uint64_t>(restart));
    Frame f = random_frame(rng, n, p);
    MatD v = f.vectors();
    double val = detail::flat_eval(terms, p, v);
    bool hit_tolerance = false;
    int it = 0;
    for (; it < cfg.iterations; ++it) {
      MatD g = detail::flat_grad(terms, n, p, v);
      if (val < 0.0) g = -g;  // ascend |a|
      MatD d = detail::stiefel_project(v, g);
      double dn = 0.0;
      for (std::size_t i = 0; i < d.rows(); ++i)
        for (std::size_t j = 0; j < d.cols(); ++j) dn = std::max(dn, std::abs(d(i, j)));
      if (dn < 1e-13) {
        hit_tolerance = true;
        break;
      }
      double step = 0.5;
      bool improved = false;
      while (step > 1e-14) {
        MatD cand = thin_qr_q(v + d * step);
        double cv = detail::flat_eval(terms, p, cand);
        if (std::abs(cv) > std::abs(val)) {
          v = cand;
          val = cv;
          improved = true;
          break;
        }
        step *= 0.5;
      }
      if (!improved) {
        hit_tolerance = true;  // no ascent direction left at float resolution
        break;
      }
    }
    best.iterations += it;
    if (!hit_tolerance) best.converged = false;
    if (std::abs(val) > best_abs) {
      best_abs = std::abs(val);
      best_v = v;
    }
  }
  best.estimate = best_abs;
  double raw = detail::flat_eval(terms, p, best_v);
  best.argmax_frame = Frame(best_v, raw >= 0.0 ? 1 : -1);
  return best;
}

// ---------------------------------------------------------------------------
// Plane predicates
// ---------------------------------------------------------------------------

struct SlVerdict {
  bool is_lagrangian = false;
  std::optional<bool> is_special;              // defined only when Lagrangian
  std::optional<std::complex<double>> phase;   // λ(E) with ι_E*Υ = λ(E)·Ω_E
  std::optional<int> calibrated_orientation;   // the orientation (if any) with phase +1
};

/// Special-Lagrangian test of a 3-frame in R^6 against ω_0 and Υ_0. The phase
/// is taken against the frame's own orientation; both orientations are probed
/// and the calibrated one, when it exists, is reported.
inline SlVerdict sl_predicate(const Frame& e, double tol) {
  if (e.n() != 6 || e.p() != 3) throw std::invalid_argument("expected a 3-frame in R^6");
  const AltFormD w = to_double(omega0(3));
  auto [re, im] = upsilon0(3);
  const AltFormD red = to_double(re), imd = to_double(im);
  SlVerdict out;
  auto cols = e.columns();
  double worst = 0.0;
  for (int a = 0; a < 3; ++a)
    for (int b = a + 1; b < 3; ++b) worst = std::max(worst, std::abs(eval(w, {cols[a], cols[b]})));
  out.is_lagrangian = (worst <= tol);
  if (!out.is_lagrangian) return out;
  std::complex<double> lambda(frame_value(red, e), frame_value(imd, e));
  out.phase = lambda;
  out.is_special = (std::abs(lambda - std::complex<double>(1.0, 0.0)) <= tol);
  if (*out.is_special)
    out.calibrated_orientation = e.orientation();
  else if (std::abs(lambda + std::complex<double>(1.0, 0.0)) <= tol)
    out.calibrated_orientation = -e.orientation();
  return out;
}

/// The normal-bundle map v ↦ -ι_E*(v ⌟ φ_0) of a coassociative 4-frame,
/// expressed in the frame's own coordinates as a 2-form on R^4.
inline AltFormD coassoc_normal_iso(const Frame& e, const VecD& v, double tol = 1e-9) {
  if (e.n() != 7 || e.p() != 4) throw std::invalid_argument("expected a 4-frame in R^7");
  if (v.dim() != 7) throw std::invalid_argument("normal vector must live in R^7");
  const AltFormD phi = to_double(phi0());
  auto cols = e.columns();
  for (int a = 0; a < 4; ++a)
    for (int b = a + 1; b < 4; ++b)
      for (int c = b + 1; c < 4; ++c)
        if (std::abs(eval(phi, {cols[a], cols[b], cols[c]})) > tol)
          throw std::invalid_argument("frame is not coassociative (phi_0 does not vanish)");
  for (int a = 0; a < 4; ++a) {
    double dot = 0.0;
    for (int i = 0; i < 7; ++i) dot += v[i] * cols[a][i];
    if (std::abs(dot) > tol) throw std::invalid_argument("vector is not normal to the frame");
  }
  AltFormD beta(4, 2);
  for (int a = 0; a < 4; ++a)
    for (int b = a + 1; b < 4; ++b)
      beta.add_term(indices_mask({a + 1, b + 1}), -eval(phi, {v, cols[a], cols[b]}));
  return beta;
}

/// Hodge star on Λ²(R^4) for the given orientation sign.
inline AltFormD self_dual_residual(const AltFormD& beta, int orientation) {
  AltFormD star = hodge(beta) * static_cast<double>(orientation);
  return beta - star;
}

inline double form_l2(const AltFormD& a) {
  double s = 0.0;
  for (const auto& [m, c] : a.terms()) s += c * c;
  return std::sqrt(s);
}

/// An orthonormal basis of the orthogonal complement of the frame's span.
inline std::vector<VecD> normal_basis(const Frame& e) {
  const int n = static_cast<int>(e.n()), p = static_cast<int>(e.p());
  MatD big(n, n);
  for (int j = 0; j < p; ++j)
    for (int i = 0; i < n; ++i) big(i, j) = e.vectors()(i, j);
  // complete with coordinate vectors, then orthonormalize greedily
  std::vector<VecD> out;
  int filled = p;
  for (int cand = 0; cand < n && filled < n; ++cand) {
    std::vector<double> w(n, 0.0);
    w[cand] = 1.0;
    for (int pass = 0; pass < 2; ++pass)
      for (int k = 0; k < filled; ++k) {
        double dot = 0.0;
        for (int i = 0; i < n; ++i) dot += big(i, k) * w[i];
        for (int i = 0; i < n; ++i) w[i] -= dot * big(i, k);
      }
    double norm = 0.0;
    for (double x : w) norm += x * x;
    norm = std::sqrt(norm);
    if (norm < 1e-8) continue;
    VecD nv(n);
    for (int i = 0; i < n; ++i) {
      big(i, filled) = w[i] / norm;
      nv[i] = w[i] / norm;
    }
    out.push_back(nv);
    ++filled;
  }
  if (filled != n) throw std::runtime_error("failed to complete the frame");
  return out;
}

// ---------------------------------------------------------------------------
// Group sampling
// ---------------------------------------------------------------------------

/// exp of a random element of a matrix Lie algebra, coefficients uniform in
/// [-1, 1] over the canonical basis. Preserves every invariant form of the
/// algebra to machine precision.
inline MatD sample_group(const Subspace& algebra, Rng& rng) {
  auto basis = algebra.basis_matrices();
  if (basis.empty()) {
    std::size_t n = 0;
    while (n * n < algebra.ambient()) ++n;
    return MatD::identity(n);
  }
  const std::size_t n = basis.front().rows();
  MatD x(n, n);
  for (const auto& b : basis) {
    const double c = rng.uniform(-1.0, 1.0);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) x(i, j) += c * to_double(b(i, j));
  }
  return expm(x);
}

inline MatD sample_group(const Subspace& algebra, std::uint64_t seed,
                         std::uint64_t stream = 0) {
  Rng rng = Rng::stream(seed, stream);
  return sample_group(algebra, rng);
}

/// Frame obtained by pushing an axis-plane through a group element g:
/// columns g·e_{i} for the given 1-based axes.
inline Frame transform_axes(const MatD& g, const std::vector<int>& axes) {
  MatD v(g.rows(), axes.size());
  for (std::size_t j = 0; j < axes.size(); ++j)
    for (std::size_t i = 0; i < g.rows(); ++i) v(i, j) = g(i, axes[j] - 1);
  return Frame(v, 1);
}

/// Complex determinant of a real 2m x 2m matrix commuting with the split
/// complex structure (blocks [[a, -b], [b, a]] for z = x + iy stacked as
/// (x, y)); throws if the matrix is not complex-linear to within tol.
inline std::complex<double> complex_determinant_split(const MatD& a, double tol = 1e-9) {
  if (!a.is_square() || a.rows() % 2 != 0)
    throw std::invalid_argument("expected an even-dimensional square matrix");
  const std::size_t m = a.rows() / 2;
  MatrixT<std::complex<double>> c(m, m);
  for (std::size_t i = 0; i < m; ++i)
    for (std::size_t j = 0; j < m; ++j) {
      const double re = a(i, j), im = a(m + i, j);
      if (std::abs(a(m + i, m + j) - re) > tol || std::abs(a(i, m + j) + im) > tol)
        throw std::invalid_argument("matrix does not commute with the complex structure");
      c(i, j) = {re, im};
    }
  // Gaussian elimination over C
  std::complex<double> det = 1.0;
  for (std::size_t col = 0; col < m; ++col) {
    std::size_t sel = col;
    for (std::size_t i = col + 1; i < m; ++i)
      if (std::abs(c(i, col)) > std::abs(c(sel, col))) sel = i;
    if (std::abs(c(sel, col)) == 0.0) return 0.0;
    if (sel != col) {
      for (std::size_t j = 0; j < m; ++j) std::swap(c(col, j), c(sel, j));
      det = -det;
    }
    det *= c(col, col);
    for (std::size_t i = col + 1; i < m; ++i) {
      auto f = c(i, col) / c(col, col);
      for (std::size_t j = col; j < m; ++j) c(i, j) -= f * c(col, j);
    }
  }
  return det;
}

}  // namespace calibkit
