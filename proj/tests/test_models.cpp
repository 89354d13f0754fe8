#include <calibkit/models.hpp>
#include <calibkit/numeric.hpp>
#include <calibkit/stabilizer.hpp>

#include <catch2/catch_amalgamated.hpp>

#include <cmath>

using namespace calibkit;

namespace {

SdTriple standard_triple() {
  return SdTriple(omega_pair(1), omega_pair(2), omega_pair(3), AltForm::volume(4));
}

SdTripleD pulled_back(const MatD& a) {
  SdTriple t = standard_triple();
  return SdTripleD(pullback(a, to_double(t.omegas[0])), pullback(a, to_double(t.omegas[1])),
                   pullback(a, to_double(t.omegas[2])), to_double(t.vol) * determinant(a));
}

MatD random_gl4(Rng& rng) {
  MatD a(4, 4);
  do {
    for (int i = 0; i < 4; ++i)
      for (int j = 0; j < 4; ++j) a(i, j) = rng.uniform(-1.0, 1.0);
  } while (std::abs(determinant(a)) < 0.3);
  return a;
}

}  // namespace

TEST_CASE("pairing Gram matrix") {
  REQUIRE(sd_gram(standard_triple()) == Mat::identity(3));
  SECTION("a single form pairs to 1 with itself") {
    REQUIRE(sd_gram(standard_triple())(0, 0) == 1);
  }
  SECTION("naturality under pullback with determinant-scaled volume") {
    Rng rng(101);
    for (int trial = 0; trial < 20; ++trial) {
      MatD g = sd_gram(pulled_back(random_gl4(rng)));
      REQUIRE(max_abs(g - MatD::identity(3)) < 1e-12);
    }
  }
  SECTION("orientation-reversing pullbacks are included") {
    MatD flip = MatD::identity(4);
    flip(0, 0) = -1.0;
    REQUIRE(max_abs(sd_gram(pulled_back(flip)) - MatD::identity(3)) < 1e-14);
  }
}

TEST_CASE("standardize recovers a coframe") {
  SECTION("standard triple, exact arithmetic") {
    REQUIRE(standardize_sd_triple(standard_triple()) == Mat::identity(4));
  }
  SECTION("pulled-back triples round-trip in floating point") {
    Rng rng(107);
    for (int trial = 0; trial < 30; ++trial) {
      SdTripleD t = pulled_back(random_gl4(rng));
      MatD coframe = standardize_sd_triple(t, 1e-7);
      REQUIRE(sd_identity_residual(t, coframe) < 1e-9);
    }
  }
  SECTION("degenerate Gram is rejected") {
    SdTripleD t(to_double(omega_pair(1)), to_double(omega_pair(2)),
                to_double(omega_pair(3)) * std::sqrt(0.5), to_double(AltForm::volume(4)));
    REQUIRE_THROWS_AS(standardize_sd_triple(t), std::invalid_argument);
  }
  SECTION("incompatibly oriented triple is rejected") {
    SdTriple t(omega_pair(1), omega_pair(2), -omega_pair(3), AltForm::volume(4));
    REQUIRE(sd_gram(t) == Mat::identity(3));  // Gram alone cannot see the flip
    REQUIRE_THROWS_AS(standardize_sd_triple(t), std::invalid_argument);
  }
}

TEST_CASE("product structure on R^4 + R^3") {
  SECTION("standard triple reproduces the flat model") {
    auto s = build_g2_structure(standard_triple());
    REQUIRE(s.phibar == phi0());
    REQUIRE(s.star_phibar == star_phi0());
    REQUIRE(s.frame_map == Mat::identity(7));
    REQUIRE(pullback(s.frame_map, phi0()) == s.phibar);
    REQUIRE(hodge(s.phibar) == s.star_phibar);
  }
  SECTION("the product 3-form has the full 14-dimensional stabilizer") {
    auto s = build_g2_structure(standard_triple());
    REQUIRE(stab_algebra(FormSystem(7, "phibar", {s.phibar})).dim() == 14);
  }
  SECTION("float witness pulls the flat model back to the product form") {
    Rng rng(109);
    for (int trial = 0; trial < 5; ++trial) {
      SdTripleD t = pulled_back(random_gl4(rng));
      auto s = build_g2_structure(t, 1e-7);
      AltFormD diff = pullback(s.frame_map, to_double(phi0())) - s.phibar;
      REQUIRE(max_abs_coefficient(diff) < 1e-9);
    }
  }
}

TEST_CASE("torus metric correspondence") {
  SECTION("identity fixed point") {
    auto r = torus_metric_roundtrip(Mat::identity(3));
    REQUIRE(r.h == Mat::identity(3));
    REQUIRE(r.g_back == Mat::identity(3));
    REQUIRE(r.divergence_ok);
  }
  SECTION("exact rational round trip for m = 3, 4, 5") {
    Rng rng(113);
    for (int m = 3; m <= 5; ++m) {
      for (int trial = 0; trial < 3; ++trial) {
        Mat a(m, m);
        Rational det(0);
        do {
          for (int i = 0; i < m; ++i)
            for (int j = 0; j < m; ++j)
              a(i, j) = Rational(static_cast<int>(rng.uniform(-4.0, 5.0)),
                                 1 + static_cast<int>(rng.uniform(0.0, 3.0)));
          det = determinant(a);
        } while (det == 0);
        Mat g = a.transpose() * a;  // SPD with perfect-square determinant
        auto r = torus_metric_roundtrip(g);
        REQUIRE(r.g_back == g);
        // h is itself SPD and symmetric
        REQUIRE(r.h.is_symmetric());
      }
    }
  }
  SECTION("a diagonal example") {
    Mat g(3, 3);
    g(0, 0) = 4;
    g(1, 1) = 9;
    g(2, 2) = 1;  // det = 36, sqrt = 6
    auto r = torus_metric_roundtrip(g);
    REQUIRE(r.h(0, 0) == Rational(6, 4));
    REQUIRE(r.h(1, 1) == Rational(6, 9));
    REQUIRE(r.h(2, 2) == 6);
    REQUIRE(r.g_back == g);
  }
  SECTION("m = 2 is rejected") {
    REQUIRE_THROWS_AS(torus_metric_roundtrip(Mat::identity(2)), std::invalid_argument);
  }
  SECTION("non-SPD input is rejected") {
    Mat g(3, 3);
    g(0, 0) = -1;
    g(1, 1) = 1;
    g(2, 2) = 1;
    REQUIRE_THROWS_AS(torus_metric_roundtrip(g), std::invalid_argument);
    Mat ns(3, 3);
    ns(0, 0) = 1;
    ns(0, 1) = 1;
    ns(1, 1) = 1;
    ns(2, 2) = 1;  // not symmetric
    REQUIRE_THROWS_AS(torus_metric_roundtrip(ns), std::invalid_argument);
  }
}
