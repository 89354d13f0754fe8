#include <calibkit/catalog.hpp>
#include <calibkit/stabilizer.hpp>

#include <catch2/catch_amalgamated.hpp>

using namespace calibkit;

TEST_CASE("golden form expansions") {
  SECTION("the associative 3-form has exactly seven unit terms") {
    AltForm p = phi0();
    REQUIRE(p.terms().size() == 7);
    REQUIRE(p.coefficient({5, 6, 7}) == 1);
    REQUIRE(p.coefficient({1, 2, 5}) == -1);
    REQUIRE(p.coefficient({3, 4, 5}) == -1);
    REQUIRE(p.coefficient({1, 3, 6}) == -1);
    REQUIRE(p.coefficient({2, 4, 6}) == 1);
    REQUIRE(p.coefficient({1, 4, 7}) == -1);
    REQUIRE(p.coefficient({2, 3, 7}) == -1);
  }
  SECTION("real part of the complex volume") {
    AltForm re = upsilon0(3).first;
    REQUIRE(re == AltForm::monomial(6, {1, 2, 3}) - AltForm::monomial(6, {1, 5, 6}) +
                      AltForm::monomial(6, {2, 4, 6}) - AltForm::monomial(6, {3, 4, 5}));
  }
  SECTION("imaginary part comes from the expansion oracle") {
    AltForm im = upsilon0(3).second;
    REQUIRE(im == AltForm::monomial(6, {1, 2, 6}) - AltForm::monomial(6, {1, 3, 5}) +
                      AltForm::monomial(6, {2, 3, 4}) - AltForm::monomial(6, {4, 5, 6}));
    // the dx246 slot belongs to the real part, not the imaginary part
    REQUIRE(im.coefficient({2, 4, 6}) == 0);
  }
  SECTION("omega0 on R^6") {
    REQUIRE(omega0(3) == AltForm::monomial(6, {1, 4}) + AltForm::monomial(6, {2, 5}) +
                             AltForm::monomial(6, {3, 6}));
  }
  SECTION("the 4-form is the Hodge dual of the 3-form") {
    REQUIRE(hodge(phi0()) == star_phi0());
    REQUIRE(star_phi0().coefficient({1, 2, 3, 4}) == 1);
  }
  SECTION("wirtinger normalization") {
    REQUIRE(wirtinger(3, 0) == AltForm::one(6));
    REQUIRE(wirtinger(3, 1) == omega0(3));
    AltForm top = wirtinger(3, 3);
    REQUIRE(top.terms().size() == 1);
    Rational c = top.coefficient({1, 2, 3, 4, 5, 6});
    REQUIRE((c == 1 || c == -1));
    REQUIRE_THROWS_AS(wirtinger(3, 4), std::invalid_argument);
  }
  SECTION("the quaternionic 4-form has stabilizer checks elsewhere; shape here") {
    AltForm k = kraines();
    REQUIRE(k.dim() == 8);
    REQUIRE(k.degree() == 4);
    REQUIRE_FALSE(k.is_zero());
    // the three squared Kaehler forms each contribute a dx1234-type term
    REQUIRE(k.coefficient({1, 2, 3, 4}) != 0);
  }
}

TEST_CASE("golden matrices") {
  REQUIRE(matrix_J(1) == Mat(2, 2, {Rational(0), Rational(1), Rational(-1), Rational(0)}));
  SECTION("R7 is diag(I_4, -I_3)") {
    Mat r = matrix_R7();
    for (int i = 0; i < 7; ++i)
      for (int j = 0; j < 7; ++j)
        REQUIRE(r(i, j) == (i == j ? Rational(i < 4 ? 1 : -1) : Rational(0)));
  }
  SECTION("Jstar(2) is block-diagonal with two J(1) blocks") {
    Mat js = matrix_Jstar(2);
    Mat j1 = matrix_J(1);
    for (int b = 0; b < 2; ++b)
      for (int i = 0; i < 2; ++i)
        for (int j = 0; j < 2; ++j) REQUIRE(js(2 * b + i, 2 * b + j) == j1(i, j));
    REQUIRE(js(0, 2) == 0);
    REQUIRE(js(1, 3) == 0);
  }
  SECTION("J and Jstar are conjugate by the pair permutation") {
    for (int m : {2, 3}) {
      Mat p = matrix_pair_permutation(m);
      auto pinv = inverse(p);
      REQUIRE(pinv.has_value());
      REQUIRE((p * matrix_J(m) * *pinv) == matrix_Jstar(m));
    }
  }
}

TEST_CASE("golden subspaces") {
  SECTION("W5") {
    Subspace w5 = space_W5();
    REQUIRE(w5.dim() == 5);
    Mat d(6, 6);
    d(0, 0) = d(1, 1) = d(2, 2) = 1;  // the x5 = 1 generator
    REQUIRE(w5.contains(d.flatten()));
  }
  SECTION("nesting") {
    REQUIRE(space_W14().dim() == 14);
    REQUIRE(space_W22().dim() == 22);
    REQUIRE(space_W14().contains(space_W5()));
    REQUIRE(space_W22().contains(space_W14()));
  }
  SECTION("su(m) block presentation") {
    REQUIRE(space_su(2).dim() == 3);
    REQUIRE(space_su(3).dim() == 8);
    auto [re, im] = upsilon0(3);
    for (const auto& x : space_su(3).basis_matrices()) {
      REQUIRE(x.is_skew());
      REQUIRE(inf_action(x, omega0(3)).is_zero());
      REQUIRE(inf_action(x, re).is_zero());
      REQUIRE(inf_action(x, im).is_zero());
    }
  }
  SECTION("su_star(m) via the commutant equations") {
    REQUIRE(space_su_star(3).dim() == 8);
    auto [re, im] = upsilon_star(3);
    for (const auto& x : space_su_star(3).basis_matrices()) {
      REQUIRE(x.is_skew());
      REQUIRE(inf_action(x, omega_star(3)).is_zero());
      REQUIRE(inf_action(x, re).is_zero());
      REQUIRE(inf_action(x, im).is_zero());
    }
  }
  SECTION("pair permutation intertwines the two presentations' forms") {
    Mat p = matrix_pair_permutation(3);
    auto [re, im] = upsilon0(3);
    auto [res, ims] = upsilon_star(3);
    REQUIRE(pullback(p, omega_star(3)) == omega0(3));
    REQUIRE(pullback(p, res) == re);
    REQUIRE(pullback(p, ims) == im);
  }
}

TEST_CASE("catalog keys") {
  REQUIRE(CatalogKey::parse("phi0").name == "phi0");
  REQUIRE(CatalogKey::parse("phi0").params.empty());
  auto k = CatalogKey::parse("wirtinger(3,2)");
  REQUIRE(k.name == "wirtinger");
  REQUIRE(k.params == std::vector<int>{3, 2});
  REQUIRE(catalog_form(CatalogKey::parse("omega0(3)")) == omega0(3));
  REQUIRE(catalog_form(CatalogKey::parse("omega_cal(2)")) == omega_pair(1));
  REQUIRE(catalog_form(CatalogKey::parse("omega_cal(4)")) == omega_pair(3));
  REQUIRE(catalog_matrix(CatalogKey::parse("J(2)")) == matrix_J(2));
  REQUIRE(catalog_space(CatalogKey::parse("W14")) == space_W14());
  REQUIRE_THROWS_AS(catalog_form(CatalogKey::parse("nonesuch")), std::invalid_argument);
  REQUIRE_THROWS_AS(catalog_form(CatalogKey::parse("omega0")), std::invalid_argument);
  REQUIRE_THROWS_AS(CatalogKey::parse("omega0(3"), std::invalid_argument);
}
