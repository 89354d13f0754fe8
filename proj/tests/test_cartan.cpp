#include <calibkit/cartan.hpp>

#include <catch2/catch_amalgamated.hpp>

#include <vector>

using namespace calibkit;

namespace {
std::vector<std::size_t> dims(const PolarProfile& p) { return p.h_dims; }
}  // namespace

TEST_CASE("polar dimensions") {
  SECTION("split Kaehler + complex-volume system") {
    REQUIRE(dims(polar_profile(system_su3())) ==
            std::vector<std::size_t>{36, 36, 35, 31, 22, 14, 8});
  }
  SECTION("exceptional system") {
    REQUIRE(dims(polar_profile(system_g2())) ==
            std::vector<std::size_t>{49, 49, 49, 48, 44, 34, 21, 14});
  }
  SECTION("interleaved presentation diverges at k = 4") {
    REQUIRE(dims(polar_profile(system_su3_star())) ==
            std::vector<std::size_t>{36, 36, 35, 31, 26, 14, 8});
  }
  SECTION("Kaehler form alone") {
    REQUIRE(dims(polar_profile(system_omega_only())) ==
            std::vector<std::size_t>{36, 36, 35, 33, 30, 26, 21});
  }
  SECTION("quaternionic 4-form") {
    REQUIRE(dims(polar_profile(system_sp2sp1())) ==
            std::vector<std::size_t>{64, 64, 64, 64, 63, 59, 49, 29, 13});
  }
  SECTION("index range") {
    REQUIRE_THROWS_AS(polar_h(system_su3(), 7), std::invalid_argument);
    REQUIRE_THROWS_AS(polar_h(system_su3(), -1), std::invalid_argument);
  }
}

TEST_CASE("polar filtration properties") {
  const FormSystem sys = system_su3();
  const int n = sys.dim;
  Subspace prev = polar_h(sys, 0);
  REQUIRE(prev == Subspace::full(36));
  for (int k = 1; k <= n; ++k) {
    Subspace hk = polar_h(sys, k);
    REQUIRE(prev.contains(hk));
    // matrices with the first k columns zero always lie in h_k
    for (int i = 0; i < n; ++i)
      for (int j = k; j < n; ++j) {
        RationalRow v(n * n, Rational(0));
        v[i * n + j] = 1;
        REQUIRE(hk.contains(v));
      }
    prev = hk;
  }
  SECTION("top levels against the stabilizer") {
    Subspace g = stab_algebra(sys);
    REQUIRE(polar_h(sys, n) == g);
    REQUIRE(polar_h(sys, n - 1).dim() == g.dim() + n);
    REQUIRE(polar_h(sys, n - 1).contains(g));
  }
}

TEST_CASE("Cartan test") {
  SECTION("split presentation is regular with sum 42") {
    auto r = cartan_test(system_su3());
    REQUIRE(r.cartan_sum == 42);
    REQUIRE(r.symbol_rank == 42);
    REQUIRE(r.regularly_presented);
    REQUIRE(r.profile.c_seq == std::vector<std::size_t>{0, 0, 1, 5, 14, 22, 28});
  }
  SECTION("exceptional system is regular with sum 49") {
    auto r = cartan_test(system_g2());
    REQUIRE(r.cartan_sum == 49);
    REQUIRE(r.symbol_rank == 49);
    REQUIRE(r.regularly_presented);
    REQUIRE(r.profile.c_seq == std::vector<std::size_t>{0, 0, 0, 1, 5, 15, 28, 35});
  }
  SECTION("interleaved presentation falls short by 4") {
    auto r = cartan_test(system_su3_star());
    REQUIRE(r.cartan_sum == 38);
    REQUIRE(r.symbol_rank == 42);
    REQUIRE_FALSE(r.regularly_presented);
  }
  SECTION("c sequence is weakly increasing with c_n = n^2 - dim g") {
    for (const auto& sys : {system_su3(), system_g2(), system_sp2sp1()}) {
      auto p = polar_profile(sys);
      for (std::size_t k = 0; k + 1 < p.c_seq.size(); ++k) REQUIRE(p.c_seq[k] <= p.c_seq[k + 1]);
      REQUIRE(p.c_seq.back() ==
              static_cast<std::size_t>(sys.dim) * sys.dim - p.g_dim);
    }
  }
}

TEST_CASE("extension ranks on the quotient bundle") {
  const FormSystem su3 = system_su3();
  SECTION("k = 3 has 29-dimensional polar spaces and extension rank 25") {
    auto e = extension_rank_S(su3, 3);
    REQUIRE(e.dim_S == 34);
    REQUIRE(e.dim_H == 29);
    REQUIRE(e.r == 25);
  }
  SECTION("k = 4, 5") {
    REQUIRE(extension_rank_S(su3, 4).r == 15);
    REQUIRE(extension_rank_S(su3, 5).r == 6);
  }
  SECTION("exceptional system at k = 4, 5, 6") {
    const FormSystem g2 = system_g2();
    auto profile = polar_profile(g2);
    REQUIRE(extension_rank_S(g2, 4, &profile).r == 32);
    REQUIRE(extension_rank_S(g2, 5, &profile).r == 21);
    REQUIRE(extension_rank_S(g2, 6, &profile).r == 7);
    REQUIRE(extension_rank_S(g2, 4, &profile).dim_S == 42);
  }
  SECTION("index range") {
    REQUIRE_THROWS_AS(extension_rank_S(su3, 6), std::invalid_argument);
  }
}

TEST_CASE("restraining checks") {
  const FormSystem su3 = system_su3();
  const Mat r6 = matrix_R6();
  SECTION("the three published spaces pass at their levels") {
    auto w5 = restraining_check(space_W5(), su3, 3, {r6});
    REQUIRE(w5.pass);
    REQUIRE(w5.w_dim + w5.h_dim == 36);
    auto w14 = restraining_check(space_W14(), su3, 4, {r6});
    REQUIRE(w14.pass);
    auto w22 = restraining_check(space_W22(), su3, 5, {r6});
    REQUIRE(w22.pass);
  }
  SECTION("zero meets come with full joins") {
    auto [meet5, join5] = meet_join(space_W5(), polar_h(su3, 3));
    REQUIRE(meet5.dim() == 0);
    REQUIRE(join5 == Subspace::full(36));
    auto [meet14, join14] = meet_join(space_W14(), polar_h(su3, 4));
    REQUIRE(meet14.dim() == 0);
    REQUIRE(join14.dim() == 36);
  }
  SECTION("a space checked at the wrong level fails on dimensions") {
    auto rep = restraining_check(space_W5(), su3, 4, {r6});
    REQUIRE(rep.meet_dim == 0);  // W5 ∩ h_4 ⊆ W5 ∩ h_3 = 0
    REQUIRE_FALSE(rep.dims_complementary);
    REQUIRE_FALSE(rep.pass);
  }
}

TEST_CASE("restraining construction for the exceptional system") {
  const FormSystem g2 = system_g2();
  G2Restrainers w = build_g2_restrainers(g2);
  REQUIRE(w.w5.dim() == 5);
  REQUIRE(w.w15.dim() == 15);
  REQUIRE(w.w28.dim() == 28);
  REQUIRE(w.w15.contains(w.w5));
  REQUIRE(w.w28.contains(w.w15));
  SECTION("meets and complements at k = 4, 5, 6") {
    auto su2 = su2_in_g2().basis_matrices();
    REQUIRE(su2.size() == 3);
    REQUIRE(restraining_check(w.w5, g2, 4, {matrix_R7()}, su2).pass);
    REQUIRE(restraining_check(w.w15, g2, 5, {matrix_R7()}, su2).pass);
    REQUIRE(restraining_check(w.w28, g2, 6, {matrix_R7()}, su2).pass);
  }
  SECTION("complement of h_6 has dimension 28 with zero meet") {
    Subspace h6 = polar_h(g2, 6);
    Subspace comp = ortho_complement(h6);
    REQUIRE(comp.dim() == 28);
    REQUIRE(meet_join(comp, h6).first.dim() == 0);
  }
  SECTION("wrong system is rejected") {
    REQUIRE_THROWS_AS(build_g2_restrainers(system_su3()), std::invalid_argument);
  }
}
