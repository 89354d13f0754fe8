#include <calibkit/numeric.hpp>
#include <calibkit/stabilizer.hpp>

#include <catch2/catch_amalgamated.hpp>

using namespace calibkit;

TEST_CASE("stabilizer dimensions") {
  SECTION("the split Kaehler + complex-volume system has the 8-dimensional algebra") {
    Subspace g = stab_algebra(system_su3());
    REQUIRE(g.dim() == 8);
    REQUIRE(g == space_su(3));
    REQUIRE(bracket_closed(g));
  }
  SECTION("the Kaehler form alone has the 21-dimensional symplectic algebra") {
    Subspace sp = stab_algebra(system_omega_only());
    REQUIRE(sp.dim() == 21);
    REQUIRE(bracket_closed(sp));
    REQUIRE(sp.contains(stab_algebra(system_su3())));
    REQUIRE_FALSE(all_skew(sp));
  }
  SECTION("the associative form has the 14-dimensional exceptional algebra") {
    Subspace g = stab_algebra(FormSystem(7, "phi-only", {phi0()}));
    REQUIRE(g.dim() == 14);
    REQUIRE(bracket_closed(g));
    REQUIRE(all_skew(g));
    REQUIRE(stab_algebra(system_g2()) == g);
  }
  SECTION("the quaternionic 4-form has the 13-dimensional algebra") {
    Subspace g = stab_algebra(system_sp2sp1());
    REQUIRE(g.dim() == 13);
    REQUIRE(bracket_closed(g));
    REQUIRE(all_skew(g));
  }
  SECTION("the interleaved presentation has the conjugate 8-dimensional algebra") {
    Subspace g = stab_algebra(system_su3_star());
    REQUIRE(g.dim() == 8);
    REQUIRE(g == space_su_star(3));
  }
}

TEST_CASE("exponentials of the stabilizer preserve the generators") {
  for (const auto& sys : {system_su3(), system_g2()}) {
    Subspace g = stab_algebra(sys);
    for (const auto& x : g.basis_matrices()) {
      MatD gx = expm(to_double(x));
      for (const auto& form : sys.generators) {
        AltFormD f = to_double(form);
        REQUIRE(max_abs_coefficient(pullback(gx, f) - f) < 1e-10);
      }
    }
  }
}

TEST_CASE("symbol ranks") {
  REQUIRE(symbol_rank(system_su3()) == 42);
  REQUIRE(symbol_rank(system_g2()) == 49);
  REQUIRE(symbol_rank(system_su3_star()) == 42);
  SECTION("the quaternionic closure map has rank 56, bounded by C(8,5)") {
    std::size_t r = symbol_rank(system_sp2sp1());
    REQUIRE(r == 56);
    REQUIRE(r <= 56);
    REQUIRE(r < 120);
  }
}

TEST_CASE("strong admissibility verdicts") {
  SECTION("split presentation") {
    auto rep = strong_admissibility(system_su3());
    REQUIRE(rep.strongly_admissible);
    REQUIRE(rep.rank == 42);
    REQUIRE(rep.expected_rank == 6 * (15 - 8));
    REQUIRE(rep.kernel_dim == rep.expected_kernel);
    REQUIRE(rep.kernel_dim == 6 * 8 + 36 * 7 / 2);
  }
  SECTION("exceptional system") {
    auto rep = strong_admissibility(system_g2());
    REQUIRE(rep.strongly_admissible);
    REQUIRE(rep.rank == 49);
    REQUIRE(rep.expected_rank == 7 * (21 - 14));
    REQUIRE(rep.kernel_dim == 7 * 14 + 49 * 8 / 2);
  }
  SECTION("quaternionic system fails") {
    auto rep = strong_admissibility(system_sp2sp1());
    REQUIRE_FALSE(rep.strongly_admissible);
    REQUIRE(rep.expected_rank == 8 * (28 - 13));
    REQUIRE(rep.rank < rep.expected_rank);
  }
  SECTION("non-skew stabilizer violates the precondition") {
    REQUIRE_THROWS_AS(strong_admissibility(system_omega_only()), std::invalid_argument);
  }
}

TEST_CASE("symbol-map kernel families") {
  // the kernel always contains g ⊗ (R^n)* and the symmetric family
  // {X : X(e_i) e_j = X(e_j) e_i}; with a skew stabilizer this pins
  // rank <= n^3 - (n·dim g + n^2(n+1)/2), an equality in the strongly
  // admissible cases and strict for the quaternionic form.
  struct Case {
    FormSystem sys;
    bool equality;
  };
  const Case cases[] = {{system_su3(), true}, {system_g2(), true}, {system_sp2sp1(), false}};
  for (const auto& c : cases) {
    const std::size_t n = static_cast<std::size_t>(c.sys.dim);
    Subspace g = stab_algebra(c.sys);
    const std::size_t bound = n * n * n - (n * g.dim() + n * n * (n + 1) / 2);
    const std::size_t rank = symbol_rank(c.sys);
    REQUIRE(rank <= bound);
    if (c.equality)
      REQUIRE(rank == bound);
    else
      REQUIRE(rank < bound);
  }

  SECTION("symmetric tensors map to zero") {
    // X(e_i) = matrix with entries X(e_i)(k, j) = c_{kij}, c symmetric in (i, j):
    // Phi(X) = sum_i dx^i ∧ (X(e_i)·α) vanishes for every form
    Rng rng(103);
    const FormSystem sys = system_g2();
    const int n = sys.dim;
    for (int trial = 0; trial < 3; ++trial) {
      std::vector<Mat> xs(n, Mat(n, n));
      for (int k = 0; k < n; ++k)
        for (int i = 0; i < n; ++i)
          for (int j = i; j < n; ++j) {
            Rational c(static_cast<int>(rng.uniform(-3.0, 4.0)));
            xs[i](k, j) = c;
            xs[j](k, i) = c;
          }
      for (const auto& alpha : sys.generators) {
        AltForm total(n, alpha.degree() + 1);
        for (int i = 1; i <= n; ++i)
          total = total + wedge(AltForm::monomial(n, {i}), inf_action(xs[i - 1], alpha));
        REQUIRE(total.is_zero());
      }
    }
  }
}

TEST_CASE("system registry") {
  REQUIRE(system_by_name("su3").name == "su3");
  REQUIRE(system_by_name("g2").dim == 7);
  REQUIRE(system_by_name("sp2sp1").dim == 8);
  REQUIRE_THROWS_AS(system_by_name("bogus"), std::invalid_argument);
}
