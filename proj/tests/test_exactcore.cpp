#include <calibkit/catalog.hpp>
#include <calibkit/matrix.hpp>
#include <calibkit/rational.hpp>
#include <calibkit/subspace.hpp>

#include <calibkit/numeric.hpp>  // Rng for generators

#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <numeric>

using namespace calibkit;

namespace {

Rational random_rational(Rng& rng) {
  const int num = static_cast<int>(rng.uniform(-9.0, 10.0));
  const int den = 1 + static_cast<int>(rng.uniform(0.0, 9.0));
  return Rational(num, den);
}

Mat random_matrix(Rng& rng, std::size_t rows, std::size_t cols) {
  Mat m(rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = random_rational(rng);
  return m;
}

// Independent rank oracle: plain rational Gauss elimination, visiting the rows
// in a caller-chosen order, no shared code with the fraction-free path.
std::size_t rank_oracle(const Mat& a, const std::vector<std::size_t>& row_order) {
  std::vector<std::vector<Rational>> rows;
  for (std::size_t i : row_order) {
    std::vector<Rational> r(a.cols());
    for (std::size_t j = 0; j < a.cols(); ++j) r[j] = a(i, j);
    rows.push_back(std::move(r));
  }
  std::size_t rank = 0;
  for (std::size_t c = 0; c < a.cols() && rank < rows.size(); ++c) {
    std::size_t sel = rows.size();
    for (std::size_t i = rank; i < rows.size(); ++i)
      if (rows[i][c] != 0) {
        sel = i;
        break;
      }
    if (sel == rows.size()) continue;
    std::swap(rows[rank], rows[sel]);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (i == rank || rows[i][c] == 0) continue;
      Rational f = rows[i][c] / rows[rank][c];
      for (std::size_t j = c; j < a.cols(); ++j) rows[i][j] -= f * rows[rank][j];
    }
    ++rank;
  }
  return rank;
}

}  // namespace

TEST_CASE("rational scalars are exact and normalized") {
  Rng rng(42);
  for (int i = 0; i < 200; ++i) {
    Rational a = random_rational(rng), b = random_rational(rng);
    // (a/b + c/d)·bd = ad + cb, phrased on raw integer parts
    BigInt an = numerator(a), ad = denominator(a);
    BigInt bn = numerator(b), bd = denominator(b);
    Rational sum = a + b;
    REQUIRE(sum * Rational(ad * bd) == Rational(an * bd + bn * ad));
    REQUIRE(denominator(sum) > 0);
    REQUIRE(boost::multiprecision::gcd(numerator(sum) < 0 ? BigInt(-numerator(sum))
                                                          : numerator(sum),
                                       denominator(sum)) == 1);
  }
  REQUIRE(to_string(Rational(3, 4)) == "3/4");
  REQUIRE(to_string(Rational(5)) == "5");
  REQUIRE(rational_from_string("-7/2") == Rational(-7, 2));
  REQUIRE_THROWS_AS(rational_from_string("x"), std::invalid_argument);
}

TEST_CASE("exact roots") {
  REQUIRE(exact_sqrt(Rational(9, 16)) == Rational(3, 4));
  REQUIRE_FALSE(exact_sqrt(Rational(2)).has_value());
  REQUIRE_FALSE(exact_sqrt(Rational(-4)).has_value());
  REQUIRE(exact_kth_root(Rational(27, 8), 3) == Rational(3, 2));
  REQUIRE(exact_kth_root(Rational(-27), 3) == Rational(-3));
  REQUIRE_FALSE(exact_kth_root(Rational(10), 3).has_value());
}

TEST_CASE("rank_nullspace on the identity") {
  auto [rank, null] = rank_nullspace(Mat::identity(3));
  REQUIRE(rank == 3);
  REQUIRE(null.dim() == 0);
}

TEST_CASE("rank_nullspace of the single defining functional of h_2") {
  // x^4_2 - x^5_1 as a row over M_6 flattened row-major
  Mat f(1, 36);
  f(0, 3 * 6 + 1) = 1;   // row 4, col 2
  f(0, 4 * 6 + 0) = -1;  // row 5, col 1
  auto [rank, null] = rank_nullspace(f);
  REQUIRE(rank == 1);
  REQUIRE(null.dim() == 35);
}

TEST_CASE("rank agrees with an independent elimination order") {
  Rng rng(7);
  for (int trial = 0; trial < 30; ++trial) {
    Mat a = random_matrix(rng, 5, 8);
    // plant some dependencies and dead columns
    if (trial % 2 == 0)
      for (std::size_t j = 0; j < 8; ++j) a(4, j) = a(0, j) + a(1, j);
    if (trial % 3 == 0)
      for (std::size_t i = 0; i < 5; ++i) a(i, 2) = 0;
    auto [rank, null] = rank_nullspace(a);
    REQUIRE(rank + null.dim() == 8);
    std::vector<std::size_t> order(5);
    std::iota(order.begin(), order.end(), 0);
    for (int shuffle = 0; shuffle < 3; ++shuffle) {
      std::swap(order[rng.next_u64() % 5], order[rng.next_u64() % 5]);
      REQUIRE(rank_oracle(a, order) == rank);
    }
    // every nullspace basis vector is annihilated
    for (const auto& v : null.basis()) {
      for (std::size_t i = 0; i < 5; ++i) {
        Rational dot(0);
        for (std::size_t j = 0; j < 8; ++j) dot += a(i, j) * v[j];
        REQUIRE(dot == 0);
      }
    }
  }
}

TEST_CASE("canonical form is idempotent and order-independent") {
  Rng rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<RationalRow> vecs;
    for (int i = 0; i < 6; ++i) {
      RationalRow v(9);
      for (auto& x : v) x = random_rational(rng);
      vecs.push_back(v);
    }
    Subspace s = Subspace::span(9, vecs);
    REQUIRE(Subspace::span(9, s.basis()) == s);
    std::reverse(vecs.begin(), vecs.end());
    REQUIRE(Subspace::span(9, vecs) == s);
  }
}

TEST_CASE("meet_join dimensions satisfy the modular identity") {
  SECTION("S = T") {
    Subspace w5 = space_W5();
    auto [meet, join] = meet_join(w5, w5);
    REQUIRE(meet == w5);
    REQUIRE(join == w5);
  }
  SECTION("random pairs") {
    Rng rng(13);
    for (int trial = 0; trial < 15; ++trial) {
      std::vector<RationalRow> u, v;
      for (int i = 0; i < 4; ++i) {
        RationalRow a(7), b(7);
        for (auto& x : a) x = random_rational(rng);
        for (auto& x : b) x = random_rational(rng);
        u.push_back(a);
        v.push_back(b);
      }
      Subspace s = Subspace::span(7, u), t = Subspace::span(7, v);
      auto [meet, join] = meet_join(s, t);
      REQUIRE(meet.dim() + join.dim() == s.dim() + t.dim());
      REQUIRE(s.contains(meet));
      REQUIRE(t.contains(meet));
      REQUIRE(join.contains(s));
      REQUIRE(join.contains(t));
    }
  }
  SECTION("ambient mismatch") {
    REQUIRE_THROWS_AS(meet_join(Subspace::full(3), Subspace::full(4)), std::invalid_argument);
  }
}

TEST_CASE("conj_invariant") {
  Subspace w5 = space_W5();
  REQUIRE(conj_invariant(w5, Mat::identity(6)));
  REQUIRE(conj_invariant(w5, matrix_R6()));
  REQUIRE(conj_invariant(space_W22(), matrix_R6()));
  SECTION("a generic conjugation moves W5") {
    Mat g = Mat::identity(6);
    g(0, 1) = 1;
    REQUIRE_FALSE(conj_invariant(w5, g));
  }
  SECTION("singular conjugator") {
    Mat z(6, 6);
    REQUIRE_THROWS_AS(conj_invariant(w5, z), std::invalid_argument);
  }
}

TEST_CASE("ortho_complement under the trace pairing") {
  SECTION("full space") {
    REQUIRE(ortho_complement(Subspace::full(9)).dim() == 0);
    REQUIRE(ortho_complement(Subspace::zero(9)) == Subspace::full(9));
  }
  SECTION("skew matrices in M_3 complement the symmetric ones") {
    std::vector<Mat> skew, sym;
    for (int i = 0; i < 3; ++i)
      for (int j = i; j < 3; ++j) {
        Mat m(3, 3);
        if (i == j) {
          m(i, i) = 1;
          sym.push_back(m);
        } else {
          m(i, j) = 1;
          m(j, i) = 1;
          sym.push_back(m);
          Mat k(3, 3);
          k(i, j) = 1;
          k(j, i) = -1;
          skew.push_back(k);
        }
      }
    REQUIRE(ortho_complement(Subspace::span_matrices(skew)) == Subspace::span_matrices(sym));
  }
  SECTION("involution and zero meet on random subspaces") {
    Rng rng(17);
    for (int trial = 0; trial < 10; ++trial) {
      std::vector<RationalRow> vecs;
      for (int i = 0; i < 3; ++i) {
        RationalRow v(8);
        for (auto& x : v) x = random_rational(rng);
        vecs.push_back(v);
      }
      Subspace s = Subspace::span(8, vecs);
      Subspace c = ortho_complement(s);
      REQUIRE(s.dim() + c.dim() == 8);
      REQUIRE(meet_join(s, c).first.dim() == 0);
      REQUIRE(ortho_complement(c) == s);
    }
  }
}

TEST_CASE("matrix inverse and determinant") {
  Rng rng(23);
  for (int trial = 0; trial < 10; ++trial) {
    Mat a = random_matrix(rng, 4, 4);
    Rational d = determinant(a);
    auto inv = inverse(a);
    if (d == 0) {
      REQUIRE_FALSE(inv.has_value());
    } else {
      REQUIRE(inv.has_value());
      REQUIRE((a * *inv) == Mat::identity(4));
      REQUIRE(determinant(*inv) * d == 1);
    }
  }
  Mat sing(2, 2);
  sing(0, 0) = 1;
  sing(1, 0) = 2;  // rank 1
  REQUIRE(determinant(sing) == 0);
  REQUIRE_FALSE(inverse(sing).has_value());
}
