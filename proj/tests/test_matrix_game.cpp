#include <algorithm>

#include "doctest.h"

#include "cmstoch/errors.hpp"
#include "cmstoch/matrix_game.hpp"
#include "support.hpp"

using namespace cmstoch;

namespace {

const Rational kHalf(1, 2);

std::vector<Vec> sorted(std::vector<Vec> v) {
  std::sort(v.begin(), v.end());
  return v;
}

Matrix random_matrix(gen::Rng& rng) {
  std::uniform_int_distribution<std::size_t> dims(1, 3);
  return gen::integer_matrix(rng, dims(rng), dims(rng), -5, 5);
}

}  // namespace

TEST_SUITE("matrix_game") {
  TEST_CASE("completely mixed 2x2") {
    const MatrixGameSolution s = solve_matrix_game(Matrix{{1, 2}, {2, 1}});
    CHECK(s.value == Rational(3, 2));
    CHECK(s.completely_mixed);
    CHECK(s.p1_vertices == std::vector<Vec>{{kHalf, kHalf}});
    CHECK(s.p2_vertices == std::vector<Vec>{{kHalf, kHalf}});
    CHECK(s.certificate.reason == "completely mixed");
  }

  TEST_CASE("shifted matrix loses complete mixedness") {
    const MatrixGameSolution s = solve_matrix_game(Matrix{{2, 4}, {3, 3}});
    CHECK(s.value == 3);
    CHECK_FALSE(s.completely_mixed);
    CHECK(s.p1_vertices == std::vector<Vec>{{0, 1}});
    CHECK(s.p2_vertices == std::vector<Vec>{{1, 0}, {kHalf, kHalf}});
    CHECK_FALSE(s.certificate.p1_positive);
    CHECK_FALSE(s.certificate.p2_unique);
  }

  TEST_CASE("constant matrix has a segment of optima") {
    const MatrixGameSolution s = solve_matrix_game(Matrix{{1, 1}, {1, 1}});
    CHECK(s.value == 1);
    CHECK(s.p1_vertices.size() == 2);
    CHECK_FALSE(s.completely_mixed);
  }

  TEST_CASE("non-square matrices are never completely mixed") {
    const MatrixGameSolution s = solve_matrix_game(Matrix{{1, 0, 2}, {0, 1, 2}});
    CHECK_FALSE(s.completely_mixed);
    CHECK_FALSE(s.certificate.square);
    CHECK(s.value == kHalf);
  }

  TEST_CASE("1x1 game") {
    const MatrixGameSolution s = solve_matrix_game(Matrix{{-7}});
    CHECK(s.value == -7);
    CHECK(s.completely_mixed);
  }

  TEST_CASE("value and vertex sets match kernel enumeration") {
    gen::Rng rng(2024);
    for (int trial = 0; trial < 150; ++trial) {
      const Matrix m = random_matrix(rng);
      const oracle::KernelEnumeration k = oracle::enumerate_kernels(m);
      const MatrixGameSolution s = solve_matrix_game(m);
      CAPTURE(trial);
      REQUIRE(s.value == k.value);
      CHECK(sorted(s.p1_vertices) == k.p1);
      CHECK(sorted(s.p2_vertices) == k.p2);
      CHECK(s.completely_mixed == oracle::completely_mixed(m));
    }
  }

  TEST_CASE("canonical vertex order is lexicographically descending") {
    const MatrixGameSolution s = solve_matrix_game(Matrix{{2, 4}, {3, 3}});
    CHECK(std::is_sorted(s.p2_vertices.rbegin(), s.p2_vertices.rend()));
  }

  TEST_CASE("strong duality at every listed vertex pair") {
    gen::Rng rng(77);
    for (int trial = 0; trial < 100; ++trial) {
      const Matrix m = random_matrix(rng);
      const MatrixGameSolution s = solve_matrix_game(m);
      for (const Vec& x : s.p1_vertices) {
        const Vec xm = left_multiply(x, m);
        CHECK(*std::min_element(xm.begin(), xm.end()) == s.value);
      }
      for (const Vec& y : s.p2_vertices) {
        const Vec my = m * y;
        CHECK(*std::max_element(my.begin(), my.end()) == s.value);
      }
    }
  }

  TEST_CASE("value is invariant under positive scaling and shifts") {
    gen::Rng rng(3);
    for (int trial = 0; trial < 60; ++trial) {
      const Matrix m = random_matrix(rng);
      const Rational v = matrix_game_value(m);
      Matrix shifted = m;
      for (std::size_t i = 0; i < m.rows(); ++i) {
        for (std::size_t j = 0; j < m.cols(); ++j) shifted(i, j) += Rational(7, 3);
      }
      CHECK(matrix_game_value(Rational(5, 2) * m) == Rational(5, 2) * v);
      CHECK(matrix_game_value(shifted) == v + Rational(7, 3));
      CHECK(is_completely_mixed(shifted).completely_mixed ==
            is_completely_mixed(m).completely_mixed);
    }
  }

  TEST_CASE("vertex enumeration guard") {
    const Matrix m{{1, 1}, {1, 1}};
    CHECK_THROWS_AS(enumerate_optimal_vertices(m, 1, 1), GuardExceeded);
  }
}

TEST_SUITE("kaplansky") {
  TEST_CASE("formula on the completely mixed example") {
    const KaplanskyResult k = kaplansky_value(Matrix{{1, 2}, {2, 1}});
    CHECK(k.status == KaplanskyStatus::kOk);
    CHECK(k.value == Rational(3, 2));
    CHECK(k.determinant == -3);
    CHECK(k.cofactor_sum == -2);
  }

  TEST_CASE("statuses") {
    CHECK(kaplansky_value(Matrix{{2, 4}, {3, 3}}).status ==
          KaplanskyStatus::kNotCompletelyMixed);
    CHECK(kaplansky_value(Matrix{{1, -1}, {-1, 1}}).status ==
          KaplanskyStatus::kValueZero);
    CHECK(kaplansky_value(Matrix{{1, 2, 3}}).status ==
          KaplanskyStatus::kNotCompletelyMixed);
  }

  TEST_CASE("formula matches the LP value on random symmetric matrices") {
    gen::Rng rng(99);
    int completely_mixed = 0;
    for (int trial = 0; trial < 200; ++trial) {
      const std::size_t n = 2 + trial % 2;
      Matrix m = gen::integer_matrix(rng, n, n, 1, 9);
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < i; ++j) m(i, j) = m(j, i);
      }
      const KaplanskyResult k = kaplansky_value(m);
      if (k.status != KaplanskyStatus::kOk) continue;
      ++completely_mixed;
      CHECK(k.value == matrix_game_value(m));
      CHECK(k.value == oracle::game_value(m));
    }
    CHECK(completely_mixed > 10);
  }
}

TEST_SUITE("equalizer") {
  TEST_CASE("completely mixed minimizer forces an equalizing maximizer") {
    gen::Rng rng(4);
    int hits = 0;
    for (int trial = 0; trial < 200; ++trial) {
      const std::size_t n = 2 + trial % 2;
      const Matrix m = gen::integer_matrix(rng, n, n, -5, 5);
      const MatrixGameSolution s = solve_matrix_game(m);
      for (const Vec& y : s.p2_vertices) {
        if (!std::all_of(y.begin(), y.end(), [](const Rational& p) { return p > 0; })) {
          continue;
        }
        ++hits;
        for (const Vec& x : s.p1_vertices) {
          const EqualizerResult e = equalizer_check(m, x, y, s.value);
          CHECK(e.equalized);
          CHECK(e.x_optimal);
          CHECK(e.y_optimal);
        }
      }
    }
    CHECK(hits > 10);
  }

  TEST_CASE("violating column is reported") {
    const Matrix m{{2, 4}, {3, 3}};
    const EqualizerResult e = equalizer_check(m, Vec{0, 1}, Vec{1, 0}, 3);
    CHECK(e.equalized);
    const EqualizerResult bad = equalizer_check(m, Vec{kHalf, kHalf}, Vec{1, 0}, 3);
    CHECK_FALSE(bad.equalized);
    CHECK(bad.violating_column == std::optional<std::size_t>(0));
    CHECK_FALSE(bad.x_optimal);
  }
}

TEST_SUITE("lemma2") {
  TEST_CASE("column shift") {
    CHECK(column_shift(Matrix{{1, 2}, {2, 1}}, Vec{1, 2}) == Matrix{{2, 4}, {3, 3}});
    CHECK_THROWS_AS(column_shift(Matrix{{1, 2}, {2, 1}}, Vec{-1, 0}), ValidationError);
    CHECK_THROWS_AS(column_shift(Matrix{{1, 2}, {2, 1}}, Vec{1}), ValidationError);
  }

  TEST_CASE("counterexample is not applicable") {
    const Lemma2Result r = lemma2_reduce(Matrix{{1, 2}, {2, 1}}, Vec{1, 2});
    CHECK_FALSE(r.applicable);
    CHECK(r.shifted_value == 3);
    CHECK_FALSE(r.shifted_certificate.p1_positive);
  }

  TEST_CASE("preconditions") {
    CHECK_THROWS_AS(lemma2_reduce(Matrix{{1, 2}, {3, 1}}, Vec{0, 0}), ValidationError);
    CHECK_THROWS_AS(lemma2_reduce(Matrix{{0, 2}, {2, 1}}, Vec{0, 0}), ValidationError);
  }

  TEST_CASE("conclusion holds whenever the shifted game is completely mixed") {
    gen::Rng rng(12);
    int applicable = 0;
    for (int trial = 0; trial < 300; ++trial) {
      const std::size_t n = 2 + trial % 2;
      Matrix a = gen::integer_matrix(rng, n, n, 1, 6);
      for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t j = 0; j < i; ++j) a(i, j) = a(j, i);
      }
      Vec b(n);
      std::uniform_int_distribution<int> d(0, 3);
      for (auto& x : b) x = d(rng);
      const Lemma2Result r = lemma2_reduce(a, b);
      if (!r.applicable) continue;
      ++applicable;
      CHECK(r.a_completely_mixed);
      CHECK(r.equalizes);
      CHECK(r.a_nonsingular);
      CHECK(r.delta == matrix_game_value(a));
    }
    CHECK(applicable > 10);
  }
}
