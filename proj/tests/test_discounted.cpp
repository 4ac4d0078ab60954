#include <algorithm>

#include "doctest.h"

#include "cmstoch/discounted.hpp"
#include "cmstoch/errors.hpp"
#include "cmstoch/fixtures.hpp"
#include "support.hpp"

using namespace cmstoch;

namespace {

const Rational kHalf(1, 2);

std::vector<std::size_t> counts(const StochasticGame& g, Player p) {
  std::vector<std::size_t> out;
  for (std::size_t s = 0; s < g.state_count(); ++s) {
    out.push_back(p == Player::kOne ? g.actions_p1(s) : g.actions_p2(s));
  }
  return out;
}

}  // namespace

TEST_SUITE("discounted") {
  TEST_CASE("discount factor range") {
    CHECK_NOTHROW(Discount(0));
    CHECK_NOTHROW(Discount(Rational(999, 1000)));
    CHECK_THROWS_AS(Discount(1), ValidationError);
    CHECK_THROWS_AS(Discount(-kHalf), ValidationError);
  }

  TEST_CASE("two-state fixture: closed form on the grid") {
    const StochasticGame g = fixtures::game("example9");
    for (const Rational& beta : {kHalf, Rational(3, 4), Rational(9, 10), Rational(99, 100),
                                 Rational(999, 1000)}) {
      const DiscountedSolution s = solve_discounted_exact(g, Discount(beta));
      CAPTURE(to_string(beta));
      CHECK(s.exact);
      CHECK(s.residual == 0);
      CHECK(s.values[0] == beta / (1 - beta) + Rational(3, 2));
      CHECK(s.values[1] == 1 / (1 - beta));
      CHECK(shapley_operator(g, Discount(beta), s.values) == s.values);
    }
    const Discount half(kHalf);
    const DiscountedSolution s = solve_discounted_exact(g, half);
    CHECK(s.values == Vec{Rational(5, 2), 2});
    CHECK(auxiliary_matrix(g, 0, half, s.values) == Matrix{{1, 3}, {4, 2}});
    CHECK(auxiliary_matrix(g, 0, half, s.values) ==
          oracle::auxiliary(g, 0, kHalf, s.values));
  }

  TEST_CASE("symmetric fixture: v_beta = 1/(1-beta)") {
    const StochasticGame g = fixtures::game("example14");
    for (const Rational& beta : {kHalf, Rational(9, 10), Rational(999, 1000)}) {
      const DiscountedSolution s = solve_discounted_exact(g, Discount(beta));
      CHECK(s.values == Vec{1 / (1 - beta), 1 / (1 - beta)});
      CHECK(s.p1_strategy.probs == std::vector<Vec>(2, Vec{kHalf, kHalf}));
      CHECK(s.p2_strategy.probs == std::vector<Vec>(2, Vec{kHalf, kHalf}));
    }
  }

  TEST_CASE("beta = 0 reduces to the one-shot games") {
    const StochasticGame g = fixtures::game("example15");
    const DiscountedSolution s = solve_discounted_exact(g, Discount(0));
    CHECK(s.values == Vec{2, 1, 0});
    const DiscountedSolution it = shapley_iterate(g, Discount(0), default_tolerance());
    CHECK(it.values == Vec{2, 1, 0});
  }

  TEST_CASE("exact value is the fixed point of the oracle's Shapley map") {
    gen::Rng rng(55);
    for (int trial = 0; trial < 40; ++trial) {
      const StochasticGame g = gen::single_controller_game(rng, 3, 3, -5, 5);
      const Rational beta(3, 4);
      const DiscountedSolution s = solve_discounted_exact(g, Discount(beta));
      for (std::size_t st = 0; st < g.state_count(); ++st) {
        CHECK(oracle::game_value(oracle::auxiliary(g, st, beta, s.values)) == s.values[st]);
      }
    }
  }

  TEST_CASE("optimal strategies resist every pure deviation") {
    gen::Rng rng(56);
    for (int trial = 0; trial < 30; ++trial) {
      const StochasticGame g = gen::single_controller_game(rng, 3, 3, -5, 5);
      const Rational beta(2, 3);
      const DiscountedSolution s = solve_discounted_exact(g, Discount(beta));
      CHECK(oracle::discounted_payoff(g, s.p1_strategy, s.p2_strategy, beta) == s.values);
      CHECK(discounted_payoff(g, s.p1_strategy, s.p2_strategy, Discount(beta)) == s.values);
      for (const auto& a : oracle::all_pure_policies(counts(g, Player::kOne))) {
        const Vec v = oracle::discounted_payoff(g, pure_strategy(g, Player::kOne, a),
                                                s.p2_strategy, beta);
        for (std::size_t st = 0; st < v.size(); ++st) CHECK(v[st] <= s.values[st]);
      }
      for (const auto& a : oracle::all_pure_policies(counts(g, Player::kTwo))) {
        const Vec v = oracle::discounted_payoff(g, s.p1_strategy,
                                                pure_strategy(g, Player::kTwo, a), beta);
        for (std::size_t st = 0; st < v.size(); ++st) CHECK(v[st] >= s.values[st]);
      }
    }
  }

  TEST_CASE("Shapley operator is a beta-contraction") {
    gen::Rng rng(57);
    for (int trial = 0; trial < 30; ++trial) {
      const StochasticGame g = gen::single_controller_game(rng, 3, 3, -5, 5);
      const Rational beta(4, 5);
      const Discount d(beta);
      const std::size_t k = g.state_count();
      const Vec u = gen::integer_matrix(rng, k, 1, -9, 9).column(0);
      const Vec w = gen::integer_matrix(rng, k, 1, -9, 9).column(0);
      CHECK(max_abs_diff(shapley_operator(g, d, u), shapley_operator(g, d, w)) <=
            beta * max_abs_diff(u, w));
    }
  }

  TEST_CASE("Shapley iteration lands within tolerance of the exact value") {
    gen::Rng rng(58);
    const Rational tol(1, 1000000);
    for (int trial = 0; trial < 20; ++trial) {
      const StochasticGame g = gen::single_controller_game(rng, 3, 3, -5, 5);
      for (const Rational& beta : {kHalf, Rational(9, 10)}) {
        const DiscountedSolution exact = solve_discounted_exact(g, Discount(beta));
        const DiscountedSolution it = shapley_iterate(g, Discount(beta), tol);
        CHECK_FALSE(it.exact);
        CHECK(max_abs_diff(exact.values, it.values) <= tol);
        CHECK(it.iterations <= it.iteration_bound);
      }
    }
  }

  TEST_CASE("iteration also handles games without a single controller") {
    const StochasticGame g(
        {Matrix{{1, 0}, {0, 1}}, Matrix{{2}}},
        {{Vec{1, 0}, Vec{0, 1}, Vec{0, 1}, Vec{1, 0}}, {Vec{kHalf, kHalf}}});
    CHECK(detect_controller(g) == Controller::kNone);
    CHECK_THROWS_AS(solve_discounted_exact(g, Discount(kHalf)), ControllerMismatch);
    const Rational tol(1, 1000000);
    const DiscountedSolution it = shapley_iterate(g, Discount(kHalf), tol);
    CHECK(max_abs_diff(shapley_operator(g, Discount(kHalf), it.values), it.values) <= tol);
  }

  TEST_CASE("normalized values") {
    const StochasticGame g = fixtures::game("example14");
    const DiscountedSolution s = solve_discounted_exact(g, Discount(Rational(9, 10)));
    CHECK(normalized_values(s) == Vec{1, 1});
  }
}
