#include <string>

#include "doctest.h"

#include "cmstoch/errors.hpp"
#include "cmstoch/fixtures.hpp"
#include "cmstoch/game_io.hpp"
#include "cmstoch/linalg.hpp"
#include "cmstoch/lp.hpp"
#include "support.hpp"

using namespace cmstoch;

TEST_SUITE("rational") {
  TEST_CASE("parse and print round trip") {
    CHECK(parse_rational("3/2") == Rational(3, 2));
    CHECK(parse_rational("-4/6") == Rational(-2, 3));
    CHECK(parse_rational(" 7 ") == 7);
    CHECK(to_string(parse_rational("6/4")) == "3/2");
    CHECK(to_string(Rational(-5)) == "-5");
    CHECK(to_string(parse_rational("0/9")) == "0");
  }

  TEST_CASE("malformed rationals are parse errors") {
    CHECK_THROWS_AS(parse_rational(""), ParseError);
    CHECK_THROWS_AS(parse_rational("1/0"), ParseError);
    CHECK_THROWS_AS(parse_rational("1.5"), ParseError);
    CHECK_THROWS_AS(parse_rational("a/b"), ParseError);
  }

  TEST_CASE("simplest rational in an interval") {
    CHECK(simplest_in_interval(Rational(-1, 3), Rational(1, 5)) == 0);
    CHECK(simplest_in_interval(Rational(3, 10), Rational(4, 10)) == Rational(1, 3));
    CHECK(simplest_in_interval(Rational(-4, 10), Rational(-3, 10)) == Rational(-1, 3));
    CHECK(simplest_in_interval(Rational(5, 2), Rational(5, 2)) == Rational(5, 2));
    CHECK(simplest_in_interval(Rational(2), Rational(3)) == 2);
    const Rational near = 1 + pow2_neg(30);
    CHECK(simplest_in_interval(near - pow2_neg(20), near + pow2_neg(20)) == 1);
  }

  TEST_CASE("pow2_neg") {
    CHECK(pow2_neg(0) == 1);
    CHECK(pow2_neg(10) == Rational(1, 1024));
  }
}

TEST_SUITE("linalg") {
  TEST_CASE("determinant, cofactors and rank") {
    const Matrix a{{1, 2}, {2, 1}};
    CHECK(determinant(a) == -3);
    CHECK(cofactor(a, 0, 1) == -2);
    CHECK(rank(a) == 2);
    CHECK(rank(Matrix{{1, 2}, {2, 4}}) == 1);
    CHECK(determinant(Matrix{{2, 0, 1}, {1, 3, 2}, {1, 1, 2}}) == 6);
  }

  TEST_CASE("solve_unique agrees with the oracle on random systems") {
    gen::Rng rng(11);
    for (int trial = 0; trial < 50; ++trial) {
      const Matrix a = gen::integer_matrix(rng, 3, 3, -3, 3);
      const Vec b{1, -2, 3};
      std::vector<Vec> rows;
      for (std::size_t r = 0; r < 3; ++r) rows.push_back(a.row(r));
      const auto expected = oracle::solve(rows, b);
      const auto got = solve_unique(a, b);
      REQUIRE(got.has_value() == expected.has_value());
      if (got) CHECK(*got == *expected);
      CHECK(got.has_value() == (determinant(a) != 0));
    }
  }

  TEST_CASE("overdetermined consistent systems") {
    const Matrix a{{1, 0}, {0, 1}, {1, 1}};
    CHECK(solve_unique(a, Vec{1, 2, 3}) == Vec{1, 2});
    CHECK_FALSE(solve_unique(a, Vec{1, 2, 4}).has_value());
  }
}

TEST_SUITE("lp") {
  using namespace cmstoch::lp;

  TEST_CASE("textbook maximum") {
    Problem p;
    auto x = p.add_variable();
    auto y = p.add_variable();
    p.add_constraint({{x, 1}, {y, 1}}, Relation::kLessEqual, 4);
    p.add_constraint({{x, 1}, {y, 3}}, Relation::kLessEqual, 6);
    p.maximize({{x, 3}, {y, 2}});
    const Solution s = solve(p);
    REQUIRE(s.status == Status::kOptimal);
    CHECK(s.objective == 12);
    CHECK(s.values == Vec{4, 0});
  }

  TEST_CASE("equalities, >= rows and free variables") {
    Problem p;
    auto x = p.add_variable(true);
    auto y = p.add_variable();
    p.add_constraint({{x, 1}, {y, 1}}, Relation::kEqual, 1);
    p.add_constraint({{y, 1}}, Relation::kGreaterEqual, 3);
    p.minimize({{x, 1}, {y, 2}});
    const Solution s = solve(p);
    REQUIRE(s.status == Status::kOptimal);
    CHECK(s.values == Vec{-2, 3});
    CHECK(s.objective == 4);
  }

  TEST_CASE("infeasible and unbounded") {
    Problem infeasible;
    auto x = infeasible.add_variable();
    infeasible.add_constraint({{x, 1}}, Relation::kLessEqual, -1);
    infeasible.maximize({{x, 1}});
    CHECK(solve(infeasible).status == Status::kInfeasible);

    Problem unbounded;
    auto y = unbounded.add_variable();
    unbounded.add_constraint({{y, -1}}, Relation::kLessEqual, 1);
    unbounded.maximize({{y, 1}});
    CHECK(solve(unbounded).status == Status::kUnbounded);
  }

  TEST_CASE("Bland's rule terminates on a cycling instance") {
    // Beale's example cycles under the largest-coefficient rule.
    Problem p;
    std::vector<std::size_t> x;
    for (int k = 0; k < 4; ++k) x.push_back(p.add_variable());
    p.add_constraint({{x[0], Rational(1, 4)}, {x[1], -60}, {x[2], Rational(-1, 25)}, {x[3], 9}},
                     Relation::kLessEqual, 0);
    p.add_constraint({{x[0], Rational(1, 2)}, {x[1], -90}, {x[2], Rational(-1, 50)}, {x[3], 3}},
                     Relation::kLessEqual, 0);
    p.add_constraint({{x[2], 1}}, Relation::kLessEqual, 1);
    p.maximize({{x[0], Rational(3, 4)}, {x[1], -150}, {x[2], Rational(1, 50)}, {x[3], -6}});
    const Solution s = solve(p);
    REQUIRE(s.status == Status::kOptimal);
    CHECK(s.objective == Rational(1, 20));
  }

  TEST_CASE("redundant equality rows") {
    Problem p;
    auto x = p.add_variable();
    auto y = p.add_variable();
    p.add_constraint({{x, 1}, {y, 1}}, Relation::kEqual, 2);
    p.add_constraint({{x, 2}, {y, 2}}, Relation::kEqual, 4);
    p.maximize({{x, 1}});
    const Solution s = solve(p);
    REQUIRE(s.status == Status::kOptimal);
    CHECK(s.objective == 2);
  }
}

TEST_SUITE("game") {
  const char* kTwoState = R"({
    "states": 2, "actions_p1": [1, 1], "actions_p2": [2, 1],
    "payoff": {"s1": [["1", "-1/2"]], "s2": [["0"]]},
    "transitions": {"s1": {"1,1": ["1/2", "1/2"], "1,2": ["0", "1"]},
                    "s2": {"1,1": ["0", "1"]}}})";

  TEST_CASE("parse, controller detection, serialize round trip") {
    const StochasticGame g = parse_game(kTwoState);
    CHECK(g.state_count() == 2);
    CHECK(g.actions_p2(0) == 2);
    CHECK(g.payoff(0)(0, 1) == Rational(-1, 2));
    CHECK(g.player_two_controlled());
    CHECK(parse_game(serialize_game(g)) == g);
    CHECK(serialize_game(parse_game(serialize_game(g))) == serialize_game(g));
  }

  TEST_CASE("fixture controllers") {
    CHECK(detect_controller(fixtures::game("example9")) == Controller::kBoth);
    CHECK(detect_controller(fixtures::game("example14")) == Controller::kPlayerTwo);
    CHECK(detect_controller(fixtures::game("example15")) == Controller::kPlayerTwo);
    for (const auto& name : fixtures::names()) {
      if (name == "lemma2") continue;
      const StochasticGame g = fixtures::game(name);
      CHECK(parse_game(serialize_game(g)) == g);
    }
  }

  TEST_CASE("random games survive a round trip") {
    gen::Rng rng(5);
    for (int k = 0; k < 20; ++k) {
      const StochasticGame g = gen::single_controller_game(rng, 3, 3, -5, 5);
      CHECK(parse_game(serialize_game(g)) == g);
    }
  }

  TEST_CASE("player-1 control is detected") {
    const StochasticGame g({Matrix{{0, 0}, {0, 0}}},
                           {{Vec{1}, Vec{1}, Vec{1}, Vec{1}}});
    CHECK(detect_controller(g) == Controller::kBoth);
    const StochasticGame h(
        {Matrix{{0, 0}, {0, 0}}, Matrix{{0}}},
        {{Vec{1, 0}, Vec{1, 0}, Vec{0, 1}, Vec{0, 1}}, {Vec{0, 1}}});
    CHECK(detect_controller(h) == Controller::kPlayerOne);
    CHECK_FALSE(h.player_two_controlled());
    CHECK_THROWS_AS(require_player_two_control(h, "test"), ControllerMismatch);
  }

  TEST_CASE("invalid games are rejected") {
    CHECK_THROWS_AS(parse_game(""), ParseError);
    CHECK_THROWS_AS(parse_game("{"), ParseError);
    CHECK_THROWS_AS(parse_game("[]"), ValidationError);
    CHECK_THROWS_AS(parse_game(R"({"states": 1})"), ValidationError);
    // Row does not sum to one.
    CHECK_THROWS_AS(StochasticGame({Matrix{{1}}}, {{Vec{Rational(1, 2)}}}),
                    ValidationError);
    // Negative probability.
    CHECK_THROWS_AS(StochasticGame({Matrix{{1}}, Matrix{{1}}},
                                   {{Vec{2, -1}}, {Vec{0, 1}}}),
                    ValidationError);
    // Wrong row length.
    CHECK_THROWS_AS(StochasticGame({Matrix{{1}}}, {{Vec{1, 0}}}), ValidationError);
    CHECK_THROWS_AS(StochasticGame({}, {}), ValidationError);
  }

  TEST_CASE("validation messages name the state and action pair") {
    std::string text = kTwoState;
    text.replace(text.find(R"("1,2": ["0", "1"])"), 17, R"("1,2": ["1", "1"])");
    try {
      parse_game(text);
      FAIL("expected a validation error");
    } catch (const ValidationError& e) {
      const std::string what = e.what();
      CHECK(what.find("s1") != std::string::npos);
      CHECK(what.find("1,2") != std::string::npos);
    }
  }

  TEST_CASE("strategies are validated") {
    const StochasticGame g = parse_game(kTwoState);
    StationaryStrategy ok{{{1}, {1}}};
    CHECK_NOTHROW(validate_strategy(g, ok, Player::kOne));
    StationaryStrategy short_one{{{1}}};
    CHECK_THROWS_AS(validate_strategy(g, short_one, Player::kOne), ValidationError);
    StationaryStrategy bad_sum{{{Rational(1, 2), Rational(1, 3)}, {1}}};
    CHECK_THROWS_AS(validate_strategy(g, bad_sum, Player::kTwo), ValidationError);
    CHECK_THROWS_AS(parse_strategy("{}"), ValidationError);
    CHECK(parse_strategy(R"([["1/2", "1/2"], [1]])").at(0)[0] == Rational(1, 2));
  }

  TEST_CASE("transition matrix and reward vector") {
    const StochasticGame g = parse_game(kTwoState);
    StationaryStrategy f{{{1}, {1}}};
    StationaryStrategy h{{{Rational(1, 2), Rational(1, 2)}, {1}}};
    CHECK(transition_matrix(g, h) ==
          Matrix{{Rational(1, 4), Rational(3, 4)}, {0, 1}});
    CHECK(reward_vector(g, f, h) == Vec{Rational(1, 4), 0});
  }
}
