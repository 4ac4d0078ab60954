#include "cmstoch/discounted.hpp"

#include <cmath>

#include "cmstoch/errors.hpp"
#include "cmstoch/lp.hpp"

namespace cmstoch {

Discount::Discount(Rational beta) : beta_(std::move(beta)) {
  if (beta_ < 0 || beta_ >= 1) {
    throw ValidationError("discount factor " + to_string(beta_) +
                          " is outside [0, 1)");
  }
}

Rational default_tolerance() { return Rational(1, 1'000'000'000); }

ValueVector discounted_payoff(const StochasticGame& game,
                              const StationaryStrategy& f,
                              const StationaryStrategy& g, const Discount& d) {
  require_player_two_control(game, "discounted_payoff");
  const std::size_t k = game.state_count();
  Matrix system = Matrix::identity(k) - d.beta() * transition_matrix(game, g);
  auto x = solve_unique(system, reward_vector(game, f, g));
  if (!x) throw InternalError("I - beta Q(g) is singular");
  return *x;
}

Matrix auxiliary_matrix(const StochasticGame& game, std::size_t state,
                        const Discount& d, const ValueVector& v) {
  if (v.size() != game.state_count()) {
    throw ValidationError("value vector length does not match the game");
  }
  Matrix aux = game.payoff(state);
  for (std::size_t i = 0; i < aux.rows(); ++i)
    for (std::size_t j = 0; j < aux.cols(); ++j)
      aux(i, j) += d.beta() * dot(game.transition(state, i, j), v);
  return aux;
}

ValueVector shapley_operator(const StochasticGame& game, const Discount& d,
                             const ValueVector& v) {
  ValueVector out(game.state_count());
  for (std::size_t s = 0; s < game.state_count(); ++s)
    out[s] = matrix_game_value(auxiliary_matrix(game, s, d, v));
  return out;
}

StationaryStrategy canonical_p1(const std::vector<MatrixGameSolution>& aux) {
  StationaryStrategy out;
  for (const auto& sol : aux) out.probs.push_back(sol.p1_vertices.front());
  return out;
}

StationaryStrategy canonical_p2(const std::vector<MatrixGameSolution>& aux) {
  StationaryStrategy out;
  for (const auto& sol : aux) out.probs.push_back(sol.p2_vertices.front());
  return out;
}

namespace {

Rational round_to_grid(const Rational& x, const mpz_class& grid) {
  Rational scaled = x * grid + Rational(1, 2);
  mpz_class n;
  mpz_fdiv_q(n.get_mpz_t(), scaled.get_num_mpz_t(), scaled.get_den_mpz_t());
  Rational out(n, grid);
  out.canonicalize();
  return out;
}

std::size_t iteration_bound(const StochasticGame& game, const Rational& beta,
                            const Rational& tol) {
  const double b = beta.get_d();
  if (b == 0) return 1;
  const double span = std::max(std::abs(game.min_payoff().get_d()),
                               std::abs(game.max_payoff().get_d()));
  if (span == 0) return 1;
  const double one_minus = 1 - b;
  const double bound =
      std::log(tol.get_d() * one_minus * one_minus / span) / std::log(b);
  return bound <= 1 ? 1 : static_cast<std::size_t>(std::ceil(bound));
}

std::vector<MatrixGameSolution> auxiliary_solutions(const StochasticGame& game,
                                                    const Discount& d,
                                                    const ValueVector& v) {
  std::vector<MatrixGameSolution> out;
  for (std::size_t s = 0; s < game.state_count(); ++s)
    out.push_back(solve_matrix_game(auxiliary_matrix(game, s, d, v)));
  return out;
}

}  // namespace

DiscountedSolution shapley_iterate(const StochasticGame& game,
                                   const Discount& d, const Rational& tol) {
  if (tol <= 0) throw ValidationError("tolerance must be positive");
  const Rational& beta = d.beta();
  const std::size_t k = game.state_count();

  DiscountedSolution out;
  out.beta = beta;
  out.iteration_bound = iteration_bound(game, beta, tol);

  ValueVector w(k);
  if (beta == 0) {
    w = shapley_operator(game, d, w);
    out.iterations = 1;
  } else {
    // Rounding error per step <= delta = tol (1 - beta) / 4; stopping at a
    // step change <= tol (1 - beta) / (2 beta) then gives a final error
    // <= tol.
    const Rational delta = tol * (1 - beta) / 4;
    mpz_class grid = 1;
    while (Rational(1, 2 * grid) > delta) grid *= 2;
    const Rational stop = tol * (1 - beta) / (2 * beta);
    const std::size_t cap = 10 * out.iteration_bound + 1000;
    for (;;) {
      ValueVector next = shapley_operator(game, d, w);
      for (auto& x : next) x = round_to_grid(x, grid);
      ++out.iterations;
      const Rational step = max_abs_diff(next, w);
      w = std::move(next);
      if (step <= stop) break;
      if (out.iterations > cap) {
        throw InternalError("Shapley iteration exceeded its iteration cap");
      }
    }
  }

  out.auxiliary = auxiliary_solutions(game, d, w);
  ValueVector tw(k);
  for (std::size_t s = 0; s < k; ++s) tw[s] = out.auxiliary[s].value;
  out.residual = max_abs_diff(w, tw);
  out.values = std::move(w);
  out.p1_strategy = canonical_p1(out.auxiliary);
  out.p2_strategy = canonical_p2(out.auxiliary);
  out.exact = false;
  return out;
}

DiscountedSolution solve_discounted_exact(const StochasticGame& game,
                                          const Discount& d) {
  require_player_two_control(game, "solve_discounted_exact");
  const std::size_t k = game.state_count();
  const Rational& beta = d.beta();

  // max sum v  s.t.  sum_i f(s,i) r(s,i,j) + beta q(.|s,j) . v >= v(s),
  //                  f(s) in the simplex.
  lp::Problem p;
  std::vector<std::size_t> v_var(k);
  for (std::size_t s = 0; s < k; ++s) v_var[s] = p.add_variable(/*free=*/true);
  std::vector<std::vector<std::size_t>> f_var(k);
  for (std::size_t s = 0; s < k; ++s) {
    lp::LinearExpr simplex;
    for (std::size_t i = 0; i < game.actions_p1(s); ++i) {
      f_var[s].push_back(p.add_variable());
      simplex.emplace_back(f_var[s].back(), 1);
    }
    p.add_constraint(std::move(simplex), lp::Relation::kEqual, 1);
  }
  for (std::size_t s = 0; s < k; ++s) {
    for (std::size_t j = 0; j < game.actions_p2(s); ++j) {
      lp::LinearExpr row;
      for (std::size_t i = 0; i < game.actions_p1(s); ++i)
        row.emplace_back(f_var[s][i], game.payoff(s)(i, j));
      const Vec& q = game.controlled_transition(s, j);
      for (std::size_t t = 0; t < k; ++t) {
        Rational coef = beta * q[t] - (t == s ? 1 : 0);
        if (coef != 0) row.emplace_back(v_var[t], coef);
      }
      p.add_constraint(std::move(row), lp::Relation::kGreaterEqual, 0);
    }
  }
  lp::LinearExpr obj;
  for (std::size_t s = 0; s < k; ++s) obj.emplace_back(v_var[s], 1);
  p.maximize(std::move(obj));
  lp::Solution sol = lp::solve(p);
  if (sol.status != lp::Status::kOptimal) {
    throw InternalError("single-controller discounted LP has no optimum");
  }

  DiscountedSolution out;
  out.beta = beta;
  out.exact = true;
  for (std::size_t s = 0; s < k; ++s) out.values.push_back(sol.values[v_var[s]]);

  out.auxiliary = auxiliary_solutions(game, d, out.values);
  out.residual = 0;
  for (std::size_t s = 0; s < k; ++s) {
    Rational gap = abs(out.auxiliary[s].value - out.values[s]);
    if (gap > out.residual) out.residual = gap;
  }
  if (out.residual != 0) {
    throw InternalError("fixed-point certificate failed with residual " +
                        to_string(out.residual));
  }
  out.p1_strategy = canonical_p1(out.auxiliary);
  out.p2_strategy = canonical_p2(out.auxiliary);
  return out;
}

ValueVector normalized_values(const DiscountedSolution& sol) {
  ValueVector out = sol.values;
  for (auto& x : out) x *= 1 - sol.beta;
  return out;
}

}  // namespace cmstoch
