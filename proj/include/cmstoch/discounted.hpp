#pragma once

#include <cstddef>
#include <vector>

#include "cmstoch/game.hpp"
#include "cmstoch/linalg.hpp"
#include "cmstoch/matrix_game.hpp"

namespace cmstoch {

// Discount factor in [0, 1).
class Discount {
 public:
  explicit Discount(Rational beta);
  const Rational& beta() const { return beta_; }

 private:
  Rational beta_;
};

struct DiscountedSolution {
  Rational beta;
  ValueVector values;                // v_beta
  StationaryStrategy p1_strategy;    // canonical optimal strategies
  StationaryStrategy p2_strategy;
  Rational residual;                 // ||v - T(v)||_inf; 0 when exact
  bool exact = false;
  std::size_t iterations = 0;        // Shapley iterations (0 for exact)
  std::size_t iteration_bound = 0;   // a-priori bound reported by iteration
  std::vector<MatrixGameSolution> auxiliary;  // R_beta(s) at `values`
};

// Default stopping tolerance of Shapley iteration (10^-9).
Rational default_tolerance();

// I_beta(f, g) = [I - beta Q(g)]^{-1} r(f, g), solved exactly.
ValueVector discounted_payoff(const StochasticGame& game,
                              const StationaryStrategy& f,
                              const StationaryStrategy& g, const Discount& d);

// R_beta(s)(v): entry (i, j) = r(s, i, j) + beta sum_s' v(s') q(s'|s, i, j).
// For player-2 control the shift is constant down each column.
Matrix auxiliary_matrix(const StochasticGame& game, std::size_t state,
                        const Discount& d, const ValueVector& v);

// One application of the Shapley operator: T(v)(s) = val R_beta(s)(v).
ValueVector shapley_operator(const StochasticGame& game, const Discount& d,
                             const ValueVector& v);

// Value iteration from v0 = 0 until the final iterate is within `tol` of
// v_beta. Iterates are rounded to a dyadic grid fine enough to keep the
// guarantee, which keeps denominators bounded. Accepts any controller.
DiscountedSolution shapley_iterate(const StochasticGame& game,
                                   const Discount& d, const Rational& tol);

// Exact v_beta for a player-2 controlled game via the single-controller
// linear program, certified by v(s) == val R_beta(s)(v) in every state.
DiscountedSolution solve_discounted_exact(const StochasticGame& game,
                                          const Discount& d);

// (1 - beta) v_beta.
ValueVector normalized_values(const DiscountedSolution& sol);

// Strategies that put the canonical vertex of each per-state solution.
StationaryStrategy canonical_p1(const std::vector<MatrixGameSolution>& aux);
StationaryStrategy canonical_p2(const std::vector<MatrixGameSolution>& aux);

}  // namespace cmstoch
