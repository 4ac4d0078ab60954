#pragma once

// Test-only oracles and random instance generators. The oracles avoid the
// library's LP and linear-algebra code so they can check it independently.

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "cmstoch/game.hpp"
#include "cmstoch/linalg.hpp"

namespace oracle {

using cmstoch::Matrix;
using cmstoch::Rational;
using cmstoch::StationaryStrategy;
using cmstoch::StochasticGame;
using cmstoch::Vec;

// Gauss-Jordan on the augmented system [A | b]; nullopt unless the solution
// exists and is unique.
std::optional<Vec> solve(std::vector<Vec> a, Vec b);

// Every Shapley-Snow kernel (square submatrix) whose equalizing solutions
// are nonnegative and optimal in the full game. The collected strategies
// are exactly the extreme optimal strategies.
struct KernelEnumeration {
  Rational value;
  std::vector<Vec> p1;  // sorted, deduplicated
  std::vector<Vec> p2;
};
KernelEnumeration enumerate_kernels(const Matrix& m);

// Matrix-game value by brute-force support enumeration.
Rational game_value(const Matrix& m);

// Completely mixed iff every extreme optimal strategy of both players is
// strictly positive.
bool completely_mixed(const Matrix& m);

// Empirical Cesaro average (1/(N+1)) sum_{n<=N} Q^n in floating point.
std::vector<std::vector<double>> empirical_cesaro(const Matrix& q, int n);

// Every pure stationary policy (one action index per state).
std::vector<std::vector<std::size_t>> all_pure_policies(
    const std::vector<std::size_t>& action_counts);

// Discounted payoff of a stationary pair: (I - beta P)^{-1} r.
Vec discounted_payoff(const StochasticGame& game, const StationaryStrategy& f,
                      const StationaryStrategy& g, const Rational& beta);

// R_beta(s) built directly from the definition.
Matrix auxiliary(const StochasticGame& game, std::size_t s,
                 const Rational& beta, const Vec& v);

}  // namespace oracle

namespace gen {

using Rng = std::mt19937_64;

// Small-denominator probability vector of length n (weights 0..3, at least
// one positive).
cmstoch::Vec probability(Rng& rng, std::size_t n);

cmstoch::Matrix integer_matrix(Rng& rng, std::size_t rows, std::size_t cols,
                               int lo, int hi);

cmstoch::Matrix stochastic_matrix(Rng& rng, std::size_t n);

// Player-2 controlled game: K states in [1, max_states], per-state action
// counts in [1, max_actions], integer payoffs in [lo, hi].
cmstoch::StochasticGame single_controller_game(Rng& rng,
                                               std::size_t max_states,
                                               std::size_t max_actions,
                                               int lo, int hi);

}  // namespace gen
