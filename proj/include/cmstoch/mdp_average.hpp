#pragma once

#include <cstddef>
#include <vector>

#include "cmstoch/game.hpp"
#include "cmstoch/linalg.hpp"

namespace cmstoch {

// Recurrent classes (closed strongly connected components) of the directed
// graph with an edge s -> t whenever q(s, t) > 0, plus the transient states.
// Classes are ordered by their lowest state; states within a class ascend.
struct ChainStructure {
  std::vector<std::vector<std::size_t>> recurrent_classes;
  std::vector<std::size_t> transient;
};
ChainStructure chain_structure(const Matrix& q);

// Cesaro limit Q* = lim (1/(N+1)) sum_{n<=N} Q^n, computed exactly from the
// recurrent-class decomposition (stationary distribution per class,
// absorption probabilities for transient states).
Matrix cesaro_limit(const Matrix& q);

// Gain and bias of a fixed Markov reward process, with the bias pinned to 0
// at the lowest-indexed state of every recurrent class.
struct GainBias {
  ValueVector gain;
  ValueVector bias;
};
GainBias evaluate_gain_bias(const Matrix& q, const ValueVector& reward);

// Finite average-cost MDP: costs[s][a] with next-state law next[s][a].
struct AverageCostMdp {
  std::vector<Vec> costs;
  std::vector<std::vector<Vec>> next;
};

struct PolicyIterationResult {
  std::vector<std::size_t> policy;
  ValueVector gain;
  ValueVector bias;
  std::size_t iterations = 0;
};

// Multichain policy iteration minimizing the long-run average cost.
// Improvement is lexicographic: gain first, then bias, switching only on
// strict improvement and preferring the lowest action index among ties.
PolicyIterationResult minimize_average_cost(const AverageCostMdp& mdp);

// Phi(f, g) = Q*(g) r(f, g).
ValueVector limiting_average_payoff(const StochasticGame& game,
                                    const StationaryStrategy& f,
                                    const StationaryStrategy& g);

// max_f Phi(f, g): Q*(g) applied to the per-state best row payoff.
ValueVector best_response_value_p1(const StochasticGame& game,
                                   const StationaryStrategy& g);

// min_g Phi(f, g), by policy iteration over player 2's pure stationary
// policies.
ValueVector best_response_value_p2(const StochasticGame& game,
                                   const StationaryStrategy& f);

struct UndiscountedVerification {
  bool optimal = false;
  ValueVector value;    // Phi(f, g)
  ValueVector p1_gap;   // best_response_value_p1(g) - Phi(f, g) >= 0
  ValueVector p2_gap;   // Phi(f, g) - best_response_value_p2(f) >= 0
};

UndiscountedVerification verify_optimal_undiscounted(
    const StochasticGame& game, const StationaryStrategy& f,
    const StationaryStrategy& g);

}  // namespace cmstoch
