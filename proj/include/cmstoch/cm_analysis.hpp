#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <vector>

#include "cmstoch/discounted.hpp"
#include "cmstoch/game.hpp"
#include "cmstoch/matrix_game.hpp"
#include "cmstoch/mdp_average.hpp"

namespace cmstoch {

// An optimal stationary strategy that leaves `action` unplayed in `state`.
struct CmWitness {
  Player player = Player::kOne;
  std::size_t state = 0;
  std::size_t action = 0;
  StationaryStrategy strategy;
};

struct StateCertificate {
  Matrix auxiliary;  // R_beta(s) at v_beta (discounted) or R(s)
  MatrixGameSolution solution;
};

struct CmReport {
  std::optional<Rational> beta;  // unset for the undiscounted game
  ValueVector value;             // v_beta or v
  std::vector<StateCertificate> states;  // discounted reports only
  bool completely_mixed = false;
  std::optional<CmWitness> witness;
  // Undiscounted reports: every single-coordinate exclusion that admits an
  // optimal strategy, plus one verified optimal pair.
  std::vector<CmWitness> witnesses;
  std::optional<StationaryStrategy> p1_optimal;
  std::optional<StationaryStrategy> p2_optimal;
  std::size_t patterns_examined = 0;
  std::size_t feasible_patterns = 0;
};

// Size guard for exhaustive undiscounted enumeration: CMSTOCH_GUARD if set
// to a positive integer, otherwise 10^6.
std::size_t enumeration_guard();

CmReport check_cm_discounted(const StochasticGame& game, const Discount& d);

// Exact undiscounted value of a player-2 controlled game together with an
// optimal stationary strategy of player 1, from the linear program
//   max sum rho  s.t.  rho <= Q_j rho,
//                      rho + h <= f R(.)_j + Q_j h   for every (s, j).
struct UndiscountedValue {
  ValueVector value;
  StationaryStrategy p1_strategy;
};
UndiscountedValue undiscounted_value(const StochasticGame& game);

// Exhaustive completely-mixed check of the limiting-average game over
// stationary strategies. Player 1: one feasibility LP per excluded
// coordinate. Player 2: every support pattern (restricted to value-
// preserving columns), each solved exactly on its recurrent classes.
// Throws GuardExceeded when the pattern count exceeds `guard`.
CmReport check_cm_undiscounted(const StochasticGame& game,
                               std::size_t guard = enumeration_guard());

struct VanishingStep {
  Rational beta;
  DiscountedSolution solution;
  ValueVector normalized;
};

enum class Convergence { kConverged, kInconclusive };

struct VanishingDiscountTrace {
  std::vector<VanishingStep> steps;
  Convergence status = Convergence::kInconclusive;
  std::string diagnosis;
  ValueVector limit_values;
  StationaryStrategy f0;
  StationaryStrategy g0;
  // Present when converged.
  std::optional<UndiscountedVerification> verification;
  bool f0_optimal = false;  // min_g Phi(f0, g) == limit_values
};

// Value tolerance for declaring the normalized-value limit (2^-10) and the
// coordinate Cauchy bound for strategy convergence (2^-14).
Rational vanishing_value_tolerance();
Rational vanishing_strategy_tolerance();

// beta_n = 1 - 2^-n, n = 1..n_max.
std::vector<Rational> default_schedule(unsigned n_max = 20);

VanishingDiscountTrace vanishing_discount(const StochasticGame& game,
                                          const std::vector<Rational>& schedule);

// {1/2, 3/4, 9/10, 99/100, 999/1000}
std::vector<Rational> default_grid();

struct ThresholdSearch {
  std::vector<Rational> grid;
  std::vector<CmReport> reports;
  std::vector<bool> cm_flags;
  bool cm_for_all = false;
  // Smallest tested beta from which every larger tested beta is CM.
  std::optional<Rational> beta0;
};

ThresholdSearch beta_threshold_search(const StochasticGame& game,
                                      const std::vector<Rational>& grid);

struct Theorem11Result {
  bool all_symmetric = false;
  bool undiscounted_cm = false;
  bool applicable = false;
  std::vector<bool> per_state_cm;
  bool pass = false;
};

Theorem11Result theorem11_verify(const StochasticGame& game);

struct Theorem13State {
  Rational value;                 // undiscounted v(s)
  std::vector<Rational> v_beta;   // per grid point
  std::vector<bool> nonzero;
  std::optional<Rational> last_zero_beta;
  bool converse_violation = false;  // v(s) == 0 but some v_beta(s) != 0
  bool pass = false;
};

struct Theorem13Result {
  std::vector<Rational> grid;
  std::vector<Theorem13State> states;
  bool pass = false;
};

Theorem13Result theorem13_verify(const StochasticGame& game,
                                 const std::vector<Rational>& grid);

}  // namespace cmstoch
