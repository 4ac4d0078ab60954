#pragma once

#include <cstddef>
#include <vector>

#include "cmstoch/linalg.hpp"
#include "cmstoch/rational.hpp"

namespace cmstoch {

enum class Player { kOne, kTwo };

// Who drives the transition law. kBoth means q depends on the state alone.
enum class Controller { kPlayerOne, kPlayerTwo, kBoth, kNone };

const char* to_string(Controller controller);

// Per-state values, indexed by state.
using ValueVector = Vec;

// One probability vector per state for one player.
struct StationaryStrategy {
  std::vector<Vec> probs;

  const Vec& at(std::size_t state) const { return probs[state]; }
  std::size_t state_count() const { return probs.size(); }
  bool strictly_positive() const;
  friend bool operator==(const StationaryStrategy&,
                         const StationaryStrategy&) = default;
};

// A finite two-person zero-sum stochastic game (S, A1, A2, r, q). States and
// actions are 0-indexed. Instances are validated on construction and
// immutable afterwards.
class StochasticGame {
 public:
  // transitions[s][i * m2(s) + j] is q(. | s, i, j), a length-K vector.
  // Throws ValidationError naming the offending state/action pair.
  StochasticGame(std::vector<Matrix> payoff,
                 std::vector<std::vector<Vec>> transitions);

  std::size_t state_count() const { return payoff_.size(); }
  std::size_t actions_p1(std::size_t s) const { return payoff_[s].rows(); }
  std::size_t actions_p2(std::size_t s) const { return payoff_[s].cols(); }
  const Matrix& payoff(std::size_t s) const { return payoff_[s]; }
  const Vec& transition(std::size_t s, std::size_t i, std::size_t j) const {
    return transitions_[s][i * actions_p2(s) + j];
  }
  const std::vector<Matrix>& payoffs() const { return payoff_; }

  // Detected structure. A state-only law (kBoth) is stored as kPlayerTwo,
  // since it satisfies the player-2 condition; detect_controller() keeps
  // the finer answer.
  Controller controller() const { return controller_; }
  bool player_two_controlled() const {
    return controller_ == Controller::kPlayerTwo;
  }

  // q(. | s, j) for a player-2 controlled game.
  const Vec& controlled_transition(std::size_t s, std::size_t j) const {
    return transition(s, 0, j);
  }

  Rational min_payoff() const;
  Rational max_payoff() const;

  friend bool operator==(const StochasticGame&,
                         const StochasticGame&) = default;

 private:
  std::vector<Matrix> payoff_;
  std::vector<std::vector<Vec>> transitions_;
  Controller controller_;
};

Controller detect_controller(const StochasticGame& game);

// Throws ValidationError unless `strategy` has one probability vector per
// state with the right length for `player`.
void validate_strategy(const StochasticGame& game,
                       const StationaryStrategy& strategy, Player player);

// Throws ControllerMismatch unless the game is player-2 controlled.
void require_player_two_control(const StochasticGame& game, const char* op);

// Q(g): entry (s, s') = sum_j g(s)_j q(s' | s, j).
Matrix transition_matrix(const StochasticGame& game,
                         const StationaryStrategy& g);

// r(f, g)(s) = f(s)^T R(s) g(s).
ValueVector reward_vector(const StochasticGame& game,
                          const StationaryStrategy& f,
                          const StationaryStrategy& g);

StationaryStrategy pure_strategy(const StochasticGame& game, Player player,
                                 const std::vector<std::size_t>& actions);
StationaryStrategy uniform_strategy(const StochasticGame& game, Player player);

}  // namespace cmstoch
