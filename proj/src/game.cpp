#include "cmstoch/game.hpp"

#include <algorithm>
#include <string>

#include "cmstoch/errors.hpp"

namespace cmstoch {
namespace {

std::string state_name(std::size_t s) { return "s" + std::to_string(s + 1); }

std::string pair_name(std::size_t s, std::size_t i, std::size_t j) {
  return state_name(s) + " action pair (" + std::to_string(i + 1) + "," +
         std::to_string(j + 1) + ")";
}

}  // namespace

const char* to_string(Controller controller) {
  switch (controller) {
    case Controller::kPlayerOne: return "player1";
    case Controller::kPlayerTwo: return "player2";
    case Controller::kBoth: return "both";
    case Controller::kNone: return "none";
  }
  return "none";
}

bool StationaryStrategy::strictly_positive() const {
  for (const auto& p : probs)
    for (const auto& x : p)
      if (x <= 0) return false;
  return true;
}

StochasticGame::StochasticGame(std::vector<Matrix> payoff,
                               std::vector<std::vector<Vec>> transitions)
    : payoff_(std::move(payoff)), transitions_(std::move(transitions)) {
  const std::size_t k = payoff_.size();
  if (k == 0) throw ValidationError("game must have at least one state");
  if (transitions_.size() != k) {
    throw ValidationError("transition table covers " +
                          std::to_string(transitions_.size()) +
                          " states, expected " + std::to_string(k));
  }
  for (std::size_t s = 0; s < k; ++s) {
    const Matrix& r = payoff_[s];
    if (r.rows() == 0 || r.cols() == 0) {
      throw ValidationError(state_name(s) + " has an empty payoff matrix");
    }
    if (transitions_[s].size() != r.rows() * r.cols()) {
      throw ValidationError(state_name(s) + " has " +
                            std::to_string(transitions_[s].size()) +
                            " transition rows, expected " +
                            std::to_string(r.rows() * r.cols()));
    }
    for (std::size_t i = 0; i < r.rows(); ++i) {
      for (std::size_t j = 0; j < r.cols(); ++j) {
        const Vec& q = transitions_[s][i * r.cols() + j];
        if (q.size() != k) {
          throw ValidationError("transition row for " + pair_name(s, i, j) +
                                " has length " + std::to_string(q.size()) +
                                ", expected " + std::to_string(k));
        }
        for (const auto& p : q) {
          if (p < 0) {
            throw ValidationError("transition row for " + pair_name(s, i, j) +
                                  " has a negative entry");
          }
        }
        Rational total = sum(q);
        if (total != 1) {
          throw ValidationError("transition row for " + pair_name(s, i, j) +
                                " sums to " + to_string(total) +
                                ", expected 1");
        }
      }
    }
  }
  controller_ = detect_controller(*this);
  if (controller_ == Controller::kBoth) controller_ = Controller::kPlayerTwo;
}

Rational StochasticGame::min_payoff() const {
  Rational lo = payoff_.front().min_entry();
  for (const auto& r : payoff_) lo = std::min(lo, r.min_entry());
  return lo;
}

Rational StochasticGame::max_payoff() const {
  Rational hi = payoff_.front().max_entry();
  for (const auto& r : payoff_) hi = std::max(hi, r.max_entry());
  return hi;
}

Controller detect_controller(const StochasticGame& game) {
  bool p2_only = true;  // q independent of i
  bool p1_only = true;  // q independent of j
  for (std::size_t s = 0; s < game.state_count(); ++s) {
    for (std::size_t i = 0; i < game.actions_p1(s); ++i) {
      for (std::size_t j = 0; j < game.actions_p2(s); ++j) {
        const Vec& q = game.transition(s, i, j);
        if (q != game.transition(s, 0, j)) p2_only = false;
        if (q != game.transition(s, i, 0)) p1_only = false;
      }
    }
  }
  if (p1_only && p2_only) return Controller::kBoth;
  if (p2_only) return Controller::kPlayerTwo;
  if (p1_only) return Controller::kPlayerOne;
  return Controller::kNone;
}

void validate_strategy(const StochasticGame& game,
                       const StationaryStrategy& strategy, Player player) {
  const char* who = player == Player::kOne ? "player 1" : "player 2";
  if (strategy.state_count() != game.state_count()) {
    throw ValidationError(std::string(who) + " strategy covers " +
                          std::to_string(strategy.state_count()) +
                          " states, expected " +
                          std::to_string(game.state_count()));
  }
  for (std::size_t s = 0; s < game.state_count(); ++s) {
    const std::size_t m =
        player == Player::kOne ? game.actions_p1(s) : game.actions_p2(s);
    const Vec& p = strategy.at(s);
    if (p.size() != m) {
      throw ValidationError(std::string(who) + " strategy at " +
                            state_name(s) + " has length " +
                            std::to_string(p.size()) + ", expected " +
                            std::to_string(m));
    }
    for (const auto& x : p) {
      if (x < 0) {
        throw ValidationError(std::string(who) + " strategy at " +
                              state_name(s) + " has a negative entry");
      }
    }
    if (sum(p) != 1) {
      throw ValidationError(std::string(who) + " strategy at " +
                            state_name(s) + " does not sum to 1");
    }
  }
}

void require_player_two_control(const StochasticGame& game, const char* op) {
  if (!game.player_two_controlled()) {
    throw ControllerMismatch(std::string(op) +
                             " requires a player-2 controlled game (detected: " +
                             to_string(game.controller()) + ")");
  }
}

Matrix transition_matrix(const StochasticGame& game,
                         const StationaryStrategy& g) {
  require_player_two_control(game, "transition_matrix");
  validate_strategy(game, g, Player::kTwo);
  const std::size_t k = game.state_count();
  Matrix q(k, k);
  for (std::size_t s = 0; s < k; ++s) {
    for (std::size_t j = 0; j < game.actions_p2(s); ++j) {
      const Rational& w = g.at(s)[j];
      if (w == 0) continue;
      const Vec& row = game.controlled_transition(s, j);
      for (std::size_t t = 0; t < k; ++t) q(s, t) += w * row[t];
    }
  }
  return q;
}

ValueVector reward_vector(const StochasticGame& game,
                          const StationaryStrategy& f,
                          const StationaryStrategy& g) {
  validate_strategy(game, f, Player::kOne);
  validate_strategy(game, g, Player::kTwo);
  ValueVector r(game.state_count());
  for (std::size_t s = 0; s < game.state_count(); ++s) {
    r[s] = dot(f.at(s), game.payoff(s) * g.at(s));
  }
  return r;
}

StationaryStrategy pure_strategy(const StochasticGame& game, Player player,
                                 const std::vector<std::size_t>& actions) {
  StationaryStrategy out;
  for (std::size_t s = 0; s < game.state_count(); ++s) {
    const std::size_t m =
        player == Player::kOne ? game.actions_p1(s) : game.actions_p2(s);
    Vec p(m);
    p.at(actions.at(s)) = 1;
    out.probs.push_back(std::move(p));
  }
  return out;
}

StationaryStrategy uniform_strategy(const StochasticGame& game, Player player) {
  StationaryStrategy out;
  for (std::size_t s = 0; s < game.state_count(); ++s) {
    const std::size_t m =
        player == Player::kOne ? game.actions_p1(s) : game.actions_p2(s);
    out.probs.push_back(Vec(m, Rational(1, m)));
  }
  return out;
}

}  // namespace cmstoch
