#include "cmstoch/mdp_average.hpp"

#include <algorithm>
#include <functional>

#include "cmstoch/errors.hpp"

namespace cmstoch {

ChainStructure chain_structure(const Matrix& q) {
  const std::size_t k = q.rows();
  // Tarjan's algorithm.
  std::vector<int> index(k, -1), low(k, 0), comp(k, -1);
  std::vector<bool> on_stack(k, false);
  std::vector<std::size_t> stack;
  std::vector<std::vector<std::size_t>> components;
  int counter = 0;
  std::function<void(std::size_t)> visit = [&](std::size_t v) {
    index[v] = low[v] = counter++;
    stack.push_back(v);
    on_stack[v] = true;
    for (std::size_t w = 0; w < k; ++w) {
      if (q(v, w) == 0) continue;
      if (index[w] < 0) {
        visit(w);
        low[v] = std::min(low[v], low[w]);
      } else if (on_stack[w]) {
        low[v] = std::min(low[v], index[w]);
      }
    }
    if (low[v] == index[v]) {
      std::vector<std::size_t> members;
      std::size_t w;
      do {
        w = stack.back();
        stack.pop_back();
        on_stack[w] = false;
        comp[w] = static_cast<int>(components.size());
        members.push_back(w);
      } while (w != v);
      std::sort(members.begin(), members.end());
      components.push_back(std::move(members));
    }
  };
  for (std::size_t v = 0; v < k; ++v)
    if (index[v] < 0) visit(v);

  ChainStructure out;
  std::vector<bool> recurrent(k, false);
  for (const auto& members : components) {
    bool closed = true;
    for (std::size_t s : members)
      for (std::size_t t = 0; t < k; ++t)
        if (q(s, t) != 0 && comp[t] != comp[s]) closed = false;
    if (closed) {
      for (std::size_t s : members) recurrent[s] = true;
      out.recurrent_classes.push_back(members);
    }
  }
  std::sort(out.recurrent_classes.begin(), out.recurrent_classes.end());
  for (std::size_t s = 0; s < k; ++s)
    if (!recurrent[s]) out.transient.push_back(s);
  return out;
}

namespace {

Vec stationary_distribution(const Matrix& q, const std::vector<std::size_t>& cls) {
  const std::size_t n = cls.size();
  // pi (Q_CC - I) = 0 and sum pi = 1, as an (n+1) x n system in pi.
  Matrix a(n + 1, n);
  Vec b(n + 1);
  for (std::size_t col = 0; col < n; ++col) {
    for (std::size_t row = 0; row < n; ++row) {
      a(col, row) = q(cls[row], cls[col]) - (row == col ? 1 : 0);
    }
  }
  for (std::size_t row = 0; row < n; ++row) a(n, row) = 1;
  b[n] = 1;
  auto pi = solve_unique(a, b);
  if (!pi) throw InternalError("stationary distribution system is singular");
  return *pi;
}

}  // namespace

Matrix cesaro_limit(const Matrix& q) {
  const std::size_t k = q.rows();
  ChainStructure chain = chain_structure(q);
  Matrix limit(k, k);

  const auto& transient = chain.transient;
  const std::size_t nt = transient.size();
  Matrix i_minus_qtt(nt, nt);
  for (std::size_t a = 0; a < nt; ++a)
    for (std::size_t b = 0; b < nt; ++b)
      i_minus_qtt(a, b) = (a == b ? 1 : 0) - q(transient[a], transient[b]);

  for (const auto& cls : chain.recurrent_classes) {
    Vec pi = stationary_distribution(q, cls);
    for (std::size_t s : cls)
      for (std::size_t c = 0; c < cls.size(); ++c) limit(s, cls[c]) = pi[c];
    if (nt == 0) continue;
    // Absorption probabilities: (I - Q_TT) h = Q_TC 1.
    Vec rhs(nt);
    for (std::size_t a = 0; a < nt; ++a)
      for (std::size_t s : cls) rhs[a] += q(transient[a], s);
    auto h = solve_unique(i_minus_qtt, rhs);
    if (!h) throw InternalError("absorption system is singular");
    for (std::size_t a = 0; a < nt; ++a)
      for (std::size_t c = 0; c < cls.size(); ++c)
        limit(transient[a], cls[c]) = (*h)[a] * pi[c];
  }
  return limit;
}

GainBias evaluate_gain_bias(const Matrix& q, const ValueVector& reward) {
  const std::size_t k = q.rows();
  ChainStructure chain = chain_structure(q);
  // Unknowns: gain[0..k), bias[k..2k).
  const std::size_t rows = 2 * k + chain.recurrent_classes.size();
  Matrix a(rows, 2 * k);
  Vec b(rows);
  for (std::size_t s = 0; s < k; ++s) {
    for (std::size_t t = 0; t < k; ++t) {
      Rational id = s == t ? 1 : 0;
      a(s, t) = id - q(s, t);          // (I - Q) gain = 0
      a(k + s, k + t) = id - q(s, t);  // gain + (I - Q) bias = r
    }
    a(k + s, s) = 1;
    b[k + s] = reward[s];
  }
  for (std::size_t c = 0; c < chain.recurrent_classes.size(); ++c) {
    a(2 * k + c, k + chain.recurrent_classes[c].front()) = 1;
  }
  auto x = solve_unique(a, b);
  if (!x) throw InternalError("gain/bias system is singular");
  GainBias out;
  out.gain.assign(x->begin(), x->begin() + static_cast<std::ptrdiff_t>(k));
  out.bias.assign(x->begin() + static_cast<std::ptrdiff_t>(k), x->end());
  return out;
}

PolicyIterationResult minimize_average_cost(const AverageCostMdp& mdp) {
  const std::size_t k = mdp.costs.size();
  PolicyIterationResult out;
  out.policy.assign(k, 0);

  for (;;) {
    ++out.iterations;
    Matrix q(k, k);
    ValueVector r(k);
    for (std::size_t s = 0; s < k; ++s) {
      const Vec& row = mdp.next[s][out.policy[s]];
      for (std::size_t t = 0; t < k; ++t) q(s, t) = row[t];
      r[s] = mdp.costs[s][out.policy[s]];
    }
    GainBias gb = evaluate_gain_bias(q, r);
    out.gain = gb.gain;
    out.bias = gb.bias;

    // Gain improvement.
    bool changed = false;
    std::vector<Vec> expected_gain(k);
    for (std::size_t s = 0; s < k; ++s) {
      const std::size_t actions = mdp.costs[s].size();
      expected_gain[s].resize(actions);
      for (std::size_t a = 0; a < actions; ++a)
        expected_gain[s][a] = dot(mdp.next[s][a], gb.gain);
      Rational best = expected_gain[s][out.policy[s]];
      std::size_t best_action = out.policy[s];
      for (std::size_t a = 0; a < actions; ++a) {
        if (expected_gain[s][a] < best) {
          best = expected_gain[s][a];
          best_action = a;
        }
      }
      if (best_action != out.policy[s]) {
        out.policy[s] = best_action;
        changed = true;
      }
    }
    if (changed) continue;

    // Bias improvement among gain-preserving actions.
    for (std::size_t s = 0; s < k; ++s) {
      const std::size_t actions = mdp.costs[s].size();
      const Rational& level = expected_gain[s][out.policy[s]];
      Rational best = mdp.costs[s][out.policy[s]] +
                      dot(mdp.next[s][out.policy[s]], gb.bias);
      std::size_t best_action = out.policy[s];
      for (std::size_t a = 0; a < actions; ++a) {
        if (expected_gain[s][a] != level) continue;
        Rational candidate = mdp.costs[s][a] + dot(mdp.next[s][a], gb.bias);
        if (candidate < best) {
          best = candidate;
          best_action = a;
        }
      }
      if (best_action != out.policy[s]) {
        out.policy[s] = best_action;
        changed = true;
      }
    }
    if (!changed) return out;
  }
}

ValueVector limiting_average_payoff(const StochasticGame& game,
                                    const StationaryStrategy& f,
                                    const StationaryStrategy& g) {
  require_player_two_control(game, "limiting_average_payoff");
  return cesaro_limit(transition_matrix(game, g)) * reward_vector(game, f, g);
}

ValueVector best_response_value_p1(const StochasticGame& game,
                                   const StationaryStrategy& g) {
  require_player_two_control(game, "best_response_value_p1");
  Matrix q = transition_matrix(game, g);
  ValueVector best(game.state_count());
  for (std::size_t s = 0; s < game.state_count(); ++s) {
    Vec rows = game.payoff(s) * g.at(s);
    best[s] = *std::max_element(rows.begin(), rows.end());
  }
  return cesaro_limit(q) * best;
}

ValueVector best_response_value_p2(const StochasticGame& game,
                                   const StationaryStrategy& f) {
  require_player_two_control(game, "best_response_value_p2");
  validate_strategy(game, f, Player::kOne);
  AverageCostMdp mdp;
  for (std::size_t s = 0; s < game.state_count(); ++s) {
    mdp.costs.push_back(left_multiply(f.at(s), game.payoff(s)));
    std::vector<Vec> next;
    for (std::size_t j = 0; j < game.actions_p2(s); ++j)
      next.push_back(game.controlled_transition(s, j));
    mdp.next.push_back(std::move(next));
  }
  return minimize_average_cost(mdp).gain;
}

UndiscountedVerification verify_optimal_undiscounted(
    const StochasticGame& game, const StationaryStrategy& f,
    const StationaryStrategy& g) {
  require_player_two_control(game, "verify_optimal_undiscounted");
  UndiscountedVerification out;
  out.value = limiting_average_payoff(game, f, g);
  ValueVector upper = best_response_value_p1(game, g);
  ValueVector lower = best_response_value_p2(game, f);
  const std::size_t k = game.state_count();
  out.p1_gap.resize(k);
  out.p2_gap.resize(k);
  out.optimal = true;
  for (std::size_t s = 0; s < k; ++s) {
    out.p1_gap[s] = upper[s] - out.value[s];
    out.p2_gap[s] = out.value[s] - lower[s];
    if (out.p1_gap[s] != 0 || out.p2_gap[s] != 0) out.optimal = false;
  }
  return out;
}

}  // namespace cmstoch
