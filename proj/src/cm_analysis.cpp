#include "cmstoch/cm_analysis.hpp"

#include <algorithm>
#include <cstdlib>
#include <string>

#include "cmstoch/errors.hpp"
#include "cmstoch/lp.hpp"

namespace cmstoch {
namespace {

std::size_t saturating_mul(std::size_t a, std::size_t b) {
  constexpr std::size_t kMax = static_cast<std::size_t>(-1);
  if (a != 0 && b > kMax / a) return kMax;
  return a * b;
}

std::optional<std::size_t> first_zero(const Vec& v) {
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v[i] == 0) return i;
  return std::nullopt;
}

}  // namespace

std::size_t enumeration_guard() {
  if (const char* env = std::getenv("CMSTOCH_GUARD")) {
    char* end = nullptr;
    unsigned long long parsed = std::strtoull(env, &end, 10);
    if (end != env && *end == '\0' && parsed > 0) {
      return static_cast<std::size_t>(parsed);
    }
    throw ValidationError("CMSTOCH_GUARD must be a positive integer, got '" +
                          std::string(env) + "'");
  }
  return 1'000'000;
}

// ---------------------------------------------------------------------------
// Discounted

CmReport check_cm_discounted(const StochasticGame& game, const Discount& d) {
  require_player_two_control(game, "check_cm_discounted");
  DiscountedSolution sol = solve_discounted_exact(game, d);
  CmReport report;
  report.beta = d.beta();
  report.value = sol.values;
  report.completely_mixed = true;
  for (std::size_t s = 0; s < game.state_count(); ++s) {
    const MatrixGameSolution& aux = sol.auxiliary[s];
    report.states.push_back({auxiliary_matrix(game, s, d, sol.values), aux});
    if (aux.completely_mixed) continue;
    report.completely_mixed = false;
    if (report.witness) continue;
    // Optimal stationary strategies are the per-state optima of R_beta(s),
    // so substituting one zero-coordinate vertex keeps optimality.
    for (const Player player : {Player::kOne, Player::kTwo}) {
      const auto& vertices =
          player == Player::kOne ? aux.p1_vertices : aux.p2_vertices;
      for (const auto& vertex : vertices) {
        auto zero = first_zero(vertex);
        if (!zero) continue;
        CmWitness w;
        w.player = player;
        w.state = s;
        w.action = *zero;
        w.strategy = player == Player::kOne ? sol.p1_strategy : sol.p2_strategy;
        w.strategy.probs[s] = vertex;
        report.witness = std::move(w);
        break;
      }
      if (report.witness) break;
    }
  }
  return report;
}

// ---------------------------------------------------------------------------
// Undiscounted

UndiscountedValue undiscounted_value(const StochasticGame& game) {
  require_player_two_control(game, "undiscounted_value");
  const std::size_t k = game.state_count();
  lp::Problem p;
  std::vector<std::size_t> rho(k), h(k);
  for (std::size_t s = 0; s < k; ++s) rho[s] = p.add_variable(true);
  for (std::size_t s = 0; s < k; ++s) h[s] = p.add_variable(true);
  std::vector<std::vector<std::size_t>> f(k);
  for (std::size_t s = 0; s < k; ++s) {
    lp::LinearExpr simplex;
    for (std::size_t i = 0; i < game.actions_p1(s); ++i) {
      f[s].push_back(p.add_variable());
      simplex.emplace_back(f[s].back(), 1);
    }
    p.add_constraint(std::move(simplex), lp::Relation::kEqual, 1);
  }
  for (std::size_t s = 0; s < k; ++s) {
    for (std::size_t j = 0; j < game.actions_p2(s); ++j) {
      const Vec& q = game.controlled_transition(s, j);
      lp::LinearExpr gain_row, bias_row;
      for (std::size_t t = 0; t < k; ++t) {
        Rational coef = (t == s ? 1 : 0) - q[t];
        if (coef == 0) continue;
        gain_row.emplace_back(rho[t], coef);
        bias_row.emplace_back(h[t], coef);
      }
      bias_row.emplace_back(rho[s], 1);
      for (std::size_t i = 0; i < game.actions_p1(s); ++i)
        bias_row.emplace_back(f[s][i], -game.payoff(s)(i, j));
      p.add_constraint(std::move(gain_row), lp::Relation::kLessEqual, 0);
      p.add_constraint(std::move(bias_row), lp::Relation::kLessEqual, 0);
    }
  }
  lp::LinearExpr obj;
  for (std::size_t s = 0; s < k; ++s) obj.emplace_back(rho[s], 1);
  p.maximize(std::move(obj));
  lp::Solution sol = lp::solve(p);
  if (sol.status != lp::Status::kOptimal) {
    throw InternalError("undiscounted single-controller LP has no optimum");
  }
  UndiscountedValue out;
  for (std::size_t s = 0; s < k; ++s) out.value.push_back(sol.values[rho[s]]);
  for (std::size_t s = 0; s < k; ++s) {
    Vec probs;
    for (std::size_t i = 0; i < game.actions_p1(s); ++i)
      probs.push_back(sol.values[f[s][i]]);
    out.p1_strategy.probs.push_back(std::move(probs));
  }
  return out;
}

namespace {

// An optimal f of player 1 with f(state)_action == 0, if one exists:
// feasibility of v + h <= f R(.)_j + Q_j h with that coordinate fixed to 0.
std::optional<StationaryStrategy> p1_optimal_avoiding(const StochasticGame& game,
                                                      const ValueVector& v,
                                                      std::size_t state,
                                                      std::size_t action) {
  const std::size_t k = game.state_count();
  lp::Problem p;
  std::vector<std::size_t> h(k);
  for (std::size_t s = 0; s < k; ++s) h[s] = p.add_variable(true);
  std::vector<std::vector<std::size_t>> f(k);
  for (std::size_t s = 0; s < k; ++s) {
    lp::LinearExpr simplex;
    for (std::size_t i = 0; i < game.actions_p1(s); ++i) {
      f[s].push_back(p.add_variable());
      simplex.emplace_back(f[s].back(), 1);
    }
    p.add_constraint(std::move(simplex), lp::Relation::kEqual, 1);
  }
  p.add_constraint({{f[state][action], 1}}, lp::Relation::kEqual, 0);
  for (std::size_t s = 0; s < k; ++s) {
    for (std::size_t j = 0; j < game.actions_p2(s); ++j) {
      const Vec& q = game.controlled_transition(s, j);
      lp::LinearExpr row;
      for (std::size_t t = 0; t < k; ++t) {
        Rational coef = (t == s ? 1 : 0) - q[t];
        if (coef != 0) row.emplace_back(h[t], coef);
      }
      for (std::size_t i = 0; i < game.actions_p1(s); ++i)
        row.emplace_back(f[s][i], -game.payoff(s)(i, j));
      p.add_constraint(std::move(row), lp::Relation::kLessEqual, -v[s]);
    }
  }
  p.maximize({});
  lp::Solution sol = lp::solve(p);
  if (sol.status != lp::Status::kOptimal) return std::nullopt;
  StationaryStrategy out;
  for (std::size_t s = 0; s < k; ++s) {
    Vec probs;
    for (std::size_t i = 0; i < game.actions_p1(s); ++i)
      probs.push_back(sol.values[f[s][i]]);
    out.probs.push_back(std::move(probs));
  }
  return out;
}

// Realizes an optimal g of player 2 whose support is exactly `pattern`
// (pattern[s] lists the columns played in state s), if one exists.
//
// For g supported on value-preserving columns, optimality reduces to one
// condition per recurrent class C of Q(g): the long-run average of the best
// row payoff over C is at most v_C. In occupation-measure variables
// x(s, j) = pi(s) g(s)_j that condition is linear.
std::optional<StationaryStrategy> p2_optimal_with_support(
    const StochasticGame& game, const ValueVector& v,
    const std::vector<std::vector<std::size_t>>& pattern) {
  const std::size_t k = game.state_count();
  Matrix reach(k, k);
  for (std::size_t s = 0; s < k; ++s)
    for (std::size_t j : pattern[s]) {
      const Vec& q = game.controlled_transition(s, j);
      for (std::size_t t = 0; t < k; ++t)
        if (q[t] != 0) reach(s, t) = 1;
    }
  ChainStructure chain = chain_structure(reach);

  StationaryStrategy g;
  for (std::size_t s = 0; s < k; ++s) {
    Vec probs(game.actions_p2(s));
    for (std::size_t j : pattern[s]) probs[j] = Rational(1, pattern[s].size());
    g.probs.push_back(std::move(probs));
  }

  for (const auto& cls : chain.recurrent_classes) {
    const Rational& level = v[cls.front()];
    for (std::size_t s : cls)
      if (v[s] != level) return std::nullopt;

    lp::Problem p;
    const std::size_t eps = p.add_variable();
    std::vector<std::vector<std::size_t>> x(k);
    std::vector<std::size_t> t(k);
    lp::LinearExpr total, budget;
    for (std::size_t s : cls) {
      for (std::size_t n = 0; n < pattern[s].size(); ++n) {
        x[s].push_back(p.add_variable());
        p.add_constraint({{x[s].back(), 1}, {eps, -1}},
                         lp::Relation::kGreaterEqual, 0);
        total.emplace_back(x[s].back(), 1);
      }
      t[s] = p.add_variable(true);
      budget.emplace_back(t[s], 1);
    }
    p.add_constraint(std::move(total), lp::Relation::kEqual, 1);
    p.add_constraint(std::move(budget), lp::Relation::kLessEqual, level);
    for (std::size_t target : cls) {
      lp::LinearExpr balance;
      for (std::size_t n = 0; n < pattern[target].size(); ++n)
        balance.emplace_back(x[target][n], 1);
      for (std::size_t s : cls)
        for (std::size_t n = 0; n < pattern[s].size(); ++n) {
          const Rational& q = game.controlled_transition(s, pattern[s][n])[target];
          if (q != 0) balance.emplace_back(x[s][n], -q);
        }
      p.add_constraint(std::move(balance), lp::Relation::kEqual, 0);
    }
    for (std::size_t s : cls)
      for (std::size_t i = 0; i < game.actions_p1(s); ++i) {
        lp::LinearExpr row{{t[s], 1}};
        for (std::size_t n = 0; n < pattern[s].size(); ++n)
          row.emplace_back(x[s][n], -game.payoff(s)(i, pattern[s][n]));
        p.add_constraint(std::move(row), lp::Relation::kGreaterEqual, 0);
      }
    p.maximize({{eps, 1}});
    lp::Solution sol = lp::solve(p);
    if (sol.status != lp::Status::kOptimal || sol.objective <= 0) {
      return std::nullopt;
    }
    for (std::size_t s : cls) {
      Rational mass = 0;
      for (std::size_t idx : x[s]) mass += sol.values[idx];
      Vec probs(game.actions_p2(s));
      for (std::size_t n = 0; n < pattern[s].size(); ++n)
        probs[pattern[s][n]] = sol.values[x[s][n]] / mass;
      g.probs[s] = std::move(probs);
    }
  }
  return g;
}

// Nonempty subsets of `items`, in order of increasing bitmask.
std::vector<std::vector<std::size_t>> nonempty_subsets(
    const std::vector<std::size_t>& items) {
  std::vector<std::vector<std::size_t>> out;
  const std::size_t n = items.size();
  for (std::size_t mask = 1; mask < (std::size_t{1} << n); ++mask) {
    std::vector<std::size_t> subset;
    for (std::size_t b = 0; b < n; ++b)
      if (mask & (std::size_t{1} << b)) subset.push_back(items[b]);
    out.push_back(std::move(subset));
  }
  // Full set first, so a completely mixed optimum is found early.
  std::reverse(out.begin(), out.end());
  return out;
}

}  // namespace

CmReport check_cm_undiscounted(const StochasticGame& game, std::size_t guard) {
  require_player_two_control(game, "check_cm_undiscounted");
  const std::size_t k = game.state_count();

  std::size_t pattern_count = 1;
  for (std::size_t s = 0; s < k; ++s) {
    const std::size_t m = game.actions_p2(s);
    const std::size_t per_state =
        m >= 63 ? static_cast<std::size_t>(-1) : (std::size_t{1} << m) - 1;
    pattern_count = saturating_mul(pattern_count, per_state);
  }
  if (pattern_count > guard) {
    throw GuardExceeded("undiscounted support enumeration needs " +
                        std::to_string(pattern_count) +
                        " patterns, guard is " + std::to_string(guard));
  }

  UndiscountedValue uv = undiscounted_value(game);
  const ValueVector& v = uv.value;
  CmReport report;
  report.value = v;

  // Player 2 only plays columns that keep v harmonic: Q_j v >= v always
  // holds at the value, with equality required on the support.
  std::vector<std::vector<std::size_t>> preserving(k);
  for (std::size_t s = 0; s < k; ++s) {
    for (std::size_t j = 0; j < game.actions_p2(s); ++j) {
      Rational next = dot(game.controlled_transition(s, j), v);
      if (next < v[s]) throw InternalError("value vector is not superharmonic");
      if (next == v[s]) preserving[s].push_back(j);
    }
  }

  std::vector<std::vector<std::vector<std::size_t>>> choices(k);
  for (std::size_t s = 0; s < k; ++s) choices[s] = nonempty_subsets(preserving[s]);

  std::optional<StationaryStrategy> g_full;
  std::vector<StationaryStrategy> g_feasible;
  std::vector<std::size_t> cursor(k, 0);
  for (;;) {
    std::vector<std::vector<std::size_t>> pattern(k);
    for (std::size_t s = 0; s < k; ++s) pattern[s] = choices[s][cursor[s]];
    ++report.patterns_examined;
    if (auto g = p2_optimal_with_support(game, v, pattern)) {
      ++report.feasible_patterns;
      if (g->strictly_positive()) {
        if (!g_full) g_full = *g;
      } else {
        g_feasible.push_back(std::move(*g));
      }
    }
    std::size_t s = 0;
    while (s < k && ++cursor[s] == choices[s].size()) cursor[s++] = 0;
    if (s == k) break;
  }
  if (!g_full && g_feasible.empty()) {
    throw InternalError("no optimal stationary strategy found for player 2");
  }
  const StationaryStrategy g_star = g_full ? *g_full : g_feasible.front();
  report.p1_optimal = uv.p1_strategy;
  report.p2_optimal = g_star;
  if (!verify_optimal_undiscounted(game, uv.p1_strategy, g_star).optimal) {
    throw InternalError("reference optimal pair failed verification");
  }

  for (std::size_t s = 0; s < k; ++s) {
    for (std::size_t i = 0; i < game.actions_p1(s); ++i) {
      auto f = p1_optimal_avoiding(game, v, s, i);
      if (!f) continue;
      if (!verify_optimal_undiscounted(game, *f, g_star).optimal) {
        throw InternalError("player 1 witness failed verification");
      }
      report.witnesses.push_back({Player::kOne, s, i, std::move(*f)});
    }
  }
  for (const auto& g : g_feasible) {
    if (!verify_optimal_undiscounted(game, uv.p1_strategy, g).optimal) {
      throw InternalError("player 2 witness failed verification");
    }
    for (std::size_t s = 0; s < k; ++s) {
      if (auto zero = first_zero(g.at(s))) {
        report.witnesses.push_back({Player::kTwo, s, *zero, g});
        break;
      }
    }
  }

  report.completely_mixed = report.witnesses.empty();
  if (!report.witnesses.empty()) report.witness = report.witnesses.front();
  return report;
}

// ---------------------------------------------------------------------------
// Vanishing discount

Rational vanishing_value_tolerance() { return pow2_neg(10); }
Rational vanishing_strategy_tolerance() { return pow2_neg(14); }

std::vector<Rational> default_schedule(unsigned n_max) {
  std::vector<Rational> out;
  for (unsigned n = 1; n <= n_max; ++n) out.push_back(1 - pow2_neg(n));
  return out;
}

namespace {

// Points used for the extrapolation to beta = 1.
constexpr std::size_t kExtrapolationPoints = 5;

// Value at h = 0 of the interpolating polynomial through (h[k], x[k]).
Rational extrapolate_to_zero(const Vec& h, Vec x) {
  for (std::size_t level = 1; level < x.size(); ++level) {
    for (std::size_t k = x.size() - 1; k >= level; --k) {
      x[k] = (h[k] * x[k - 1] - h[k - level] * x[k]) / (h[k] - h[k - level]);
    }
  }
  return x.back();
}

// Exact limit guess for x(h) as h -> 0: extrapolate with all points and
// with one point fewer, and take the simplest rational within twice their
// gap of the better estimate.
Rational declare_limit(const Vec& h, const Vec& x) {
  if (x.size() < 2) return x.back();
  const Rational best = extrapolate_to_zero(h, x);
  const Rational coarse = extrapolate_to_zero(Vec(h.begin() + 1, h.end()),
                                              Vec(x.begin() + 1, x.end()));
  const Rational gap = abs(best - coarse);
  if (gap == 0) return best;
  return simplest_in_interval(best - 2 * gap, best + 2 * gap);
}

std::vector<bool> support_of(const StationaryStrategy& st) {
  std::vector<bool> out;
  for (const auto& p : st.probs)
    for (const auto& x : p) out.push_back(x != 0);
  return out;
}

// Declares the coordinate-wise limit of a strategy sequence (h[k] = 1 -
// beta of seq[k]), or explains why it cannot.
std::optional<StationaryStrategy> strategy_limit(
    const Vec& h, const std::vector<const StationaryStrategy*>& seq,
    std::string* why) {
  const std::size_t n = seq.size();
  const auto support = support_of(*seq[n - 1]);
  if (support_of(*seq[n - 2]) != support || support_of(*seq[n - 3]) != support) {
    *why = "strategy supports did not stabilize over the last 3 steps";
    return std::nullopt;
  }
  const StationaryStrategy& last = *seq[n - 1];
  const StationaryStrategy& prev = *seq[n - 2];
  StationaryStrategy limit;
  for (std::size_t s = 0; s < last.state_count(); ++s) {
    Vec coords;
    for (std::size_t a = 0; a < last.at(s).size(); ++a) {
      if (abs(last.at(s)[a] - prev.at(s)[a]) > vanishing_strategy_tolerance()) {
        *why = "strategy coordinates have not converged";
        return std::nullopt;
      }
      Vec x;
      for (const StationaryStrategy* st : seq) x.push_back(st->at(s)[a]);
      coords.push_back(declare_limit(h, x));
    }
    if (sum(coords) != 1) {
      *why = "reconstructed limit strategy does not sum to 1";
      return std::nullopt;
    }
    limit.probs.push_back(std::move(coords));
  }
  return limit;
}

}  // namespace

VanishingDiscountTrace vanishing_discount(const StochasticGame& game,
                                          const std::vector<Rational>& schedule) {
  require_player_two_control(game, "vanishing_discount");
  for (std::size_t n = 0; n < schedule.size(); ++n) {
    Discount check(schedule[n]);
    if (n > 0 && schedule[n] <= schedule[n - 1]) {
      throw ValidationError("discount schedule must be strictly increasing");
    }
  }
  VanishingDiscountTrace trace;
  for (const auto& beta : schedule) {
    VanishingStep step;
    step.beta = beta;
    step.solution = solve_discounted_exact(game, Discount(beta));
    step.normalized = normalized_values(step.solution);
    trace.steps.push_back(std::move(step));
  }
  if (trace.steps.size() < 3) {
    trace.diagnosis = "schedule needs at least 3 discount factors";
    return trace;
  }

  const std::size_t n = trace.steps.size();
  const ValueVector& last = trace.steps[n - 1].normalized;
  const ValueVector& prev = trace.steps[n - 2].normalized;
  for (std::size_t s = 0; s < game.state_count(); ++s) {
    if (abs(last[s] - prev[s]) > vanishing_value_tolerance()) {
      trace.diagnosis = "normalized values have not converged";
      return trace;
    }
  }

  const std::size_t first = n - std::min(n, kExtrapolationPoints);
  Vec h;
  std::vector<const StationaryStrategy*> fs, gs;
  for (std::size_t m = first; m < n; ++m) {
    h.push_back(1 - trace.steps[m].beta);
    fs.push_back(&trace.steps[m].solution.p1_strategy);
    gs.push_back(&trace.steps[m].solution.p2_strategy);
  }
  std::string why;
  auto f0 = strategy_limit(h, fs, &why);
  auto g0 = f0 ? strategy_limit(h, gs, &why) : std::nullopt;
  if (!f0 || !g0) {
    trace.diagnosis = why;
    return trace;
  }
  trace.f0 = std::move(*f0);
  trace.g0 = std::move(*g0);

  // The limit is certified only through the pair: if (f0, g0) is optimal,
  // Phi(f0, g0) is the undiscounted value exactly.
  trace.verification = verify_optimal_undiscounted(game, trace.f0, trace.g0);
  if (!trace.verification->optimal) {
    trace.diagnosis = "limit strategy pair failed undiscounted verification";
    return trace;
  }
  for (std::size_t s = 0; s < game.state_count(); ++s) {
    if (abs(last[s] - trace.verification->value[s]) > vanishing_value_tolerance()) {
      trace.diagnosis = "certified value is outside the tolerance of the last step";
      return trace;
    }
  }
  trace.limit_values = trace.verification->value;
  trace.f0_optimal = best_response_value_p2(game, trace.f0) == trace.limit_values;
  trace.status = Convergence::kConverged;
  trace.diagnosis = "converged";
  return trace;
}

// ---------------------------------------------------------------------------
// Threshold search and theorem verifiers

std::vector<Rational> default_grid() {
  return {Rational(1, 2), Rational(3, 4), Rational(9, 10), Rational(99, 100),
          Rational(999, 1000)};
}

ThresholdSearch beta_threshold_search(const StochasticGame& game,
                                      const std::vector<Rational>& grid) {
  ThresholdSearch out;
  out.grid = grid;
  std::sort(out.grid.begin(), out.grid.end());
  for (const auto& beta : out.grid) {
    out.reports.push_back(check_cm_discounted(game, Discount(beta)));
    out.cm_flags.push_back(out.reports.back().completely_mixed);
  }
  out.cm_for_all = std::all_of(out.cm_flags.begin(), out.cm_flags.end(),
                               [](bool b) { return b; });
  for (std::size_t n = out.grid.size(); n-- > 0;) {
    if (!out.cm_flags[n]) break;
    out.beta0 = out.grid[n];
  }
  return out;
}

Theorem11Result theorem11_verify(const StochasticGame& game) {
  Theorem11Result out;
  out.all_symmetric = true;
  for (std::size_t s = 0; s < game.state_count(); ++s) {
    out.all_symmetric = out.all_symmetric && game.payoff(s).is_symmetric();
    out.per_state_cm.push_back(is_completely_mixed(game.payoff(s)).completely_mixed);
  }
  if (game.player_two_controlled()) {
    out.undiscounted_cm = check_cm_undiscounted(game).completely_mixed;
  }
  out.applicable = out.all_symmetric && out.undiscounted_cm;
  out.pass = !out.applicable ||
             std::all_of(out.per_state_cm.begin(), out.per_state_cm.end(),
                         [](bool b) { return b; });
  return out;
}

Theorem13Result theorem13_verify(const StochasticGame& game,
                                 const std::vector<Rational>& grid) {
  require_player_two_control(game, "theorem13_verify");
  VanishingDiscountTrace trace = vanishing_discount(game, default_schedule());
  if (trace.status != Convergence::kConverged) {
    throw Inconclusive("vanishing-discount limit not certified: " +
                       trace.diagnosis);
  }
  Theorem13Result out;
  out.grid = grid;
  std::sort(out.grid.begin(), out.grid.end());
  std::vector<ValueVector> v_beta;
  for (const auto& beta : out.grid)
    v_beta.push_back(solve_discounted_exact(game, Discount(beta)).values);

  out.pass = true;
  for (std::size_t s = 0; s < game.state_count(); ++s) {
    Theorem13State st;
    st.value = trace.limit_values[s];
    for (std::size_t n = 0; n < out.grid.size(); ++n) {
      st.v_beta.push_back(v_beta[n][s]);
      st.nonzero.push_back(v_beta[n][s] != 0);
      if (v_beta[n][s] == 0) st.last_zero_beta = out.grid[n];
    }
    const bool any_nonzero =
        std::any_of(st.nonzero.begin(), st.nonzero.end(), [](bool b) { return b; });
    st.converse_violation = st.value == 0 && any_nonzero;
    // v(s) != 0 needs nonzero v_beta(s) beyond the last zero on the grid.
    st.pass = st.value == 0 || out.grid.empty() || st.nonzero.back();
    out.pass = out.pass && st.pass;
    out.states.push_back(std::move(st));
  }
  return out;
}

}  // namespace cmstoch
