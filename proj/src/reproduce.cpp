#include "cmstoch/reproduce.hpp"

#include <string>
#include <utility>

#include "cmstoch/cm_analysis.hpp"
#include "cmstoch/errors.hpp"
#include "cmstoch/fixtures.hpp"
#include "cmstoch/game_io.hpp"

namespace cmstoch {
namespace {

using nlohmann::json;

class Checklist {
 public:
  void add(std::string claim, json expected, json observed) {
    const bool pass = expected == observed;
    all_pass_ = all_pass_ && pass;
    checks_.push_back({{"claim", std::move(claim)},
                       {"expected", std::move(expected)},
                       {"observed", std::move(observed)},
                       {"pass", pass}});
  }
  void annotate(std::string note) { annotations_.push_back(std::move(note)); }

  json finish(std::string_view name) const {
    return {{"fixture", std::string(name)},
            {"checks", checks_},
            {"annotations", annotations_},
            {"pass", all_pass_}};
  }

 private:
  json checks_ = json::array();
  json annotations_ = json::array();
  bool all_pass_ = true;
};

StationaryStrategy make(std::vector<Vec> rows) {
  StationaryStrategy s;
  s.probs = std::move(rows);
  return s;
}

json vertices(const std::vector<Vec>& vs) {
  json out = json::array();
  for (const auto& v : vs) out.push_back(to_json(v));
  return out;
}

json flags(const std::vector<bool>& v) {
  json out = json::array();
  for (bool b : v) out.push_back(b);
  return out;
}

json all_true(std::size_t n) { return flags(std::vector<bool>(n, true)); }
json all_false(std::size_t n) { return flags(std::vector<bool>(n, false)); }

const Rational kHalf(1, 2);

json run_lemma2() {
  Checklist c;
  const Matrix a = fixtures::lemma2_matrix();
  const Vec b = fixtures::lemma2_shift();
  const Vec half{kHalf, kHalf};

  const MatrixGameSolution sa = solve_matrix_game(a);
  c.add("val(A)", "3/2", to_string(sa.value));
  c.add("A completely mixed", true, sa.completely_mixed);
  c.add("A optimal strategies (player 1)", vertices({half}),
        vertices(sa.p1_vertices));
  c.add("A optimal strategies (player 2)", vertices({half}),
        vertices(sa.p2_vertices));
  c.add("Kaplansky value of A", json{{"status", "ok"}, {"value", "3/2"}},
        [&] {
          const KaplanskyResult k = kaplansky_value(a);
          return json{{"status", to_string(k.status)},
                      {"value", to_string(k.value)}};
        }());

  const Matrix cm = column_shift(a, b);
  c.add("C = A + column shift", to_json(Matrix{{2, 4}, {3, 3}}), to_json(cm));
  const MatrixGameSolution sc = solve_matrix_game(cm);
  c.add("val(C)", "3", to_string(sc.value));
  c.add("C completely mixed", false, sc.completely_mixed);
  c.add("C optimal strategies (player 1)", vertices({Vec{0, 1}}),
        vertices(sc.p1_vertices));
  c.add("C optimal strategies (player 2)",
        vertices({Vec{1, 0}, half}), vertices(sc.p2_vertices));

  const Lemma2Result l = lemma2_reduce(a, b);
  c.add("reduction applicable (C completely mixed)", false, l.applicable);
  c.add("equalizer x^T A = val(A) e^T at (1/2,1/2)", true,
        equalizer_check(a, half, half, sa.value).equalized);
  return c.finish("lemma2");
}

json run_example9() {
  Checklist c;
  const StochasticGame g = fixtures::game("example9");
  const Discount half(kHalf);

  const DiscountedSolution exact = solve_discounted_exact(g, half);
  c.add("v_beta at beta=1/2", to_json(Vec{Rational(5, 2), 2}),
        to_json(exact.values));
  c.add("R_beta(s1) at beta=1/2", to_json(Matrix{{1, 3}, {4, 2}}),
        to_json(auxiliary_matrix(g, 0, half, exact.values)));
  c.add("fixed-point residual", "0", to_string(exact.residual));

  const ThresholdSearch ts = beta_threshold_search(g, default_grid());
  c.add("discounted game completely mixed on grid",
        all_true(ts.grid.size()), flags(ts.cm_flags));

  const StationaryStrategy f = make({{1, 0}, {kHalf, kHalf}});
  const StationaryStrategy gcm =
      make({{Rational(1, 4), Rational(3, 4)}, {kHalf, kHalf}});
  const UndiscountedVerification ver = verify_optimal_undiscounted(g, f, gcm);
  c.add("f = ((1,0),(1/2,1/2)) optimal against the mixed g", true,
        ver.optimal);
  c.add("undiscounted value", to_json(Vec{1, 1}), to_json(ver.value));

  const CmReport und = check_cm_undiscounted(g);
  c.add("undiscounted game completely mixed", false, und.completely_mixed);
  bool witness_has_zero = false;
  if (und.witness) {
    const Vec& p = und.witness->strategy.at(und.witness->state);
    witness_has_zero = p.at(und.witness->action) == 0;
  }
  c.add("witness has a zero coordinate", true, witness_has_zero);
  return c.finish("example9");
}

json run_example14() {
  Checklist c;
  const StochasticGame g = fixtures::game("example14");
  const Vec half{kHalf, kHalf};
  const std::vector<Rational> grid = default_grid();

  json expected_values = json::array();
  json observed_values = json::array();
  bool unique_half = true;
  for (const Rational& beta : grid) {
    const DiscountedSolution sol = solve_discounted_exact(g, Discount(beta));
    const Rational closed = 1 / (1 - beta);
    expected_values.push_back(to_json(Vec{closed, closed}));
    observed_values.push_back(to_json(sol.values));
    for (const MatrixGameSolution& aux : sol.auxiliary) {
      unique_half = unique_half && aux.p1_vertices == std::vector<Vec>{half} &&
                    aux.p2_vertices == std::vector<Vec>{half};
    }
  }
  c.add("v_beta = 1/(1-beta) in both states", expected_values,
        observed_values);
  c.add("unique optimal strategy (1/2,1/2) everywhere", true, unique_half);

  const ThresholdSearch ts = beta_threshold_search(g, grid);
  c.add("discounted game completely mixed on grid", all_true(grid.size()),
        flags(ts.cm_flags));
  c.add("undiscounted game completely mixed", true,
        check_cm_undiscounted(g).completely_mixed);

  const Theorem11Result t11 = theorem11_verify(g);
  c.add("symmetric-payoff theorem applicable", true, t11.applicable);
  c.add("every R(s) completely mixed", all_true(g.state_count()),
        flags(t11.per_state_cm));
  c.add("symmetric-payoff theorem holds", true, t11.pass);
  return c.finish("example14");
}

json run_example15() {
  Checklist c;
  const StochasticGame g = fixtures::game("example15");
  const std::vector<Rational> grid = default_grid();

  json aux_values = json::array();
  for (const Rational& beta : grid) {
    const DiscountedSolution sol = solve_discounted_exact(g, Discount(beta));
    aux_values.push_back(to_string(sol.auxiliary.at(0).value));
  }
  json expected_aux = json::array();
  for (std::size_t k = 0; k < grid.size(); ++k) expected_aux.push_back("2");
  c.add("val(R_beta(s1)) on grid", expected_aux, aux_values);
  c.annotate(
      "val(R_beta(s1)) is 2 at every beta: row 1 of R_beta(s1) dominates "
      "row 2. The reference claim of 3 is not reproduced; v(s1) = 0 holds "
      "either way.");

  const VanishingDiscountTrace trace =
      vanishing_discount(g, default_schedule(20));
  const Rational last_normalized = trace.steps.back().normalized.at(0);
  c.add("|(1-beta_20) v_beta_20(s1)| <= 2^-10", true,
        abs(last_normalized) <= vanishing_value_tolerance());
  c.add("vanishing-discount limit declared", "converged",
        trace.status == Convergence::kConverged ? "converged" : "inconclusive");
  c.add("undiscounted v(s1)", "0",
        trace.status == Convergence::kConverged
            ? json(to_string(trace.limit_values.at(0)))
            : json(nullptr));

  const Theorem13Result t13 = theorem13_verify(g, grid);
  c.add("v_beta(s1) != 0 on grid", all_true(grid.size()),
        flags(t13.states.at(0).nonzero));
  c.add("converse violation reported at s1", true,
        t13.states.at(0).converse_violation);

  const ThresholdSearch ts = beta_threshold_search(g, grid);
  c.add("discounted game completely mixed on grid", all_false(grid.size()),
        flags(ts.cm_flags));
  return c.finish("example15");
}

}  // namespace

json reproduce_fixture(std::string_view name) {
  if (name == "lemma2") return run_lemma2();
  if (name == "example9") return run_example9();
  if (name == "example14") return run_example14();
  if (name == "example15") return run_example15();
  throw ValidationError("unknown fixture '" + std::string(name) +
                        "'; expected one of lemma2, example9, example14, "
                        "example15");
}

}  // namespace cmstoch
