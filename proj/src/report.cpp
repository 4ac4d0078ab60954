#include "cmstoch/report.hpp"

#include <cstdint>
#include <cstdio>

#include "cmstoch/game_io.hpp"

namespace cmstoch::report {
namespace {

json vertices(const std::vector<Vec>& list) {
  json out = json::array();
  for (const auto& v : list) out.push_back(cmstoch::to_json(v));
  return out;
}

const char* player_name(Player p) { return p == Player::kOne ? "player1" : "player2"; }

}  // namespace

json encode(const CmCertificate& cert) {
  return {{"square", cert.square},
          {"p1_unique", cert.p1_unique},
          {"p2_unique", cert.p2_unique},
          {"p1_positive", cert.p1_positive},
          {"p2_positive", cert.p2_positive},
          {"reason", cert.reason}};
}

json encode(const MatrixGameSolution& sol) {
  return {{"value", to_string(sol.value)},
          {"p1_vertices", vertices(sol.p1_vertices)},
          {"p2_vertices", vertices(sol.p2_vertices)},
          {"completely_mixed", sol.completely_mixed},
          {"certificate", encode(sol.certificate)}};
}

json encode(const KaplanskyResult& result) {
  json out = {{"status", to_string(result.status)}};
  if (result.status == KaplanskyStatus::kOk ||
      result.status == KaplanskyStatus::kInconsistent) {
    out["determinant"] = to_string(result.determinant);
    out["cofactor_sum"] = to_string(result.cofactor_sum);
  }
  if (result.status == KaplanskyStatus::kOk) out["value"] = to_string(result.value);
  return out;
}

json encode(const Lemma2Result& result) {
  json out = {{"applicable", result.applicable},
              {"shifted", cmstoch::to_json(result.shifted)},
              {"shifted_value", to_string(result.shifted_value)},
              {"shifted_certificate", encode(result.shifted_certificate)}};
  if (result.applicable) {
    out["delta"] = to_string(result.delta);
    out["y"] = cmstoch::to_json(result.y);
    out["a_completely_mixed"] = result.a_completely_mixed;
    out["equalizes"] = result.equalizes;
    out["a_nonsingular"] = result.a_nonsingular;
  }
  return out;
}

json encode(const DiscountedSolution& sol) {
  json aux = json::array();
  for (const auto& a : sol.auxiliary) aux.push_back(encode(a));
  return {{"beta", to_string(sol.beta)},
          {"values", cmstoch::to_json(sol.values)},
          {"normalized_values", cmstoch::to_json(normalized_values(sol))},
          {"p1_strategy", cmstoch::to_json(sol.p1_strategy)},
          {"p2_strategy", cmstoch::to_json(sol.p2_strategy)},
          {"residual", to_string(sol.residual)},
          {"exact", sol.exact},
          {"iterations", sol.iterations},
          {"iteration_bound", sol.iteration_bound},
          {"auxiliary", aux}};
}

json encode(const UndiscountedVerification& v) {
  return {{"optimal", v.optimal},
          {"value", cmstoch::to_json(v.value)},
          {"p1_gap", cmstoch::to_json(v.p1_gap)},
          {"p2_gap", cmstoch::to_json(v.p2_gap)}};
}

json encode(const CmWitness& w) {
  return {{"player", player_name(w.player)},
          {"state", w.state + 1},
          {"action", w.action + 1},
          {"strategy", cmstoch::to_json(w.strategy)}};
}

json encode(const CmReport& r) {
  json out = {{"completely_mixed", r.completely_mixed},
              {"value", cmstoch::to_json(r.value)}};
  if (r.beta) {
    out["beta"] = to_string(*r.beta);
    json states = json::array();
    for (std::size_t s = 0; s < r.states.size(); ++s) {
      states.push_back({{"state", s + 1},
                        {"auxiliary", cmstoch::to_json(r.states[s].auxiliary)},
                        {"solution", encode(r.states[s].solution)}});
    }
    out["states"] = states;
  } else {
    json ws = json::array();
    for (const auto& w : r.witnesses) ws.push_back(encode(w));
    out["witnesses"] = ws;
    out["patterns_examined"] = r.patterns_examined;
    out["feasible_patterns"] = r.feasible_patterns;
    if (r.p1_optimal) out["p1_optimal"] = cmstoch::to_json(*r.p1_optimal);
    if (r.p2_optimal) out["p2_optimal"] = cmstoch::to_json(*r.p2_optimal);
  }
  out["witness"] = r.witness ? encode(*r.witness) : json(nullptr);
  return out;
}

json encode(const VanishingDiscountTrace& trace, bool include_steps) {
  json out = {{"status", trace.status == Convergence::kConverged ? "converged"
                                                                 : "inconclusive"},
              {"diagnosis", trace.diagnosis}};
  if (include_steps) {
    json steps = json::array();
    for (const auto& st : trace.steps) {
      steps.push_back({{"beta", to_string(st.beta)},
                       {"values", cmstoch::to_json(st.solution.values)},
                       {"normalized", cmstoch::to_json(st.normalized)},
                       {"p1_strategy", cmstoch::to_json(st.solution.p1_strategy)},
                       {"p2_strategy", cmstoch::to_json(st.solution.p2_strategy)}});
    }
    out["steps"] = steps;
  }
  if (trace.status == Convergence::kConverged) {
    out["limit_values"] = cmstoch::to_json(trace.limit_values);
    out["f0"] = cmstoch::to_json(trace.f0);
    out["g0"] = cmstoch::to_json(trace.g0);
    out["f0_optimal"] = trace.f0_optimal;
    out["verification"] = encode(*trace.verification);
  } else if (trace.verification) {
    out["rejected_pair"] = {{"f0", cmstoch::to_json(trace.f0)},
                            {"g0", cmstoch::to_json(trace.g0)},
                            {"verification", encode(*trace.verification)}};
  }
  if (!trace.steps.empty()) {
    out["last_normalized"] = cmstoch::to_json(trace.steps.back().normalized);
  }
  return out;
}

json encode(const ThresholdSearch& search) {
  json grid = json::array();
  for (std::size_t n = 0; n < search.grid.size(); ++n) {
    grid.push_back({{"beta", to_string(search.grid[n])},
                    {"completely_mixed", search.cm_flags[n]},
                    {"report", encode(search.reports[n])}});
  }
  return {{"grid", grid},
          {"cm_for_all_tested", search.cm_for_all},
          {"beta0", search.beta0 ? json(to_string(*search.beta0)) : json(nullptr)}};
}

json encode(const Theorem11Result& result) {
  return {{"all_symmetric", result.all_symmetric},
          {"undiscounted_cm", result.undiscounted_cm},
          {"applicable", result.applicable},
          {"per_state_cm", result.per_state_cm},
          {"pass", result.pass}};
}

json encode(const Theorem13Result& result) {
  json states = json::array();
  for (std::size_t s = 0; s < result.states.size(); ++s) {
    const auto& st = result.states[s];
    states.push_back(
        {{"state", s + 1},
         {"value", to_string(st.value)},
         {"v_beta", cmstoch::to_json(st.v_beta)},
         {"nonzero", st.nonzero},
         {"last_zero_beta",
          st.last_zero_beta ? json(to_string(*st.last_zero_beta)) : json(nullptr)},
         {"converse_violation", st.converse_violation},
         {"pass", st.pass}});
  }
  return {{"grid", cmstoch::to_json(result.grid)},
          {"states", states},
          {"pass", result.pass}};
}

std::string fingerprint(std::string_view bytes) {
  std::uint64_t hash = 14695981039346656037ull;
  for (unsigned char c : bytes) {
    hash ^= c;
    hash *= 1099511628211ull;
  }
  char buf[32];
  std::snprintf(buf, sizeof buf, "fnv1a64:%016llx",
                static_cast<unsigned long long>(hash));
  return buf;
}

}  // namespace cmstoch::report
