#include "cmstoch/fixtures.hpp"

#include <algorithm>

#include "cmstoch/errors.hpp"
#include "cmstoch/game_io.hpp"

namespace cmstoch::fixtures {
namespace {

// Two states, every action pair moves to s2, which is absorbing.
constexpr const char* kExample9 = R"({
  "states": 2,
  "actions_p1": [2, 2],
  "actions_p2": [2, 2],
  "payoff": {"s1": [["0", "2"], ["3", "1"]],
             "s2": [["2", "0"], ["0", "2"]]},
  "transitions": {
    "s1": {"1,1": ["0", "1"], "1,2": ["0", "1"], "2,1": ["0", "1"], "2,2": ["0", "1"]},
    "s2": {"1,1": ["0", "1"], "1,2": ["0", "1"], "2,1": ["0", "1"], "2,2": ["0", "1"]}
  }
})";

// Symmetric payoffs; column 1 moves to s1, column 2 to s2.
constexpr const char* kExample14 = R"({
  "states": 2,
  "actions_p1": [2, 2],
  "actions_p2": [2, 2],
  "payoff": {"s1": [["2", "0"], ["0", "2"]],
             "s2": [["3", "-1"], ["-1", "3"]]},
  "transitions": {
    "s1": {"1,1": ["1", "0"], "1,2": ["0", "1"], "2,1": ["1", "0"], "2,2": ["0", "1"]},
    "s2": {"1,1": ["1", "0"], "1,2": ["0", "1"], "2,1": ["1", "0"], "2,2": ["0", "1"]}
  }
})";

// Three states; from s1 column 1 moves to s2 and column 2 to s3. s2 and s3
// are absorbing.
constexpr const char* kExample15 = R"({
  "states": 3,
  "actions_p1": [2, 2, 2],
  "actions_p2": [2, 2, 2],
  "payoff": {"s1": [["4", "2"], ["3", "1"]],
             "s2": [["2", "0"], ["0", "2"]],
             "s3": [["1", "-1"], ["-1", "1"]]},
  "transitions": {
    "s1": {"1,1": ["0", "1", "0"], "1,2": ["0", "0", "1"],
           "2,1": ["0", "1", "0"], "2,2": ["0", "0", "1"]},
    "s2": {"1,1": ["0", "1", "0"], "1,2": ["0", "1", "0"],
           "2,1": ["0", "1", "0"], "2,2": ["0", "1", "0"]},
    "s3": {"1,1": ["0", "0", "1"], "1,2": ["0", "0", "1"],
           "2,1": ["0", "0", "1"], "2,2": ["0", "0", "1"]}
  }
})";

}  // namespace

const std::vector<std::string>& names() {
  static const std::vector<std::string> kNames = {"lemma2", "example9",
                                                  "example14", "example15"};
  return kNames;
}

bool is_known(std::string_view name) {
  const auto& all = names();
  return std::find(all.begin(), all.end(), name) != all.end();
}

std::string game_text(std::string_view name) {
  if (name == "example9") return kExample9;
  if (name == "example14") return kExample14;
  if (name == "example15") return kExample15;
  throw ValidationError("no game fixture named '" + std::string(name) + "'");
}

StochasticGame game(std::string_view name) { return parse_game(game_text(name)); }

Matrix lemma2_matrix() { return Matrix{{1, 2}, {2, 1}}; }
Vec lemma2_shift() { return {1, 2}; }

}  // namespace cmstoch::fixtures
