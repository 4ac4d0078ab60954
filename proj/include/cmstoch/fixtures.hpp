#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "cmstoch/game.hpp"
#include "cmstoch/linalg.hpp"

namespace cmstoch::fixtures {

// Names accepted by `reproduce --example`: lemma2, example9, example14,
// example15.
const std::vector<std::string>& names();
bool is_known(std::string_view name);

// Game file text of the three stochastic-game fixtures.
std::string game_text(std::string_view name);
StochasticGame game(std::string_view name);

// Column-shift counterexample: A = [[1,2],[2,1]], b = (1,2).
Matrix lemma2_matrix();
Vec lemma2_shift();

}  // namespace cmstoch::fixtures
