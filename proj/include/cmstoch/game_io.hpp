#pragma once

#include <string>
#include <string_view>

#include "json.hpp"

#include "cmstoch/game.hpp"
#include "cmstoch/linalg.hpp"

namespace cmstoch {

// Game file format (UTF-8 JSON, 1-indexed names):
//   {"states": K, "actions_p1": [..], "actions_p2": [..],
//    "payoff": {"s1": [["p/q", ..], ..], ..},
//    "transitions": {"s1": {"i,j": ["p/q", .. K entries ..], ..}, ..}}
StochasticGame parse_game(std::string_view text);
StochasticGame load_game(const std::string& path);

// Canonical serialization; parse_game(serialize_game(g)) == g.
std::string serialize_game(const StochasticGame& game);
nlohmann::json game_to_json(const StochasticGame& game);

// Rationals inside JSON: strings "p/q" (integers also accepted as JSON
// numbers on input).
Rational rational_from_json(const nlohmann::json& value);
nlohmann::json to_json(const Rational& value);
nlohmann::json to_json(const Vec& values);
nlohmann::json to_json(const Matrix& m);
nlohmann::json to_json(const StationaryStrategy& strategy);

// A matrix as a JSON array of rows.
Matrix parse_matrix(std::string_view text);
Matrix matrix_from_json(const nlohmann::json& value);

// Strategy file: JSON array of per-state probability arrays.
StationaryStrategy parse_strategy(std::string_view text);
StationaryStrategy load_strategy(const std::string& path);

std::string read_file(const std::string& path);

}  // namespace cmstoch
