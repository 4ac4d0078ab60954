#include "cmstoch/game_io.hpp"

#include <fstream>
#include <sstream>

#include "cmstoch/errors.hpp"

namespace cmstoch {

using nlohmann::json;

namespace {

json parse_json(std::string_view text) {
  try {
    return json::parse(text.begin(), text.end());
  } catch (const json::parse_error& e) {
    throw ParseError(e.what(), e.byte);
  }
}

const json& require(const json& obj, const std::string& key) {
  if (!obj.is_object() || !obj.contains(key)) {
    throw ValidationError("missing field '" + key + "'");
  }
  return obj.at(key);
}

std::size_t positive_count(const json& value, const std::string& what) {
  if (!value.is_number_integer() || value.get<long long>() < 1) {
    throw ValidationError(what + " must be a positive integer");
  }
  return static_cast<std::size_t>(value.get<long long>());
}

std::string state_key(std::size_t s) { return "s" + std::to_string(s + 1); }

}  // namespace

Rational rational_from_json(const json& value) {
  if (value.is_string()) {
    try {
      return parse_rational(value.get<std::string>());
    } catch (const ParseError& e) {
      throw ValidationError("malformed rational '" + value.get<std::string>() +
                            "'");
    }
  }
  if (value.is_number_integer()) return Rational(value.get<long>());
  throw ValidationError("expected a rational string, got " + value.dump());
}

json to_json(const Rational& value) { return to_string(value); }

json to_json(const Vec& values) {
  json out = json::array();
  for (const auto& v : values) out.push_back(to_string(v));
  return out;
}

json to_json(const Matrix& m) {
  json out = json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) out.push_back(to_json(m.row(r)));
  return out;
}

json to_json(const StationaryStrategy& strategy) {
  json out = json::array();
  for (const auto& p : strategy.probs) out.push_back(to_json(p));
  return out;
}

Matrix matrix_from_json(const json& value) {
  if (!value.is_array() || value.empty()) {
    throw ValidationError("matrix must be a non-empty array of rows");
  }
  std::vector<Vec> rows;
  for (const auto& row : value) {
    if (!row.is_array() || row.empty()) {
      throw ValidationError("matrix rows must be non-empty arrays");
    }
    Vec r;
    for (const auto& x : row) r.push_back(rational_from_json(x));
    if (!rows.empty() && r.size() != rows.front().size()) {
      throw ValidationError("matrix rows have different lengths");
    }
    rows.push_back(std::move(r));
  }
  return Matrix::from_rows(rows);
}

Matrix parse_matrix(std::string_view text) {
  return matrix_from_json(parse_json(text));
}

StochasticGame parse_game(std::string_view text) {
  json doc = parse_json(text);
  if (!doc.is_object()) throw ValidationError("game file must be an object");

  const std::size_t k = positive_count(require(doc, "states"), "states");
  const json& a1 = require(doc, "actions_p1");
  const json& a2 = require(doc, "actions_p2");
  if (!a1.is_array() || a1.size() != k || !a2.is_array() || a2.size() != k) {
    throw ValidationError("actions_p1/actions_p2 must list one count per state");
  }
  const json& payoff = require(doc, "payoff");
  const json& transitions = require(doc, "transitions");

  std::vector<Matrix> matrices;
  std::vector<std::vector<Vec>> table;
  for (std::size_t s = 0; s < k; ++s) {
    const std::string key = state_key(s);
    const std::size_t m1 = positive_count(a1[s], "actions_p1[" + key + "]");
    const std::size_t m2 = positive_count(a2[s], "actions_p2[" + key + "]");
    Matrix r = matrix_from_json(require(payoff, key));
    if (r.rows() != m1 || r.cols() != m2) {
      throw ValidationError("payoff matrix of " + key + " is " +
                            std::to_string(r.rows()) + "x" +
                            std::to_string(r.cols()) + ", expected " +
                            std::to_string(m1) + "x" + std::to_string(m2));
    }
    const json& rows = require(transitions, key);
    if (!rows.is_object() || rows.size() != m1 * m2) {
      throw ValidationError("transitions of " + key + " must list all " +
                            std::to_string(m1 * m2) + " action pairs");
    }
    std::vector<Vec> per_pair;
    for (std::size_t i = 0; i < m1; ++i) {
      for (std::size_t j = 0; j < m2; ++j) {
        const std::string pair =
            std::to_string(i + 1) + "," + std::to_string(j + 1);
        if (!rows.contains(pair)) {
          throw ValidationError("transitions of " + key +
                                " missing action pair " + pair);
        }
        const json& q = rows.at(pair);
        if (!q.is_array()) {
          throw ValidationError("transition row " + key + " " + pair +
                                " must be an array");
        }
        Vec v;
        for (const auto& x : q) v.push_back(rational_from_json(x));
        per_pair.push_back(std::move(v));
      }
    }
    matrices.push_back(std::move(r));
    table.push_back(std::move(per_pair));
  }
  return StochasticGame(std::move(matrices), std::move(table));
}

json game_to_json(const StochasticGame& game) {
  json doc;
  const std::size_t k = game.state_count();
  doc["states"] = k;
  json a1 = json::array(), a2 = json::array();
  json payoff = json::object(), transitions = json::object();
  for (std::size_t s = 0; s < k; ++s) {
    a1.push_back(game.actions_p1(s));
    a2.push_back(game.actions_p2(s));
    payoff[state_key(s)] = to_json(game.payoff(s));
    json rows = json::object();
    for (std::size_t i = 0; i < game.actions_p1(s); ++i)
      for (std::size_t j = 0; j < game.actions_p2(s); ++j)
        rows[std::to_string(i + 1) + "," + std::to_string(j + 1)] =
            to_json(game.transition(s, i, j));
    transitions[state_key(s)] = std::move(rows);
  }
  doc["actions_p1"] = std::move(a1);
  doc["actions_p2"] = std::move(a2);
  doc["payoff"] = std::move(payoff);
  doc["transitions"] = std::move(transitions);
  return doc;
}

std::string serialize_game(const StochasticGame& game) {
  return game_to_json(game).dump(2) + "\n";
}

StationaryStrategy parse_strategy(std::string_view text) {
  json doc = parse_json(text);
  if (!doc.is_array()) {
    throw ValidationError("strategy must be an array of per-state vectors");
  }
  StationaryStrategy out;
  for (const auto& p : doc) {
    if (!p.is_array()) {
      throw ValidationError("strategy entries must be arrays");
    }
    Vec v;
    for (const auto& x : p) v.push_back(rational_from_json(x));
    out.probs.push_back(std::move(v));
  }
  return out;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

StochasticGame load_game(const std::string& path) {
  return parse_game(read_file(path));
}

StationaryStrategy load_strategy(const std::string& path) {
  return parse_strategy(read_file(path));
}

}  // namespace cmstoch
