#include "cmstoch/cli.hpp"

#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <ostream>
#include <sstream>

#include "CLI11.hpp"
#include "json.hpp"

#include "cmstoch/cm_analysis.hpp"
#include "cmstoch/errors.hpp"
#include "cmstoch/fixtures.hpp"
#include "cmstoch/game_io.hpp"
#include "cmstoch/report.hpp"
#include "cmstoch/reproduce.hpp"

namespace cmstoch {
namespace {

using nlohmann::json;

// What a command hands back to the dispatcher.
struct Outcome {
  std::string fingerprint;
  json results;
  int exit_code = kExitOk;
};

std::vector<Rational> parse_grid(const std::string& csv) {
  std::vector<Rational> grid;
  std::stringstream in(csv);
  std::string item;
  while (std::getline(in, item, ',')) {
    grid.push_back(parse_rational(item));
    Discount check(grid.back());
  }
  if (grid.empty()) throw ValidationError("--beta-grid is empty");
  return grid;
}

Vec parse_csv_vector(const std::string& csv) {
  Vec out;
  std::stringstream in(csv);
  std::string item;
  while (std::getline(in, item, ',')) out.push_back(parse_rational(item));
  return out;
}

struct MatrixArgs {
  std::string matrix;
  std::string file;
  std::string shift;
};

Outcome solve_matrix(const MatrixArgs& a) {
  if (a.matrix.empty() == a.file.empty()) {
    throw ValidationError("give exactly one of --matrix or a matrix file");
  }
  const std::string text = a.matrix.empty() ? read_file(a.file) : a.matrix;
  const Matrix m = parse_matrix(text);
  Outcome o;
  o.fingerprint = report::fingerprint(to_json(m).dump());
  o.results = report::encode(solve_matrix_game(m));
  o.results["kaplansky"] = report::encode(kaplansky_value(m));
  if (!a.shift.empty()) {
    o.results["lemma2"] = report::encode(lemma2_reduce(m, parse_csv_vector(a.shift)));
  }
  return o;
}

struct DiscountedArgs {
  std::string beta;
  std::string tol;
  std::string game;
  bool exact = false;
  bool iterate = false;
};

Outcome solve_discounted(const DiscountedArgs& a) {
  if (a.exact && a.iterate) {
    throw ValidationError("--exact and --iterate are mutually exclusive");
  }
  const StochasticGame game = load_game(a.game);
  const Discount d(parse_rational(a.beta));
  // Exact LP whenever the game is player-2 controlled, unless iteration is
  // forced; --exact turns a non-single-controller game into an error.
  const bool exact =
      a.exact || (!a.iterate && game.player_two_controlled());
  DiscountedSolution sol;
  if (exact) {
    sol = solve_discounted_exact(game, d);
  } else {
    const Rational tol = a.tol.empty() ? default_tolerance() : parse_rational(a.tol);
    if (tol <= 0) throw ValidationError("--tol must be positive");
    sol = shapley_iterate(game, d, tol);
  }
  Outcome o;
  o.fingerprint = report::fingerprint(serialize_game(game));
  o.results = report::encode(sol);
  o.results["controller"] = to_string(detect_controller(game));
  return o;
}

struct VerifyArgs {
  std::string f;
  std::string g;
  std::string game;
};

Outcome verify_undiscounted(const VerifyArgs& a) {
  const StochasticGame game = load_game(a.game);
  const StationaryStrategy f = load_strategy(a.f);
  const StationaryStrategy g = load_strategy(a.g);
  Outcome o;
  o.fingerprint = report::fingerprint(serialize_game(game));
  o.results = report::encode(verify_optimal_undiscounted(game, f, g));
  return o;
}

struct AnalyzeArgs {
  std::string game;
  std::optional<std::string> grid;
  unsigned schedule_n = 20;
  bool discounted = false;
  bool undiscounted = false;
  bool theorems = false;
};

std::vector<Rational> grid_or_default(const std::optional<std::string>& csv) {
  return csv ? parse_grid(*csv) : default_grid();
}

Outcome analyze(const AnalyzeArgs& a) {
  const StochasticGame game = load_game(a.game);
  const std::vector<Rational> grid = grid_or_default(a.grid);
  const bool all = !a.discounted && !a.undiscounted && !a.theorems;
  Outcome o;
  o.fingerprint = report::fingerprint(serialize_game(game));
  o.results = json::object();
  o.results["controller"] = to_string(detect_controller(game));
  if (all || a.discounted) {
    o.results["discounted"] = report::encode(beta_threshold_search(game, grid));
  }
  if (all || a.undiscounted) {
    o.results["undiscounted"] = report::encode(check_cm_undiscounted(game));
    const VanishingDiscountTrace trace =
        vanishing_discount(game, default_schedule(a.schedule_n));
    o.results["vanishing_discount"] = report::encode(trace, false);
    if (trace.status != Convergence::kConverged) o.exit_code = kExitInconclusive;
  }
  if (all || a.theorems) {
    o.results["theorem11"] = report::encode(theorem11_verify(game));
    o.results["theorem13"] = report::encode(theorem13_verify(game, grid));
  }
  return o;
}

struct TheoremArgs {
  std::string game;
  std::optional<std::string> grid;
};

Outcome verify_theorems(const TheoremArgs& a) {
  const StochasticGame game = load_game(a.game);
  const std::vector<Rational> grid = grid_or_default(a.grid);

  // Undiscounted CM implies discounted CM at every grid point.
  const CmReport und = check_cm_undiscounted(game);
  const ThresholdSearch search = beta_threshold_search(game, grid);
  const bool implication = !und.completely_mixed || search.cm_for_all;

  const Theorem11Result t11 = theorem11_verify(game);
  const Theorem13Result t13 = theorem13_verify(game, grid);

  Outcome o;
  o.fingerprint = report::fingerprint(serialize_game(game));
  o.results = {
      {"undiscounted_cm_implies_discounted_cm",
       {{"undiscounted_cm", und.completely_mixed},
        {"discounted_cm_on_grid", search.cm_for_all},
        {"pass", implication}}},
      {"theorem11", report::encode(t11)},
      {"theorem13", report::encode(t13)},
  };
  const bool pass = implication && t11.pass && t13.pass;
  o.results["pass"] = pass;
  o.exit_code = pass ? kExitOk : kExitFailure;
  return o;
}

struct ReproduceArgs {
  bool all = false;
  std::vector<std::string> examples;
  std::string emit_dir;
};

std::string fixture_input(const std::string& name) {
  if (name == "lemma2") {
    json j = {{"A", to_json(fixtures::lemma2_matrix())},
              {"b", to_json(fixtures::lemma2_shift())}};
    return j.dump(2) + "\n";
  }
  return serialize_game(fixtures::game(name));
}

void emit_fixtures(const std::string& dir) {
  std::filesystem::create_directories(dir);
  auto write = [&](const std::string& name, const std::string& text) {
    const auto path = std::filesystem::path(dir) / (name + ".json");
    std::ofstream out(path, std::ios::binary);
    if (!out) throw ValidationError("cannot write '" + path.string() + "'");
    out << text;
  };
  for (const std::string& name : fixtures::names()) {
    write(name, fixture_input(name));
  }
}

Outcome reproduce(const ReproduceArgs& a) {
  if (a.all && !a.examples.empty()) {
    throw ValidationError("--all and --example are mutually exclusive");
  }
  std::vector<std::string> selected =
      a.examples.empty() ? fixtures::names() : a.examples;
  for (const std::string& name : selected) {
    if (!fixtures::is_known(name)) {
      throw ValidationError("unknown fixture '" + name + "'");
    }
  }
  if (!a.emit_dir.empty()) emit_fixtures(a.emit_dir);

  std::string bundle;
  json rows = json::array();
  std::size_t passed = 0;
  for (const std::string& name : selected) {
    bundle += fixture_input(name);
    json row = reproduce_fixture(name);
    if (row.at("pass").get<bool>()) ++passed;
    rows.push_back(std::move(row));
  }
  Outcome o;
  o.fingerprint = report::fingerprint(bundle);
  o.results = {{"fixtures", rows},
               {"passed", passed},
               {"total", selected.size()},
               {"pass", passed == selected.size()}};
  o.exit_code = passed == selected.size() ? kExitOk : kExitFailure;
  return o;
}

// Human-readable rendering: a claim table for reproduce, flattened
// "path: value" lines for everything else.
void flatten(const json& j, const std::string& path, std::ostream& out) {
  if (j.is_object()) {
    for (const auto& [key, value] : j.items()) {
      flatten(value, path.empty() ? key : path + "." + key, out);
    }
  } else if (j.is_array() && !j.empty() &&
             (j.front().is_object() || j.front().is_array())) {
    for (std::size_t k = 0; k < j.size(); ++k) {
      flatten(j[k], path + "[" + std::to_string(k + 1) + "]", out);
    }
  } else {
    out << path << ": " << j.dump() << "\n";
  }
}

void print_reproduce_table(const json& results, std::ostream& out) {
  for (const json& fx : results.at("fixtures")) {
    out << fx.at("fixture").get<std::string>() << "\n";
    for (const json& c : fx.at("checks")) {
      out << "  [" << (c.at("pass").get<bool>() ? "PASS" : "FAIL") << "] "
          << c.at("claim").get<std::string>() << ": "
          << c.at("observed").dump() << "\n";
    }
    for (const json& note : fx.at("annotations")) {
      out << "  note: " << note.get<std::string>() << "\n";
    }
  }
  out << results.at("passed").get<std::size_t>() << "/"
      << results.at("total").get<std::size_t>() << " fixtures pass\n";
}

void print_error(std::ostream& err, const char* kind, const std::string& message,
                 int code) {
  json body = {{"error", {{"kind", kind}, {"message", message}, {"exit_code", code}}}};
  err << body.dump() << "\n";
}

std::string join(const std::vector<std::string>& args) {
  std::string out;
  for (const std::string& a : args) {
    if (!out.empty()) out += ' ';
    out += a;
  }
  return out;
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out,
            std::ostream& err) {
  CLI::App app("Exact analysis of zero-sum single-controller stochastic games",
               "cmstoch");
  app.require_subcommand(1);
  app.fallthrough();
  bool pretty = false;
  bool timing = false;
  app.add_flag("--pretty", pretty, "Print a human-readable table instead of JSON");
  app.add_flag("--timing", timing, "Add wall-clock timing to the report");
  app.set_version_flag("--version", kVersion);

  std::string command;
  std::function<Outcome()> action;

  auto* solve = app.add_subcommand("solve", "Solve a matrix or stochastic game");
  solve->require_subcommand(1);

  MatrixArgs matrix_args;
  auto* solve_matrix_cmd = solve->add_subcommand("matrix", "Solve a matrix game exactly");
  solve_matrix_cmd->add_option("--matrix", matrix_args.matrix, "Matrix as JSON rows");
  solve_matrix_cmd->add_option("file", matrix_args.file, "File holding the matrix JSON");
  solve_matrix_cmd->add_option("--shift", matrix_args.shift,
                               "Column shift b (csv); also runs the symmetric reduction");
  solve_matrix_cmd->callback([&] {
    command = "solve matrix";
    action = [&] { return solve_matrix(matrix_args); };
  });

  DiscountedArgs disc_args;
  auto add_discounted = [&](CLI::App* sub, const std::string& name) {
    sub->add_option("--beta", disc_args.beta, "Discount factor p/q in [0,1)")->required();
    sub->add_option("--tol", disc_args.tol, "Shapley iteration tolerance p/q");
    sub->add_flag("--exact", disc_args.exact, "Require the exact single-controller LP");
    sub->add_flag("--iterate", disc_args.iterate, "Force Shapley iteration");
    sub->add_option("game", disc_args.game, "Game file")->required();
    sub->callback([&, name] {
      command = name;
      action = [&] { return solve_discounted(disc_args); };
    });
  };
  add_discounted(solve->add_subcommand("discounted", "Solve the discounted game"),
                 "solve discounted");
  add_discounted(app.add_subcommand("solve-discounted", "Alias of 'solve discounted'"),
                 "solve-discounted");

  VerifyArgs verify_args;
  auto add_verify = [&](CLI::App* sub, const std::string& name) {
    sub->add_option("--f", verify_args.f, "Player 1 strategy file")->required();
    sub->add_option("--g", verify_args.g, "Player 2 strategy file")->required();
    sub->add_option("game", verify_args.game, "Game file")->required();
    sub->callback([&, name] {
      command = name;
      action = [&] { return verify_undiscounted(verify_args); };
    });
  };
  add_verify(solve->add_subcommand("undiscounted-verify",
                                   "Check a stationary pair for undiscounted optimality"),
             "solve undiscounted-verify");
  add_verify(app.add_subcommand("verify-undiscounted",
                                "Alias of 'solve undiscounted-verify'"),
             "verify-undiscounted");

  AnalyzeArgs analyze_args;
  auto* analyze_cmd = app.add_subcommand("analyze-cm", "Completely-mixed analysis");
  analyze_cmd->add_option("game", analyze_args.game, "Game file")->required();
  analyze_cmd->add_option("--beta-grid", analyze_args.grid, "Discount grid (csv of p/q)");
  analyze_cmd->add_option("--schedule-n", analyze_args.schedule_n,
                          "Vanishing-discount steps, beta_n = 1 - 2^-n")
      ->check(CLI::Range(1u, 200u));
  analyze_cmd->add_flag("--discounted", analyze_args.discounted, "Only the grid sweep");
  analyze_cmd->add_flag("--undiscounted", analyze_args.undiscounted,
                        "Only the undiscounted analysis");
  analyze_cmd->add_flag("--theorems", analyze_args.theorems, "Only the theorem checks");
  analyze_cmd->callback([&] {
    command = "analyze-cm";
    action = [&] { return analyze(analyze_args); };
  });

  TheoremArgs theorem_args;
  auto* theorems_cmd = app.add_subcommand("verify-theorems", "Check the structural theorems");
  theorems_cmd->add_option("game", theorem_args.game, "Game file")->required();
  theorems_cmd->add_option("--beta-grid", theorem_args.grid, "Discount grid (csv of p/q)");
  theorems_cmd->callback([&] {
    command = "verify-theorems";
    action = [&] { return verify_theorems(theorem_args); };
  });

  ReproduceArgs repro_args;
  auto* repro_cmd = app.add_subcommand("reproduce", "Run the embedded fixture suite");
  repro_cmd->add_flag("--all", repro_args.all, "Every fixture (default)");
  repro_cmd->add_option("--example", repro_args.examples, "Fixture name");
  repro_cmd->add_option("--emit-fixtures", repro_args.emit_dir,
                        "Write the fixture inputs to this directory");
  repro_cmd->callback([&] {
    command = "reproduce";
    action = [&] { return reproduce(repro_args); };
  });

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::CallForVersion&) {
    out << kVersion << "\n";
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    print_error(err, "usage", e.what(), kExitInput);
    return kExitInput;
  }

  const auto start = std::chrono::steady_clock::now();
  Outcome outcome;
  try {
    outcome = action();
  } catch (const ParseError& e) {
    print_error(err, "parse", e.what(), kExitInput);
    return kExitInput;
  } catch (const ValidationError& e) {
    print_error(err, "validation", e.what(), kExitInput);
    return kExitInput;
  } catch (const ControllerMismatch& e) {
    print_error(err, "controller", e.what(), kExitInput);
    return kExitInput;
  } catch (const GuardExceeded& e) {
    print_error(err, "guard", e.what(), kExitGuard);
    return kExitGuard;
  } catch (const Inconclusive& e) {
    print_error(err, "inconclusive", e.what(), kExitInconclusive);
    return kExitInconclusive;
  } catch (const std::exception& e) {
    print_error(err, "internal", e.what(), kExitFailure);
    return kExitFailure;
  }
  const auto elapsed = std::chrono::steady_clock::now() - start;

  if (pretty) {
    out << "command: " << command << "\n"
        << "fingerprint: " << outcome.fingerprint << "\n";
    if (command == "reproduce") {
      print_reproduce_table(outcome.results, out);
    } else {
      flatten(outcome.results, "", out);
    }
    if (timing) {
      out << "elapsed_ms: "
          << std::chrono::duration<double, std::milli>(elapsed).count() << "\n";
    }
    return outcome.exit_code;
  }

  json run = {{"command", command},
              {"args", join(args)},
              {"fingerprint", outcome.fingerprint},
              {"version", kVersion},
              {"results", std::move(outcome.results)}};
  if (timing) {
    run["timing"] = {
        {"elapsed_ms", std::chrono::duration<double, std::milli>(elapsed).count()}};
  }
  out << run.dump(2) << "\n";
  return outcome.exit_code;
}

}  // namespace cmstoch
