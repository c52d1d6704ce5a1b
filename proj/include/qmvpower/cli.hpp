#pragma once

// Command-line front end. run() is the whole program minus main(), so tests
// can drive it with argument lists and string streams.
//
//   qmvpower compute  --scenario <name|path> [--population <path>] [--bloc <id>]
//   qmvpower compare  --base <name|path> --target <name|path> [--paradox]
//   qmvpower presets  [--derivation]
//   qmvpower emit     <table1..table8|fig1..fig8>
//
// Exit codes: 0 success, 1 input or validation error, 2 resource error.

#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <tuple>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "qmvpower/artifacts.hpp"
#include "qmvpower/data_io.hpp"
#include "qmvpower/errors.hpp"
#include "qmvpower/fixtures.hpp"
#include "qmvpower/oracle.hpp"
#include "qmvpower/power.hpp"
#include "qmvpower/report.hpp"
#include "qmvpower/scenarios.hpp"

namespace qmv::cli {

namespace detail {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read " + path);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

struct ScenarioArgs {
  std::string population;
  std::string bloc;
  std::string blocking;  // "", "on", "off"
};

/// Bundled name or scenario file. Files resolve against --population, or the
/// bundled EU36 table (which contains every EU27/EU33/EU36 country).
inline Scenario load(const std::string& source, const ScenarioArgs& a) {
  PopulationTable table;
  ScenarioConfig config;
  if (fixtures::exists(source)) {
    std::tie(table, config) = fixtures::fixture(source);
    if (!a.population.empty()) {
      table = load_population_table(read_file(a.population));
      config = load_scenario_config(fixtures::scenario_text(source), table);
    }
  } else {
    table = a.population.empty() ? fixtures::fixture("eu36").first : load_population_table(read_file(a.population));
    config = load_scenario_config(read_file(source), table);
  }
  Scenario s = make_scenario(config, table);
  if (a.blocking == "on") s.options.include_blocking = true;
  if (a.blocking == "off") s.options.include_blocking = false;
  if (!a.bloc.empty()) {
    auto it = std::find_if(config.blocs.begin(), config.blocs.end(), [&](const Bloc& b) { return b.id == a.bloc; });
    if (it != config.blocs.end()) {
      s = with_bloc(std::move(s), *it);
    } else if (find_bloc_preset(a.bloc)) {
      s = with_bloc(std::move(s), a.bloc);
    } else {
      throw InputError("unknown bloc " + a.bloc + " (neither a preset nor defined by scenario " + s.name + ")");
    }
  }
  return s;
}

inline bool same(const PowerResult& a, const PowerResult& b) {
  if (a.voters.size() != b.voters.size()) return false;
  for (std::size_t k = 0; k < a.voters.size(); ++k)
    if (a.voters[k].swings_by_size != b.voters[k].swings_by_size) return false;
  return true;
}

inline void presets(std::ostream& out, bool derivation) {
  if (derivation) {
    out << "# candidate weights: round(share x growth x " << fixtures::eu27_total << "), share in 0.01%\n";
    out << "id,name,share,growth,weight\n";
    for (const auto& c : fixtures::candidate_derivation())
      out << c.id << ',' << c.name << ',' << c.share << ',' << c.growth.str() << ',' << c.weight << '\n';
    return;
  }
  out << "scenarios:\n";
  for (auto name : fixtures::names()) {
    const Scenario s = preset_scenario(name);
    out << "  " << name << "  " << s.roster.size() << " members, rule " << scenario_game(s).expr().str() << '\n';
  }
  out << "blocs:\n";
  for (const auto& p : bloc_presets()) {
    out << "  " << p.key << "  " << p.name << ":";
    for (const auto& m : p.members) out << ' ' << m;
    out << '\n';
  }
  out << "artifacts:\n ";
  for (const auto& a : artifact_names()) out << ' ' << a;
  out << '\n';
}

}  // namespace detail

inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Exact Banzhaf and Shapley-Shubik power in weighted voting games", "qmvpower"};
  app.require_subcommand(1);

  detail::ScenarioArgs sargs;
  std::string format = "text", index = "both";
  int decimals = 2;
  std::size_t oracle_limit = oracle::default_limit;
  std::size_t max_cells = EngineOptions{}.max_cells;
  unsigned workers = 0;

  auto common = [&](CLI::App* sub) {
    sub->add_option("--population", sargs.population, "population CSV for scenario files");
    sub->add_option("--bloc", sargs.bloc, "merge a bloc preset or a bloc defined in the scenario file");
    sub->add_option("--index", index, "index family")->check(CLI::IsMember({"banzhaf", "ss", "both"}));
    sub->add_option("--format", format, "output format")->check(CLI::IsMember({"text", "csv", "json"}));
    sub->add_option("--decimals", decimals, "decimals of rendered percentages")->check(CLI::Range(0, 10));
    sub->add_option("--blocking-minority", sargs.blocking, "add the blocking-minority clause")
        ->check(CLI::IsMember({"on", "off"}));
    sub->add_option("--oracle-limit", oracle_limit, "largest player count the brute-force oracle accepts");
    sub->add_option("--max-cells", max_cells, "largest DP table, in cells");
    sub->add_option("--workers", workers, "concurrent per-voter computations (0 = all cores)");
  };

  std::string scenario;
  bool verify = false;
  auto* compute_cmd = app.add_subcommand("compute", "power indices of one scenario");
  compute_cmd->add_option("--scenario", scenario, "eu27, eu33, eu36, eec1958 or a scenario file")->required();
  compute_cmd->add_flag("--verify", verify, "cross-check against exhaustive enumeration when n <= oracle limit");
  common(compute_cmd);

  std::string base, target;
  bool paradox = false;
  auto* compare_cmd = app.add_subcommand("compare", "index changes between two scenarios");
  compare_cmd->add_option("--base", base, "scenario before")->required();
  compare_cmd->add_option("--target", target, "scenario after")->required();
  compare_cmd->add_flag("--paradox", paradox, "list incumbents whose power increases");
  common(compare_cmd);

  bool derivation = false;
  auto* presets_cmd = app.add_subcommand("presets", "bundled scenarios, blocs and artifacts");
  presets_cmd->add_flag("--derivation", derivation, "show how candidate-country weights were derived");

  std::string artifact;
  auto* emit_cmd = app.add_subcommand("emit", "one named table or figure dataset");
  emit_cmd->add_option("artifact", artifact, "table1..table8 or fig1..fig8")->required();
  emit_cmd->add_option("--format", format, "output format")->check(CLI::IsMember({"text", "csv", "json"}));
  emit_cmd->add_option("--decimals", decimals, "decimals of rendered percentages")->check(CLI::Range(0, 10));
  emit_cmd->add_option("--oracle-limit", oracle_limit, "largest player count the brute-force oracle accepts");

  try {
    std::vector<std::string> reversed(args.rbegin(), args.rend());
    app.parse(reversed);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return 0;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n\n" << app.help();
    return 1;
  }

  try {
    RenderOptions ropt{parse_format(format), decimals, parse_index(index), {}};
    const EngineOptions engine{max_cells, workers};

    if (*compute_cmd) {
      const Scenario s = detail::load(scenario, sargs);
      const VotingGame game = scenario_game(s);
      const PowerResult result = compute(game, ropt.index, engine);
      if (verify) {
        if (game.size() > oracle_limit) {
          err << "verify: skipped, " << game.size() << " players exceed the oracle limit of " << oracle_limit << '\n';
        } else if (!detail::same(result, oracle::oracle_all(game, oracle_limit))) {
          err << "verify: engine and oracle disagree\n";
          return 1;
        } else {
          err << "verify: engine matches exhaustive enumeration (" << game.size() << " players)\n";
        }
      }
      out << render(result, ropt);
      return 0;
    }
    if (*compare_cmd) {
      const PowerResult b = compute(scenario_game(detail::load(base, sargs)), ropt.index, engine);
      const PowerResult t = compute(scenario_game(detail::load(target, sargs)), ropt.index, engine);
      const DiffReport report = compare(b, t);
      out << render(report, ropt);
      if (paradox) out << render(detect_paradox(report), ropt);
      return 0;
    }
    if (*presets_cmd) {
      detail::presets(out, derivation);
      return 0;
    }
    if (*emit_cmd) {
      out << emit_artifact(artifact, ropt, engine, oracle_limit);
      return 0;
    }
  } catch (const ResourceError& e) {
    err << "error: " << e.what() << '\n';
    return 2;
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  } catch (const NormalizationError& e) {
    err << "error: " << e.what() << '\n';
    return 1;
  }
  err << app.help();
  return 1;
}

}  // namespace qmv::cli
