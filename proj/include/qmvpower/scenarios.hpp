#pragma once

// Named scenarios, bloc presets, cross-scenario comparison and detection of
// the new member paradox.

#include <optional>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "qmvpower/data_io.hpp"
#include "qmvpower/errors.hpp"
#include "qmvpower/exact.hpp"
#include "qmvpower/fixtures.hpp"
#include "qmvpower/game.hpp"
#include "qmvpower/power.hpp"

namespace qmv {

struct Scenario {
  std::string name;
  Roster roster;
  RuleKind rule = RuleKind::Qmv;
  QmvOptions options;
  BlocPartition partition;
};

inline Scenario make_scenario(const ScenarioConfig& config, const PopulationTable& table) {
  Scenario s{config.name, roster_for(config, table), config.rule, config.options, {}};
  s.partition.blocs = config.blocs;
  s.partition.validate(s.roster);
  return s;
}

/// One of the bundled scenarios: eu27, eu33, eu36, eec1958.
inline Scenario preset_scenario(std::string_view name) {
  if (!fixtures::exists(name)) throw InputError("unknown scenario " + std::string(name));
  auto [table, config] = fixtures::fixture(name);
  return make_scenario(config, table);
}

/// Merges the scenario's blocs, then applies its rule.
inline VotingGame scenario_game(const Scenario& s) {
  const Roster roster = merge_blocs(s.roster, s.partition);
  switch (s.rule) {
    case RuleKind::Qmv:
      return build_qmv(roster, s.options);
    case RuleKind::Seats:
      return VotingGame(
          roster, RuleExpr::leaf({WeightKind::Seats, quota_from_fraction(roster.total_seats(), s.options.seat_fraction)}));
    case RuleKind::Population:
      if (roster.total_pop() <= 0) throw ValidationError("roster has zero total population");
      return VotingGame(
          roster, RuleExpr::leaf({WeightKind::Population, quota_from_fraction(roster.total_pop(), s.options.pop_fraction)}));
  }
  throw InputError("unknown rule");
}

struct BlocPreset {
  std::string key;
  std::string name;
  std::vector<std::string> members;
};

inline const std::vector<BlocPreset>& bloc_presets() {
  static const std::vector<BlocPreset> presets{
      {"fr-de", "Franco-German axis", {"FR", "DE"}},
      {"weimar", "Weimar Triangle", {"FR", "DE", "PL"}},
      {"founders", "Founders", {"BE", "DE", "FR", "IT", "LU", "NL"}},
      {"v4", "V4", {"PL", "CZ", "HU", "SK"}},
      {"2004", "2004 entrants", {"CZ", "CY", "EE", "HU", "LV", "LT", "MT", "PL", "SK", "SI"}},
      {"nordic", "Nordic", {"DK", "EE", "FI", "LV", "LT", "SE"}},
  };
  return presets;
}

inline const BlocPreset* find_bloc_preset(std::string_view key) {
  for (const auto& p : bloc_presets())
    if (p.key == key) return &p;
  return nullptr;
}

/// The scenario with its partition replaced by the single bloc `bloc`.
inline Scenario with_bloc(Scenario s, const Bloc& bloc) {
  for (const auto& m : bloc.members)
    if (!s.roster.contains(m)) throw InputError("bloc " + bloc.id + " member " + m + " is not in scenario " + s.name);
  s.partition.blocs = {bloc};
  s.partition.validate(s.roster);
  return s;
}

inline Scenario with_bloc(Scenario s, std::string_view preset) {
  const BlocPreset* p = find_bloc_preset(preset);
  if (!p) throw InputError("unknown bloc preset " + std::string(preset));
  return with_bloc(std::move(s), Bloc{p->key, p->name, p->members});
}

/// Indices of the scenario with the preset bloc merged into one voter.
inline PowerResult bloc_power(const Scenario& s, std::string_view preset, const EngineOptions& options = {}) {
  return compute_all(scenario_game(with_bloc(s, preset)), options);
}

struct FamilyDiff {
  Rational before;
  Rational after;
  Rational pp;                   // after - before, as a fraction (x100 for percentage points)
  std::optional<Rational> rel;  // pp / before, when before > 0
};

struct DiffEntry {
  std::string id;
  std::string name;
  FamilyDiff banzhaf;
  FamilyDiff shapley;
};

struct DiffReport {
  bool has_banzhaf = false;
  bool has_shapley = false;
  std::vector<DiffEntry> incumbents;  // base roster order
  std::vector<Voter> entrants;        // only in target
  std::vector<Voter> departed;        // only in base
};

namespace scenario_detail {
inline FamilyDiff diff(const Rational& before, const Rational& after) {
  FamilyDiff d{before, after, after - before, std::nullopt};
  if (before > 0) d.rel = d.pp / before;
  return d;
}
}  // namespace scenario_detail

/// Per-voter index changes from `base` to `target`, for the families both carry.
inline DiffReport compare(const PowerResult& base, const PowerResult& target) {
  DiffReport r;
  r.has_banzhaf = base.has_banzhaf && target.has_banzhaf;
  r.has_shapley = base.has_shapley && target.has_shapley;
  std::unordered_set<std::string> base_ids;
  for (const auto& b : base.voters) {
    base_ids.insert(b.voter.id);
    const VoterPower* t = target.find(b.voter.id);
    if (!t) {
      r.departed.push_back(b.voter);
      continue;
    }
    DiffEntry e{b.voter.id, b.voter.name, {}, {}};
    if (r.has_banzhaf) e.banzhaf = scenario_detail::diff(b.banzhaf_index, t->banzhaf_index);
    if (r.has_shapley) e.shapley = scenario_detail::diff(b.shapley_shubik, t->shapley_shubik);
    r.incumbents.push_back(std::move(e));
  }
  for (const auto& t : target.voters)
    if (!base_ids.count(t.voter.id)) r.entrants.push_back(t.voter);
  if (r.incumbents.empty()) throw InputError("base and target have no voter in common");
  return r;
}

struct Gain {
  std::string id;
  std::string name;
  Family family;
  Rational pp;
};

struct ParadoxReport {
  std::vector<Gain> gainers;  // Banzhaf gainers first, then Shapley-Shubik, base order within each
  std::string note;
};

/// Incumbents whose index strictly increased after an enlargement.
inline ParadoxReport detect_paradox(const DiffReport& report) {
  ParadoxReport out;
  if (report.entrants.empty()) {
    out.note = "no entrants: not an enlargement, paradox check skipped";
    return out;
  }
  if (report.has_banzhaf)
    for (const auto& e : report.incumbents)
      if (e.banzhaf.pp > 0) out.gainers.push_back({e.id, e.name, Family::Banzhaf, e.banzhaf.pp});
  if (report.has_shapley)
    for (const auto& e : report.incumbents)
      if (e.shapley.pp > 0) out.gainers.push_back({e.id, e.name, Family::Shapley, e.shapley.pp});
  out.note = out.gainers.empty() ? "no incumbent gains power" : "new member paradox: some incumbents gain power";
  return out;
}

}  // namespace qmv
