#pragma once

// Bundled datasets.
//
// Populations are integers in hundredths of a percent of the EU27 total
// (Germany 18.81% -> 1881). The EU27 rows sum to 9999, not 10000, because the
// published shares are rounded to two decimals.
//
// Candidate countries are only published as shares of the enlarged Union, so
// their weights are derived: weight = round(share x growth x 9999), with
// growth 1.039 for the Western Balkans (shares of EU33) and 1.145 for
// Georgia, Moldova and Ukraine (shares of EU36). candidate_derivation()
// recomputes them; the tables below are its frozen output. The Balkan shares
// of EU36 implied by these weights differ from the EU36 publication by up to
// 0.02 percentage points (Serbia 1.35 vs 155/11446 = 1.354).
//
// The 1958 EEC council uses seat weights only; its population column is 0.

#include <array>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "qmvpower/data_io.hpp"

namespace qmv::fixtures {

inline constexpr std::int64_t eu27_total = 9999;
inline constexpr Fraction balkan_growth{1039, 1000};
inline constexpr Fraction eastern_growth{1145, 1000};

inline constexpr std::string_view eu27_csv = R"(# unit: centi-percent of EU27 population
id,name,pop
DE,Germany,1881
FR,France,1518
IT,Italy,1312
ES,Spain,1072
PL,Poland,820
RO,Romania,425
NL,Netherlands,397
BE,Belgium,262
CZ,Czech Republic,241
SE,Sweden,235
PT,Portugal,233
GR,Greece,232
HU,Hungary,214
AT,Austria,203
BG,Bulgaria,144
DK,Denmark,132
FI,Finland,124
SK,Slovakia,121
IE,Ireland,116
HR,Croatia,86
LT,Lithuania,64
SI,Slovenia,47
LV,Latvia,42
EE,Estonia,30
CY,Cyprus,21
LU,Luxembourg,15
MT,Malta,12
)";

inline constexpr std::string_view balkan_rows = R"(RS,Serbia,155
BA,Bosnia and Herzegovina,74
AL,Albania,63
MK,North Macedonia,47
XK,Kosovo,39
ME,Montenegro,14
)";

inline constexpr std::string_view eastern_rows = R"(UA,Ukraine,915
GE,Georgia,84
MD,Moldova,56
)";

inline constexpr std::string_view eu27_members =
    "DE FR IT ES PL RO NL BE CZ SE PT GR HU AT BG DK FI SK IE HR LT SI LV EE CY LU MT";
inline constexpr std::string_view balkan_members = "RS BA AL MK XK ME";
inline constexpr std::string_view eastern_members = "UA GE MD";

inline constexpr std::string_view eec1958_csv = R"(# unit: none (seat weights only)
id,name,pop,seats
FR,France,0,4
DE,Germany,0,4
IT,Italy,0,4
BE,Belgium,0,2
NL,Netherlands,0,2
LU,Luxembourg,0,1
)";

inline constexpr std::string_view eec1958_scenario = R"(name = eec1958
members = FR DE IT BE NL LU
rule = seats
seat_fraction = 12/17
)";

inline const std::array<std::string_view, 4>& names() {
  static const std::array<std::string_view, 4> n{"eu27", "eu33", "eu36", "eec1958"};
  return n;
}

inline bool exists(std::string_view name) {
  for (auto n : names())
    if (n == name) return true;
  return false;
}

/// Population CSV text of a bundled fixture.
inline std::string population_csv(std::string_view name) {
  if (name == "eu27") return std::string(eu27_csv);
  if (name == "eu33") return std::string(eu27_csv) + std::string(balkan_rows);
  if (name == "eu36") return std::string(eu27_csv) + std::string(balkan_rows) + std::string(eastern_rows);
  if (name == "eec1958") return std::string(eec1958_csv);
  throw InputError("unknown fixture " + std::string(name));
}

/// Scenario file text of a bundled fixture.
inline std::string scenario_text(std::string_view name) {
  std::string members;
  if (name == "eu27") {
    members = std::string(eu27_members);
  } else if (name == "eu33") {
    members = std::string(eu27_members) + " " + std::string(balkan_members);
  } else if (name == "eu36") {
    members = std::string(eu27_members) + " " + std::string(balkan_members) + " " + std::string(eastern_members);
  } else if (name == "eec1958") {
    return std::string(eec1958_scenario);
  } else {
    throw InputError("unknown fixture " + std::string(name));
  }
  return "name = " + std::string(name) + "\nmembers = " + members + "\n";
}

inline std::pair<PopulationTable, ScenarioConfig> fixture(std::string_view name) {
  PopulationTable table = load_population_table(population_csv(name));
  ScenarioConfig config = load_scenario_config(scenario_text(name), table);
  return {std::move(table), std::move(config)};
}

struct CandidateShare {
  std::string id;
  std::string name;
  std::int64_t share;  // hundredths of a percent of the enlarged Union
  Fraction growth;     // enlarged total / EU27 total
  std::int64_t weight;  // derived
};

/// Published shares of the candidate countries and the weights derived from them.
inline std::vector<CandidateShare> candidate_derivation() {
  std::vector<CandidateShare> rows{
      {"RS", "Serbia", 149, balkan_growth, 0},
      {"BA", "Bosnia and Herzegovina", 71, balkan_growth, 0},
      {"AL", "Albania", 61, balkan_growth, 0},
      {"MK", "North Macedonia", 45, balkan_growth, 0},
      {"XK", "Kosovo", 38, balkan_growth, 0},
      {"ME", "Montenegro", 13, balkan_growth, 0},
      {"UA", "Ukraine", 799, eastern_growth, 0},
      {"GE", "Georgia", 73, eastern_growth, 0},
      {"MD", "Moldova", 49, eastern_growth, 0},
  };
  for (auto& r : rows) r.weight = derive_weight(r.share, r.growth, eu27_total);
  return rows;
}

}  // namespace qmv::fixtures
