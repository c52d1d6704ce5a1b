#include <cmath>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>
#include <json.hpp>

#include "qmvpower/artifacts.hpp"
#include "qmvpower/report.hpp"
#include "support.hpp"

using namespace qmv;

namespace {

std::vector<std::vector<std::string>> csv_rows(const std::string& text) {
  std::vector<std::vector<std::string>> out;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    std::vector<std::string> fields;
    std::string f;
    std::istringstream ls(line);
    while (std::getline(ls, f, ',')) fields.push_back(f);
    out.push_back(fields);
  }
  return out;
}

const PowerResult& eu27() {
  static const PowerResult r = compute_all(scenario_game(preset_scenario("eu27")));
  return r;
}

}  // namespace

TEST(FormatPercent, HalfEven) {
  EXPECT_EQ(format_percent(Rational(1, 8), 1), "12.5");
  EXPECT_EQ(format_percent(Rational(125, 100000), 2), "0.12");  // 0.125 -> 0.12
  EXPECT_EQ(format_percent(Rational(135, 100000), 2), "0.14");  // 0.135 -> 0.14
  EXPECT_EQ(format_percent(Rational(2, 3), 2), "66.67");
  EXPECT_EQ(format_percent(Rational(2, 3), 0), "67");
  EXPECT_EQ(format_percent(Rational(-1, 1000000), 2), "0.00");
  EXPECT_EQ(format_percent(Rational(-1, 40), 1), "-2.5");
  EXPECT_EQ(format_percent(Rational(1), 3), "100.000");
}

TEST(RenderPower, TextStartsWithGermany) {
  const std::string text = render(eu27());
  EXPECT_EQ(text.rfind("# n = 27", 0), 0u);
  std::istringstream in(text);
  std::string header, rule, first;
  std::getline(in, header);
  std::getline(in, rule);
  std::getline(in, first);
  EXPECT_NE(rule.find("rank"), std::string::npos);
  EXPECT_NE(first.find("Germany"), std::string::npos) << first;
  EXPECT_NE(first.find("12.21"), std::string::npos) << first;
}

TEST(RenderPower, CsvColumnsAndFilter) {
  RenderOptions o;
  o.format = Format::Csv;
  const auto rows = csv_rows(render(eu27(), o));
  ASSERT_EQ(rows.size(), 28u);
  EXPECT_EQ(rows[0], (std::vector<std::string>{"rank", "id", "name", "population", "banzhaf", "shapley_shubik"}));
  EXPECT_EQ(rows[1][1], "DE");
  EXPECT_EQ(rows[27][1], "MT");
  o.only = {"MT", "DE"};
  o.index = Family::Shapley;
  const auto some = csv_rows(render(eu27(), o));
  ASSERT_EQ(some.size(), 3u);
  EXPECT_EQ(some[0].size(), 5u);
  EXPECT_EQ(some[2][0], "27");  // rank within the full roster
}

TEST(RenderPower, V4FirstByBanzhaf) {
  RenderOptions o;
  o.format = Format::Csv;
  const auto rows = csv_rows(render(bloc_power(preset_scenario("eu27"), "v4"), o));
  EXPECT_EQ(rows[1][1], "v4");
  o.index = Family::Shapley;
  EXPECT_EQ(csv_rows(render(bloc_power(preset_scenario("eu27"), "v4"), o))[1][1], "DE");
}

TEST(RenderPower, JsonCarriesExactValues) {
  RenderOptions o;
  o.format = Format::Json;
  const auto doc = nlohmann::json::parse(render(eu27(), o));
  EXPECT_EQ(doc["n"], 27);
  const auto& de = doc["voters"][0];
  EXPECT_EQ(de["id"], "DE");
  const Rational b(BigInt(de["banzhaf_index"]["num"].get<std::string>()),
                   BigInt(de["banzhaf_index"]["den"].get<std::string>()));
  EXPECT_EQ(b, eu27().at("DE").banzhaf_index);
  EXPECT_EQ(de["banzhaf_pct"], "12.21");
}

TEST(RenderPower, Deterministic) {
  for (Format f : {Format::Text, Format::Csv, Format::Json}) {
    RenderOptions o;
    o.format = f;
    EXPECT_EQ(render(eu27(), o), render(compute_all(scenario_game(preset_scenario("eu27"))), o));
  }
}

TEST(RenderPower, RejectsBadDecimals) {
  RenderOptions o;
  o.decimals = 11;
  EXPECT_THROW(render(eu27(), o), InputError);
}

// Rendered columns sum to 100 up to the rounding of each row.
TEST(RenderPower, CsvColumnsSumToHundred) {
  std::mt19937_64 rng(43);
  for (int k = 0; k < 100; ++k) {
    const PowerResult r = compute_all(test_support::random_game(rng));
    RenderOptions o;
    o.format = Format::Csv;
    o.decimals = static_cast<int>(rng() % 5);
    const auto rows = csv_rows(render(r, o));
    double sb = 0, ss = 0;
    for (std::size_t j = 1; j < rows.size(); ++j) {
      sb += std::stod(rows[j][4]);
      ss += std::stod(rows[j][5]);
    }
    const double slack = r.n * 0.5 * std::pow(10.0, -o.decimals) + 1e-9;
    EXPECT_NEAR(sb, 100.0, slack);
    EXPECT_NEAR(ss, 100.0, slack);
  }
}

TEST(RenderDiff, EmptyReportIsHeaderOnly) {
  DiffReport d;
  d.has_banzhaf = d.has_shapley = true;
  RenderOptions o;
  o.format = Format::Csv;
  const auto rows = csv_rows(render(d, o));
  ASSERT_EQ(rows.size(), 1u);
  EXPECT_EQ(rows[0][0], "id");
}

TEST(RenderDiff, SortedByBaseBanzhaf) {
  const DiffReport d = compare(eu27(), compute_all(scenario_game(preset_scenario("eu33"))));
  RenderOptions o;
  o.format = Format::Csv;
  const auto rows = csv_rows(render(d, o));
  ASSERT_EQ(rows.size(), 28u);
  EXPECT_EQ(rows[1][0], "DE");
  EXPECT_EQ(rows[1][4], "-2.56") << rows[1][4];
  o.format = Format::Text;
  const std::string text = render(d, o);
  EXPECT_NE(text.find("# entrants: RS BA AL MK XK ME"), std::string::npos) << text;
}

TEST(RenderParadox, ListsGainers) {
  const DiffReport d = compare(eu27(), compute_all(scenario_game(preset_scenario("eu33"))));
  const std::string text = render(detect_paradox(d));
  EXPECT_NE(text.find("Malta"), std::string::npos);
  EXPECT_EQ(text.find("Germany"), std::string::npos);
}

TEST(Artifacts, AllNamesRender) {
  const Format formats[] = {Format::Text, Format::Csv, Format::Json};
  std::size_t k = 0;
  for (const auto& name : artifact_names()) {
    RenderOptions o;
    o.format = formats[k++ % 3];
    const std::string body = emit_artifact(name, o);
    EXPECT_FALSE(body.empty()) << name;
    if (o.format == Format::Json) {
      EXPECT_TRUE(nlohmann::json::accept(body)) << name;
    }
  }
  EXPECT_THROW(emit_artifact("table9"), InputError);
}

TEST(Artifacts, Table1Rows) {
  RenderOptions o;
  o.format = Format::Csv;
  const auto rows = csv_rows(emit_artifact("table1", o));
  ASSERT_EQ(rows.size(), 6u);
  EXPECT_EQ(rows[1][1], "DE");
  EXPECT_EQ(rows[5][1], "PL");
}

TEST(Artifacts, NordicAnnotationPresent) {
  for (const char* name : {"table5", "table8", "fig6"})
    EXPECT_NE(emit_artifact(name).find("Nordic bloc in EU27, exhaustive enumeration"), std::string::npos) << name;
}
