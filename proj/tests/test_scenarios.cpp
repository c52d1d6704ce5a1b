#include <string>

#include <gtest/gtest.h>

#include "qmvpower/artifacts.hpp"
#include "qmvpower/scenarios.hpp"

using namespace qmv;

TEST(Scenario, MemberStateQuotas) {
  EXPECT_EQ(scenario_game(preset_scenario("eu27")).expr().leaves()[1].quota, 15);
  EXPECT_EQ(scenario_game(preset_scenario("eu33")).expr().leaves()[1].quota, 19);
  EXPECT_EQ(scenario_game(preset_scenario("eu36")).expr().leaves()[1].quota, 20);
}

TEST(Scenario, Eec1958SeatRule) {
  const VotingGame g = scenario_game(preset_scenario("eec1958"));
  ASSERT_EQ(g.expr().leaves().size(), 1u);
  EXPECT_EQ(g.expr().leaves()[0], (WeightedRule{WeightKind::Seats, 12}));
}

TEST(Scenario, WeimarBloc) {
  const Scenario s = with_bloc(preset_scenario("eu27"), "weimar");
  const VotingGame g = scenario_game(s);
  EXPECT_EQ(g.size(), 25u);
  const Voter& w = g.roster()[g.roster().require("weimar")];
  EXPECT_EQ(w.seat_weight, 3);
  EXPECT_EQ(w.pop_weight, 1881 + 1518 + 820);
  // the member-state quota stays at 15 of 27 countries
  EXPECT_EQ(g.expr().leaves()[1].quota, 15);
}

TEST(Scenario, BlocWithMissingMemberNamesIt) {
  Scenario s = preset_scenario("eec1958");
  try {
    with_bloc(s, "v4");
    FAIL();
  } catch (const InputError& e) {
    EXPECT_NE(std::string(e.what()).find("PL"), std::string::npos) << e.what();
  }
  EXPECT_THROW(with_bloc(s, "no-such-bloc"), InputError);
}

TEST(Scenario, BlocPresetsResolve) {
  for (const auto& p : bloc_presets()) {
    const Scenario s = with_bloc(preset_scenario("eu27"), p.key);
    EXPECT_EQ(scenario_game(s).size(), 28u - p.members.size()) << p.key;
  }
}

TEST(Compare, SelfComparisonIsZero) {
  const PowerResult r = compute_all(scenario_game(preset_scenario("eu27")));
  const DiffReport d = compare(r, r);
  EXPECT_TRUE(d.entrants.empty());
  EXPECT_TRUE(d.departed.empty());
  ASSERT_EQ(d.incumbents.size(), 27u);
  for (const auto& e : d.incumbents) {
    EXPECT_EQ(e.banzhaf.pp, 0);
    EXPECT_EQ(e.shapley.pp, 0);
  }
  const ParadoxReport p = detect_paradox(d);
  EXPECT_TRUE(p.gainers.empty());
  EXPECT_NE(p.note.find("no entrants"), std::string::npos);
}

TEST(Compare, Eu27ToEu33) {
  const PowerResult a = compute_all(scenario_game(preset_scenario("eu27")));
  const PowerResult b = compute_all(scenario_game(preset_scenario("eu33")));
  const DiffReport d = compare(a, b);
  EXPECT_EQ(d.incumbents.size(), 27u);
  EXPECT_EQ(d.entrants.size(), 6u);
  EXPECT_TRUE(d.departed.empty());
  const DiffEntry& de = d.incumbents[0];
  EXPECT_EQ(de.id, "DE");
  EXPECT_NEAR(100 * to_double(de.banzhaf.pp), -2.56, 0.20);
  EXPECT_NEAR(100 * to_double(de.shapley.pp), -1.65, 0.20);
  ASSERT_TRUE(de.banzhaf.rel.has_value());
  EXPECT_EQ(*de.banzhaf.rel, de.banzhaf.pp / de.banzhaf.before);

  const ParadoxReport p = detect_paradox(d);
  auto gained = [&](const std::string& id) {
    for (const auto& g : p.gainers)
      if (g.id == id && g.family == Family::Banzhaf) return true;
    return false;
  };
  for (const char* id : {"MT", "LU", "CY", "EE"}) EXPECT_TRUE(gained(id)) << id;
  EXPECT_FALSE(gained("DE"));
}

TEST(Compare, DepartedAndDisjoint) {
  const PowerResult a = compute_all(scenario_game(preset_scenario("eu33")));
  const PowerResult b = compute_all(scenario_game(preset_scenario("eu27")));
  const DiffReport d = compare(a, b);
  EXPECT_EQ(d.departed.size(), 6u);
  EXPECT_TRUE(d.entrants.empty());
  const PowerResult eec = compute_all(scenario_game(preset_scenario("eec1958")));
  const PowerResult v4 = compute_all(scenario_game(with_bloc(preset_scenario("eu27"), "founders")));
  EXPECT_THROW(compare(eec, v4), InputError);
}

TEST(Compare, FamiliesIntersect) {
  const VotingGame g = scenario_game(preset_scenario("eec1958"));
  const DiffReport d = compare(banzhaf(g), compute_all(g));
  EXPECT_TRUE(d.has_banzhaf);
  EXPECT_FALSE(d.has_shapley);
}

TEST(Coalitions, Eu27ToEu33) {
  const auto rows = coalition_changes(preset_scenario("eu27"), preset_scenario("eu33"), {"fr-de", "v4"});
  ASSERT_EQ(rows.size(), 2u);
  EXPECT_EQ(rows[0].key, "fr-de");
  EXPECT_NEAR(100 * to_double(rows[0].banzhaf.before), 18.35, 0.20);
  EXPECT_NEAR(100 * to_double(rows[0].banzhaf.after), 13.98, 0.20);
  EXPECT_NEAR(100 * to_double(*rows[0].banzhaf.rel), -23.81, 1.0);
  EXPECT_NEAR(100 * to_double(rows[1].shapley.after), 13.13, 0.20);
}

TEST(Nordic, AnnotationNamesTheMatchingValue) {
  const NordicCheck c = nordic_check();
  EXPECT_EQ(c.players, 22u);
  EXPECT_TRUE(c.matches_table || c.matches_figure || !c.annotation.empty());
  EXPECT_NE(c.annotation.find("matches"), std::string::npos);
  EXPECT_EQ(c.banzhaf, bloc_power(preset_scenario("eu27"), "nordic").at("nordic").banzhaf_index);
  EXPECT_THROW(nordic_check(21), RefusalError);
}
