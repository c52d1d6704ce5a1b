#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "qmvpower/cli.hpp"

namespace {

struct Outcome {
  int code;
  std::string out;
  std::string err;
};

Outcome run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = qmv::cli::run(args, out, err);
  return {code, out.str(), err.str()};
}

std::size_t count_lines(const std::string& s) {
  std::size_t n = 0;
  for (char c : s) n += c == '\n';
  return n;
}

std::string temp_file(const std::string& name, const std::string& content) {
  const auto path = std::filesystem::temp_directory_path() / ("qmvpower_test_" + name);
  std::ofstream(path) << content;
  return path.string();
}

}  // namespace

TEST(Cli, ComputeCsv) {
  const Outcome r = run({"compute", "--scenario", "eu27", "--format", "csv"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(count_lines(r.out), 28u);
  EXPECT_EQ(r.out.rfind("rank,id,name,population,banzhaf,shapley_shubik\n1,DE,Germany,18.81,12.21,", 0), 0u) << r.out;
}

TEST(Cli, CompareParadoxListsMalta) {
  const Outcome r = run({"compare", "--base", "eu27", "--target", "eu33", "--paradox"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("Malta"), std::string::npos);
  EXPECT_NE(r.out.find("new member paradox"), std::string::npos);
}

TEST(Cli, WeimarBloc) {
  const Outcome r = run({"compute", "--scenario", "eu27", "--bloc", "weimar", "--format", "csv"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("1,weimar,Weimar Triangle,42.19,21.74,49.60"), std::string::npos) << r.out;
}

TEST(Cli, VerifySmallGame) {
  const Outcome r = run({"compute", "--scenario", "eec1958", "--verify", "--index", "banzhaf"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.err.find("engine matches"), std::string::npos);
  const Outcome big = run({"compute", "--scenario", "eu27", "--verify"});
  EXPECT_EQ(big.code, 0);
  EXPECT_NE(big.err.find("skipped"), std::string::npos);
}

TEST(Cli, BlockingMinorityToggle) {
  const Outcome on = run({"compute", "--scenario", "eu27", "--blocking-minority", "on"});
  EXPECT_EQ(on.code, 0);
  EXPECT_NE(on.out.find("blocking minority on"), std::string::npos);
  EXPECT_EQ(run({"compute", "--scenario", "eu27", "--blocking-minority", "maybe"}).code, 1);
}

TEST(Cli, ScenarioFileAndPopulation) {
  const std::string pop = temp_file("pop.csv", "id,name,pop\nA,Alpha,50\nB,Beta,49\nC,Gamma,1\n");
  const std::string scen = temp_file("game.scenario", "name = toy\nmembers = A B C\nrule = population\npop_fraction = 51/100\n");
  const Outcome r = run({"compute", "--scenario", scen, "--population", pop, "--format", "json", "--decimals", "4"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_NE(r.out.find("\"banzhaf_pct\": \"60.0000\""), std::string::npos) << r.out;
  EXPECT_NE(r.out.find("\"shapley_pct\": \"66.6667\""), std::string::npos) << r.out;
}

TEST(Cli, ErrorsAndExitCodes) {
  EXPECT_EQ(run({"frobnicate"}).code, 1);
  EXPECT_EQ(run({}).code, 1);
  EXPECT_EQ(run({"compute"}).code, 1);
  EXPECT_EQ(run({"compute", "--scenario", "nowhere.scenario"}).code, 1);
  EXPECT_EQ(run({"compute", "--scenario", "eu27", "--bloc", "nonesuch"}).code, 1);
  EXPECT_EQ(run({"compute", "--scenario", "eu27", "--decimals", "12"}).code, 1);
  EXPECT_EQ(run({"emit", "table9"}).code, 1);
  const std::string bad = temp_file("bad.csv", "id,name,pop\nA,Alpha,-5\n");
  const Outcome neg = run({"compute", "--scenario", "eu27", "--population", bad});
  EXPECT_EQ(neg.code, 1);
  EXPECT_NE(neg.err.find("line 2"), std::string::npos) << neg.err;
  const Outcome budget = run({"compute", "--scenario", "eu27", "--max-cells", "1000"});
  EXPECT_EQ(budget.code, 2);
  EXPECT_NE(budget.err.find("exceeds the budget"), std::string::npos) << budget.err;
}

TEST(Cli, HelpAndPresets) {
  const Outcome h = run({"--help"});
  EXPECT_EQ(h.code, 0);
  EXPECT_NE(h.out.find("compute"), std::string::npos);
  const Outcome p = run({"presets"});
  EXPECT_EQ(p.code, 0);
  EXPECT_NE(p.out.find("weimar"), std::string::npos);
  EXPECT_NE(p.out.find("eu36"), std::string::npos);
  const Outcome d = run({"presets", "--derivation"});
  EXPECT_NE(d.out.find("UA,Ukraine,799,1145/1000,915"), std::string::npos) << d.out;
}

TEST(Cli, EmitTable4) {
  const Outcome r = run({"emit", "table4", "--format", "csv"});
  EXPECT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(count_lines(r.out), 7u);
  EXPECT_NE(r.out.find("RS,Serbia"), std::string::npos);
}
