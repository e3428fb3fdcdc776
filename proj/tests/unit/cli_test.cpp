#include "commands.hpp"

#include <gtest/gtest.h>
#include <json.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

using nlohmann::json;

namespace {

struct Run {
  int code = 0;
  std::string out;
  std::string err;
};

Run run(std::vector<std::string> args) {
  std::ostringstream out, err;
  const int code = asym::cli::run(std::move(args), out, err);
  return {code, out.str(), err.str()};
}

json run_json(std::vector<std::string> args) {
  const auto r = run(std::move(args));
  EXPECT_EQ(r.code, 0) << r.err;
  return json::parse(r.out);
}

std::vector<std::string> lines(const std::string& text) {
  std::vector<std::string> out;
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) out.push_back(line);
  return out;
}

std::vector<std::string> fields(const std::string& line) {
  std::vector<std::string> out;
  std::stringstream ss(line);
  for (std::string f; std::getline(ss, f, ',');) out.push_back(f);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

std::filesystem::path temp_file(const std::string& name, const std::string& contents) {
  const auto path = std::filesystem::temp_directory_path() / ("asym_cli_test_" + name);
  std::ofstream(path) << contents;
  return path;
}

}  // namespace

TEST(Cli, CatalogProperties) {
  const auto j = run_json({"catalog"});
  EXPECT_EQ(j["seed"], 1);
  std::map<std::string, json> by_name;
  for (const auto& f : j["functions"]) by_name[f["name"]] = f;
  EXPECT_EQ(by_name["gini"]["G"]["constant"], 3.0);
  EXPECT_EQ(by_name["entropy"]["G"]["constant"], 1.0);
  EXPECT_EQ(by_name["cost-insensitive"]["cost_insensitive"], true);
  EXPECT_EQ(by_name["km-sqrt"]["cost_insensitive"], true);
  EXPECT_EQ(by_name["quartic-degenerate"]["proper"], false);
  EXPECT_EQ(by_name["quartic-degenerate"]["preimpurity"], false);
  EXPECT_EQ(by_name["sym-quartic"]["respects_class_weighting"], false);
  EXPECT_EQ(by_name.size(), 10u);
}

TEST(Cli, SplitWorkedExample) {
  const auto cubic = run_json({"split", "--fn", "power-minus:3", "--c", "0.4", "--candidates", "0.1:0.6,0.25:0.75"});
  EXPECT_NEAR(cubic["candidates"][0]["impurity"].get<double>(), 0.27, 1e-12);
  EXPECT_NEAR(cubic["candidates"][1]["impurity"].get<double>(), 0.2625, 1e-12);
  EXPECT_EQ(cubic["winner"], 1);
  const auto g = run_json({"split", "--fn", "gini", "--c", "0.4", "--candidates", "0.1:0.6,0.25:0.75"});
  EXPECT_EQ(g["winner"], 0);
  EXPECT_NEAR(g["candidates"][0]["ppv"].get<double>(), 0.6, 1e-15);
  EXPECT_NEAR(g["candidates"][0]["npv"].get<double>(), 0.9, 1e-15);
  EXPECT_NEAR(g["candidates"][0]["reduction"].get<double>(), 0.12, 1e-15);
}

TEST(Cli, PlotdataChordOrdering) {
  for (const auto& [fn, lower] : {std::pair{"power-minus:3", 1}, std::pair{"gini", 0}}) {
    const auto r = run({"plotdata", "--fn", fn, "--c", "0.45", "--splits", "0:0.7,0.25:0.95"});
    ASSERT_EQ(r.code, 0) << r.err;
    const auto ls = lines(r.out);
    ASSERT_EQ(ls.size(), 1u + 512u + 2u);
    EXPECT_EQ(ls[0], "row,p,f,a,fa,b,fb,c,chord");
    const double chord0 = std::stod(fields(ls[513]).back());
    const double chord1 = std::stod(fields(ls[514]).back());
    EXPECT_EQ(chord1 < chord0 ? 1 : 0, lower) << fn;
  }
  const auto r = run({"plotdata", "--fn", "gini", "--c", "0.3", "--splits", "0.3:0.3", "--points", "2"});
  const auto row = fields(lines(r.out).back());
  EXPECT_EQ(row[0], "chord");
  EXPECT_EQ(std::stod(row[8]), std::stod(row[4]));
}

TEST(Cli, RealizeCsv) {
  const auto r = run({"realize", "--c", "0.45", "--s1", "0:0.7", "--s2", "0.25:0.95"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto ls = lines(r.out);
  ASSERT_EQ(ls.size(), 9u);
  EXPECT_EQ(ls[0], "quadrant,class,weight,x,y");
  double pos = 0.0, tot = 0.0;
  for (std::size_t i = 1; i < ls.size(); ++i) {
    const auto f = fields(ls[i]);
    ASSERT_EQ(f.size(), 5u);
    tot += std::stod(f[2]);
    if (f[1] == "1") pos += std::stod(f[2]);
  }
  EXPECT_NEAR(pos / tot, 0.45, 1e-12);
}

TEST(Cli, GprofileCsv) {
  const auto r = run({"gprofile", "--fn", "gini", "--grid", "11"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto ls = lines(r.out);
  ASSERT_EQ(ls.size(), 12u);
  EXPECT_EQ(ls[0], "p,G,H,Hprime");
  for (std::size_t i = 1; i < ls.size(); ++i) EXPECT_NEAR(std::stod(fields(ls[i])[1]), 3.0, 1e-9);
  EXPECT_EQ(run({"gprofile", "--fn", "quartic-degenerate"}).code, 2);
}

TEST(Cli, CompareReportsVerdictAndWitness) {
  const auto j = run_json({"compare", "--f", "gini", "--g", "power-minus:3", "--trials", "3000", "--seed", "5"});
  EXPECT_EQ(j["seed"], 5);
  EXPECT_EQ(j["verdict"], "g-more-positively-pure");
  EXPECT_EQ(j["positive_check"]["passed"], false);
  EXPECT_FALSE(j["witness"].is_null());
  const auto k = run_json({"compare", "--f", "power-minus:3", "--g", "gini", "--trials", "3000"});
  EXPECT_EQ(k["verdict"], "f-more-positively-pure");
  EXPECT_EQ(k["positive_check"]["passed"], true);
  EXPECT_EQ(k["negative_check"]["passed"], true);
  EXPECT_TRUE(k["witness"].is_null());
}

TEST(Cli, TransformEquivalence) {
  const auto j = run_json({"transform", "--fn", "cost-insensitive:0.3", "--w", "2", "--points", "5"});
  EXPECT_EQ(j["spec"], "cost-insensitive:0.3/tw:2");
  EXPECT_NEAR(j["equivalent_to_input"]["scale"].get<double>(), std::pow(2.0, 0.3), 1e-8);
  EXPECT_EQ(j["samples"].size(), 5u);
}

TEST(Cli, GrowFromCsvAndMixture) {
  const auto data = temp_file("data.csv", "x,y,label,weight\n1,0,0,1\n2,0,1,1\n3,0,0,1\n");
  const auto stuck = run_json({"grow", "--data", data.string(), "--fn", "quartic-degenerate", "--allow-improper"});
  EXPECT_EQ(stuck["tree"]["leaf"], true);
  EXPECT_NEAR(stuck["tree"]["impurity"].get<double>(), 16.0 / 2187.0, 1e-17);
  EXPECT_EQ(run({"grow", "--data", data.string(), "--fn", "quartic-degenerate"}).code, 2);

  const auto g = run_json({"grow", "--fn", "gini", "--max-depth", "2", "--seed", "3"});
  EXPECT_EQ(g["seed"], 3);
  EXPECT_EQ(g["points"], 100);
  EXPECT_EQ(g["tree"]["leaf"], false);
  EXPECT_LE(g["tree"]["a"].get<double>(), g["tree"]["b"].get<double>());
}

TEST(Cli, VerifySuites) {
  const auto r = run({"verify", "weighting", "--seed", "7"});
  EXPECT_EQ(r.code, 0) << r.out;
  const auto j = json::parse(r.out);
  EXPECT_EQ(j["seed"], 7);
  bool group_law = false;
  for (const auto& c : j["suites"][0]["checks"]) group_law = group_law || c["name"] == "T-group-law";
  EXPECT_TRUE(group_law);
  EXPECT_EQ(run({"verify", "purity", "--seed", "7"}).code, 0);
  const auto bad = run({"verify", "nonsense"});
  EXPECT_EQ(bad.code, 2);
  EXPECT_TRUE(json::parse(bad.err).contains("error"));
}

TEST(Cli, Deterministic) {
  const std::vector<std::vector<std::string>> cmds = {
      {"compare", "--f", "sym-quartic", "--g", "gini", "--trials", "2000", "--seed", "9"},
      {"grow", "--fn", "entropy", "--seed", "4"},
      {"catalog"},
      {"verify", "tree", "--seed", "2"}};
  for (const auto& c : cmds) {
    const auto a = run(c);
    const auto b = run(c);
    EXPECT_EQ(a.out, b.out);
    EXPECT_EQ(a.code, b.code);
  }
}

TEST(Cli, ErrorsAreJsonWithNonzeroExit) {
  for (const auto& args : std::vector<std::vector<std::string>>{
           {},
           {"split", "--fn", "nosuch", "--c", "0.4", "--candidates", "0.1:0.6"},
           {"split", "--fn", "gini", "--c", "0.4", "--candidates", "0.5:0.6"},
           {"split", "--fn", "gini", "--c", "0.4", "--candidates", "0.1-0.6"},
           {"realize", "--c", "1.5", "--s1", "0:1", "--s2", "0:1"},
           {"grow", "--data", "/nonexistent/file.csv", "--fn", "gini"},
           {"transform", "--fn", "gini", "--w", "-1"},
           {"--config", "/nonexistent/config.json"}}) {
    const auto r = run(args);
    EXPECT_NE(r.code, 0);
    ASSERT_FALSE(r.err.empty());
    const auto j = json::parse(r.err);
    EXPECT_TRUE(j["error"].contains("message"));
  }
}

TEST(Cli, ConfigFile) {
  const auto cfg = temp_file("cfg.json", R"({"command": "split", "fn": "gini", "c": 0.4,
                                             "candidates": [[0.1, 0.6], [0.25, 0.75]], "seed": 11})");
  const auto j = run_json({"--config", cfg.string()});
  EXPECT_EQ(j["winner"], 0);
  EXPECT_EQ(j["seed"], 11);
  // Command-line flags take precedence over the file.
  const auto k = run_json({"split", "--config", cfg.string(), "--fn", "power-minus:3"});
  EXPECT_EQ(k["winner"], 1);

  const auto unknown = temp_file("bad.json", R"({"command": "split", "fn": "gini", "colour": "red"})");
  const auto r = run({"--config", unknown.string()});
  EXPECT_EQ(r.code, 2);
  EXPECT_NE(r.err.find("colour"), std::string::npos);
}

TEST(Cli, OutputFile) {
  const auto path = std::filesystem::temp_directory_path() / "asym_cli_test_out.json";
  std::filesystem::remove(path);
  const auto r = run({"catalog", "--output", path.string()});
  EXPECT_EQ(r.code, 0);
  EXPECT_TRUE(r.out.empty());
  std::ifstream in(path);
  EXPECT_EQ(json::parse(in)["seed"], 1);
}
