#include <gtest/gtest.h>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <nlohmann/json.hpp>

#include "cli.hpp"

namespace {

using nlohmann::json;

struct Run {
  int code = -1;
  std::string out, err;
  json report() const { return json::parse(out); }
};

Run run(std::vector<std::string> args) {
  args.insert(args.begin(), "hulldev");
  std::ostringstream out, err;
  Run r;
  r.code = hulldev::cli::run(args, out, err);
  r.out = out.str();
  r.err = err.str();
  return r;
}

std::string temp_file(const std::string& name, const std::string& contents) {
  const auto path = std::filesystem::temp_directory_path() / ("hulldev_cli_" + name);
  std::ofstream(path) << contents;
  return path.string();
}

TEST(Cli, ExtremalBasisIsExact) {
  const auto r = run({"chd", "compute", "--norm", "l1", "--extremal-basis", "4", "--seed", "1"});
  ASSERT_EQ(r.code, hulldev::cli::kOk) << r.err;
  const auto j = r.report();
  EXPECT_EQ(j["command"], "chd compute");
  EXPECT_EQ(j["inputs"]["seed"], 1);
  EXPECT_NEAR(j["results"]["report"]["lower"].get<double>(), 1.5, 1e-9);
  EXPECT_EQ(j["results"]["report"]["upper"].get<double>(), 1.5);
  EXPECT_TRUE(j.contains("wall_time_seconds"));
  EXPECT_TRUE(j.contains("version"));
}

TEST(Cli, EmptyPointsFileIsUsageError) {
  const auto path = temp_file("empty.json", "[]");
  const auto r = run({"chd", "compute", "--points-file", path});
  EXPECT_EQ(r.code, hulldev::cli::kUsage);
  EXPECT_FALSE(r.err.empty());
  EXPECT_EQ(r.err.find('\n'), r.err.size() - 1);
}

TEST(Cli, UsageErrors) {
  EXPECT_EQ(run({}).code, hulldev::cli::kUsage);
  EXPECT_EQ(run({"chd"}).code, hulldev::cli::kUsage);
  EXPECT_EQ(run({"chd", "compute", "--norm", "l7", "--extremal-basis", "3"}).code, hulldev::cli::kUsage);
  EXPECT_EQ(run({"chd", "compute", "--extremal-basis", "3", "--tol", "-1"}).code, hulldev::cli::kUsage);
  EXPECT_EQ(run({"chd", "compute", "--points-file", "/nonexistent/x.json"}).code, hulldev::cli::kUsage);
  EXPECT_EQ(run({"nerve", "analyze"}).code, hulldev::cli::kUsage);
}

TEST(Cli, ExampleL1) {
  const auto r = run({"nerve", "example-l1"});
  ASSERT_EQ(r.code, hulldev::cli::kOk) << r.err;
  EXPECT_EQ(r.report()["results"]["betti"]["betti"], json({1, 0, 1}));
}

TEST(Cli, ResultsAreDeterministic) {
  const std::vector<std::vector<std::string>> commands = {
      {"chd", "compute", "--norm", "linf", "--extremal-signs", "3", "--seed", "5"},
      {"chd", "search", "--norm", "l1", "--budget", "200", "--seed", "2"},
      {"ineq", "fuzz", "--families", "50", "--seed", "3"},
      {"nerve", "random-suite", "--systems", "3", "--count", "6"},
  };
  for (const auto& cmd : commands) {
    auto one = cmd, other = cmd;
    one.insert(one.end(), {"--threads", "1"});
    other.insert(other.end(), {"--threads", "3"});
    const auto a = run(one), b = run(other);
    ASSERT_EQ(a.code, 0) << a.err;
    ASSERT_EQ(b.code, 0) << b.err;
    EXPECT_EQ(a.report()["results"].dump(), b.report()["results"].dump()) << cmd[0] << " " << cmd[1];
  }
}

TEST(Cli, PointsFileAndOracle) {
  const auto path = temp_file("tri.json", R"({"points": [[1, 0], [0, 1], [-1, -1]], "norm": "linf"})");
  const auto r = run({"chd", "oracle", "--points-file", path, "--grid", "300"});
  ASSERT_EQ(r.code, 0) << r.err;
  const auto j = r.report();
  EXPECT_EQ(j["inputs"]["config"]["norm"]["p"], "inf");
  EXPECT_LE(std::abs(j["results"]["difference"].get<double>()), 1e-2);
}

TEST(Cli, ReplayRechecksCase) {
  // No recorded margin; the case is rechecked from scratch.
  const std::string line =
      R"({"inequality":"centered","f":{"points":[[1,0],[0,1]],"weights":[0.5,0.5],"p":2}})";
  const auto path = temp_file("replay.jsonl", line + "\n");
  const auto r = run({"ineq", "replay", "--replay", path});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_EQ(r.report()["results"]["violations"], 0);
}

TEST(Cli, OutFlagWritesReport) {
  const auto path = (std::filesystem::temp_directory_path() / "hulldev_cli_out.json").string();
  std::remove(path.c_str());
  const auto r = run({"chd", "bounds", "--norm", "l2", "--dim-max", "3", "--out", path});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(r.out.empty());
  std::ifstream in(path);
  const auto j = json::parse(in);
  EXPECT_EQ(j["results"]["sweep"].size(), 2u);
  EXPECT_EQ(j["results"]["sweep"][1]["upper"], 1.0);
}

TEST(Cli, SectionCoverFixedInstance) {
  const auto r = run({"section", "cover", "--norm", "linf", "--dim", "3", "--functional", "1,1,1", "--offset", "0.5",
                      "--samples", "400"});
  ASSERT_EQ(r.code, 0) << r.err;
  EXPECT_TRUE(r.report()["results"]["instances"][0]["passed"].get<bool>());
}

}  // namespace
