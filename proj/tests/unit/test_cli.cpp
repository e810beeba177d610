#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <gtest/gtest.h>

#include "fog/cli/commands.hpp"
#include "fog/cli/output.hpp"
#include "fog/cli/presets.hpp"
#include "fog/cli/scenario_io.hpp"
#include "json.hpp"

namespace fog::cli {
namespace {

namespace fs = std::filesystem;

fs::path scratch(const std::string& name) {
  const auto dir = fs::temp_directory_path() / ("fogsim_test_" + name);
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

int cli(std::vector<std::string> args, std::string* out_text = nullptr,
        std::string* err_text = nullptr) {
  args.insert(args.begin(), "fogsim");
  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  std::ostringstream out, err;
  const int rc = run_cli(static_cast<int>(argv.size()), argv.data(), out, err);
  if (out_text) *out_text = out.str();
  if (err_text) *err_text = err.str();
  return rc;
}

TEST(Presets, SingleStationary) {
  const auto s = preset("single_stationary");
  EXPECT_EQ(s.arms, 6u);
  EXPECT_EQ(s.horizon, 30000);
  EXPECT_EQ(s.t_max, 5.0);
  EXPECT_EQ(s.delay.d_max, 3);
  Rng rng(1);
  EXPECT_EQ(s.arrivals.resolve(6, rng), (std::vector<double>{5.0, 5.5, 6.0, 6.5, 7.0, 7.5}));
}

TEST(Presets, AllValidateAndRoundTrip) {
  for (const auto& name : preset_names()) {
    const auto s = preset(name);
    EXPECT_NO_THROW(s.validate()) << name;
    EXPECT_EQ(parse_scenario_text(serialize_scenario(s)), s) << name;
  }
  EXPECT_THROW(preset("nope"), UsageError);
}

TEST(ScenarioIo, RoundTripWithOptionalFields) {
  auto s = preset("single_dynamic");
  s.policy.eta = 0.01;
  s.policy.delay_budget = 1234.5;
  s.positions = {{0.1, 0.2}, {0.3, -0.4}, {1, 1}, {0, 0}, {-1, 0}, {0, 1.5}};
  s.agent_policies = {};
  s.seed = 18446744073709551615ull;
  s.channel.slot_seconds = 0.1 / 3.0;
  EXPECT_EQ(parse_scenario_text(serialize_scenario(s)), s);
}

TEST(ScenarioIo, DefaultsFillMissingKeys) {
  const auto s = parse_scenario_text(R"({"K": 4, "T": 100})");
  EXPECT_EQ(s.arms, 4u);
  EXPECT_EQ(s.horizon, 100);
  EXPECT_EQ(s.delay.d_max, 3);
  EXPECT_EQ(s.policy.kind, policies::PolicyKind::kDeb);
}

TEST(ScenarioIo, ZeroArmsIsSchemaErrorNamingK) {
  try {
    parse_scenario_text(R"({"K": 0})");
    FAIL();
  } catch (const SchemaError& e) {
    EXPECT_EQ(e.key(), "K");
  }
}

TEST(ScenarioIo, UnknownKeysRejected) {
  try {
    parse_scenario_text(R"({"delay": {"d_max": 3, "dmax": 4}})");
    FAIL();
  } catch (const SchemaError& e) {
    EXPECT_EQ(e.key(), "delay.dmax");
  }
  EXPECT_THROW(parse_scenario_text(R"({"horizon": 10})"), SchemaError);
}

TEST(ScenarioIo, TypeErrorsNameTheKey) {
  try {
    parse_scenario_text(R"({"t_max": "five"})");
    FAIL();
  } catch (const SchemaError& e) {
    EXPECT_EQ(e.key(), "t_max");
  }
  try {
    parse_scenario_text(R"({"policy": {"kind": "greedy"}})");
    FAIL();
  } catch (const SchemaError& e) {
    EXPECT_EQ(e.key(), "policy.kind");
  }
}

TEST(ScenarioIo, InvariantViolationIsDistinct) {
  try {
    parse_scenario_text(R"({"T": 5})");
    FAIL();
  } catch (const SchemaError&) {
    FAIL() << "expected an invariant error";
  } catch (const InvariantError& e) {
    EXPECT_EQ(e.key(), "T");
  }
}

TEST(ScenarioIo, FileErrors) {
  EXPECT_THROW(parse_scenario("/nonexistent/scenario.json"), ScenarioFileError);
  const auto dir = scratch("file_errors");
  std::ofstream(dir / "bad.json") << "{ not json";
  EXPECT_THROW(parse_scenario(dir / "bad.json"), ScenarioFileError);
  EXPECT_THROW(load_scenario("no_such_preset_or_file"), ScenarioFileError);
}

TEST(ScenarioIo, LoadsFileByPath) {
  const auto dir = scratch("load_file");
  std::ofstream(dir / "s.json") << R"({"name": "tiny", "K": 3, "T": 50})";
  const auto s = load_scenario((dir / "s.json").string());
  EXPECT_EQ(s.name, "tiny");
  EXPECT_EQ(s.arms, 3u);
}

TEST(Output, NumberFormatting) {
  EXPECT_EQ(format_number(0.0), "0");
  EXPECT_EQ(format_number(1.0 / 3.0), "0.333333333");
  EXPECT_EQ(format_number(123456789012.0), "1.23456789e+11");
  EXPECT_EQ(format_number(2.5), "2.5");
  EXPECT_EQ(format_number(-0.000125), "-0.000125");
}

TEST(Cli, ListScenarios) {
  std::string out;
  EXPECT_EQ(cli({"list-scenarios"}, &out), kExitOk);
  for (const auto& n : preset_names()) EXPECT_NE(out.find(n), std::string::npos);
}

TEST(Cli, RunIsByteDeterministic) {
  const auto dir = scratch("determinism");
  for (const char* sub : {"a", "b"}) {
    ASSERT_EQ(cli({"run", "--scenario", "single_stationary", "--runs", "3", "--seed", "7",
                   "--horizon", "600", "--stride", "1", "--workers", sub[0] == 'a' ? "1" : "3",
                   "--out", (dir / sub).string()}),
              kExitOk);
  }
  for (const char* f : {"timeseries.csv", "summary.csv", "selections.csv", "aggregate.csv",
                        "meta.json"}) {
    EXPECT_EQ(slurp(dir / "a" / f), slurp(dir / "b" / f)) << f;
  }
}

TEST(Cli, BundleFilesDeclaredInMetaExist) {
  const auto dir = scratch("bundle");
  ASSERT_EQ(cli({"run", "--scenario", "ne_two_agent", "--runs", "2", "--horizon", "300", "--out",
                 dir.string()}),
            kExitOk);
  const auto meta = nlohmann::json::parse(slurp(dir / "meta.json"));
  EXPECT_EQ(meta["status"], "complete");
  EXPECT_EQ(meta["seed"], 1);
  EXPECT_EQ(meta["scenario"]["K"], 6);
  bool joint = false;
  for (const auto& f : meta["files"]) {
    EXPECT_GT(fs::file_size(dir / f.get<std::string>()), 0u);
    joint = joint || f == "joint_frequency.csv";
  }
  EXPECT_TRUE(joint);
  EXPECT_EQ(slurp(dir / "timeseries.csv").substr(0, 52),
            "run,slot,agent,arm,loss,cum_regret,window_latency\n0,");
  EXPECT_EQ(slurp(dir / "summary.csv").substr(0, 84),
            "policy,runs,final_regret_mean,final_regret_se,final_latency_mean,best_arm_frequency\n");
}

TEST(Cli, CompareWritesOneRowPerPolicy) {
  const auto dir = scratch("compare");
  ASSERT_EQ(cli({"compare", "--scenario", "single_stationary", "--runs", "2", "--horizon", "300",
                 "--out", dir.string()}),
            kExitOk);
  std::istringstream in(slurp(dir / "summary.csv"));
  std::string line;
  std::getline(in, line);
  std::vector<std::string> policies;
  while (std::getline(in, line)) policies.push_back(line.substr(0, line.find(',')));
  EXPECT_EQ(policies, (std::vector<std::string>{"deb", "exp3", "qpmd", "sdb", "ducb", "blot"}));
}

TEST(Cli, UnknownPolicyIsUsageErrorListingNames) {
  std::string err;
  EXPECT_EQ(cli({"run", "--scenario", "single_stationary", "--policy", "greedy", "--out",
                 scratch("badpolicy").string()},
                nullptr, &err),
            kExitUsage);
  for (const auto& n : policies::policy_names()) EXPECT_NE(err.find(n), std::string::npos);
}

TEST(Cli, BadFlagsAreUsageErrors) {
  EXPECT_EQ(cli({"bogus"}), kExitUsage);
  EXPECT_EQ(cli({"run"}), kExitUsage);
  EXPECT_EQ(cli({"run", "--scenario", "single_stationary", "--runs", "0"}), kExitUsage);
  EXPECT_EQ(cli({}), kExitUsage);
}

TEST(Cli, BadScenarioFileIsConfigError) {
  const auto dir = scratch("badfile");
  std::ofstream(dir / "k0.json") << R"({"K": 0})";
  std::string err;
  EXPECT_EQ(cli({"run", "--scenario", (dir / "k0.json").string(), "--out", (dir / "o").string()},
                nullptr, &err),
            kExitConfig);
  EXPECT_NE(err.find("K"), std::string::npos);
}

TEST(Cli, OutDirFromEnvironment) {
  const auto dir = scratch("envout");
  ::setenv("FOGSIM_OUT_DIR", dir.string().c_str(), 1);
  const int rc = cli({"run", "--scenario", "matching_pennies", "--runs", "1", "--horizon", "60"});
  ::unsetenv("FOGSIM_OUT_DIR");
  ASSERT_EQ(rc, kExitOk);
  EXPECT_TRUE(fs::exists(dir / "matching_pennies" / "ne_gaps.csv"));
}

}  // namespace
}  // namespace fog::cli
