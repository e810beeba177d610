#include "fog/cli/commands.hpp"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "fog/cli/output.hpp"
#include "fog/cli/presets.hpp"
#include "fog/cli/scenario_io.hpp"
#include "fog/common/errors.hpp"
#include "fog/harness/monte_carlo.hpp"
#include "json.hpp"

namespace fog::cli {

namespace {

struct CommonFlags {
  std::string scenario;
  std::optional<std::size_t> runs;
  std::optional<std::uint64_t> seed;
  std::optional<std::int64_t> horizon;
  std::string out;
  std::size_t workers = 1;
  std::int64_t stride = 10;
};

std::size_t default_workers() {
  if (const char* env = std::getenv("FOGSIM_WORKERS")) {
    try {
      const long long v = std::stoll(env);
      if (v >= 1) return static_cast<std::size_t>(v);
    } catch (const std::exception&) {
    }
    throw UsageError(std::string("FOGSIM_WORKERS must be a positive integer, got '") + env + "'");
  }
  return std::max(1u, std::thread::hardware_concurrency());
}

std::filesystem::path out_dir(const CommonFlags& flags, const std::string& name) {
  if (!flags.out.empty()) return flags.out;
  if (const char* env = std::getenv("FOGSIM_OUT_DIR")) return std::filesystem::path(env) / name;
  return std::filesystem::path("fogsim_out") / name;
}

void add_common(CLI::App* cmd, CommonFlags& f, bool with_scenario) {
  if (with_scenario) {
    cmd->add_option("--scenario", f.scenario, "preset name or scenario JSON file")->required();
  }
  cmd->add_option("--runs", f.runs, "Monte-Carlo runs (overrides the scenario)")
      ->check(CLI::PositiveNumber);
  cmd->add_option("--seed", f.seed, "master seed (overrides the scenario)");
  cmd->add_option("--horizon", f.horizon, "slots per run (overrides the scenario)")
      ->check(CLI::Range(std::int64_t{10}, std::numeric_limits<std::int64_t>::max()));
  cmd->add_option("--out", f.out, "output directory");
  cmd->add_option("--workers", f.workers, "worker threads")->check(CLI::PositiveNumber);
  cmd->add_option("--stride", f.stride, "keep every n-th slot in per-slot CSVs")
      ->check(CLI::PositiveNumber);
}

harness::ScenarioConfig apply_overrides(harness::ScenarioConfig s, const CommonFlags& f) {
  if (f.runs) s.runs = *f.runs;
  if (f.seed) s.seed = *f.seed;
  if (f.horizon) {
    if (s.arrival_switch) s.arrival_switch->slot = *f.horizon / 2;
    s.horizon = *f.horizon;
  }
  s.validate();
  return s;
}

harness::MonteCarloResult execute(
    const harness::ScenarioConfig& s, const std::filesystem::path& dir, const CommonFlags& f,
    std::ostream& out, const std::function<void(const harness::RunMetrics&)>& observe = {}) {
  BundleWriter writer(dir, s, f.stride);
  harness::MonteCarloOptions options;
  options.workers = f.workers;
  options.on_run = [&](const harness::RunMetrics& m) {
    writer.add_run(m);
    if (observe) observe(m);
  };
  try {
    auto result = harness::monte_carlo(s, options);
    writer.finish(result);
    out << s.name << " [" << policies::to_string(s.policy.kind) << "] runs=" << result.summary.runs
        << " final_regret=" << format_number(result.summary.final_regret_mean)
        << " final_latency=" << format_number(result.summary.final_latency_mean)
        << " best_arm_frequency=" << format_number(result.summary.best_arm_frequency) << " -> "
        << dir.string() << "\n";
    return result;
  } catch (const std::exception& e) {
    writer.fail(e.what());
    throw;
  }
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) out.push_back(item);
  }
  return out;
}

int cmd_run(const CommonFlags& f, const std::string& policy, std::ostream& out) {
  auto s = load_scenario(f.scenario);
  if (!policy.empty()) {
    s.policy.kind = policies::parse_policy_kind(policy);
    s.agent_policies.clear();
  }
  s = apply_overrides(std::move(s), f);
  execute(s, out_dir(f, s.name), f, out);
  return kExitOk;
}

int cmd_compare(const CommonFlags& f, const std::string& policy_list, std::ostream& out) {
  auto base = apply_overrides(load_scenario(f.scenario), f);
  std::vector<policies::PolicyKind> kinds;
  for (const auto& name : split_list(policy_list)) kinds.push_back(policies::parse_policy_kind(name));
  if (kinds.empty()) throw UsageError("--policies must name at least one policy");

  const auto dir = out_dir(f, base.name + "_compare");
  std::filesystem::create_directories(dir);
  std::vector<SummaryRow> rows;
  for (auto kind : kinds) {
    auto s = base;
    s.policy.kind = kind;
    s.agent_policies.clear();
    const std::string name(policies::to_string(kind));
    const auto result = execute(s, dir / name, f, out);
    rows.push_back({name, result.summary});
  }
  write_summary(dir / "summary.csv", rows);

  nlohmann::json meta;
  meta["schema_version"] = std::string(kSchemaVersion);
  meta["version"] = std::string(kToolVersion);
  meta["status"] = "complete";
  meta["scenario"] = base.name;
  meta["seed"] = base.seed;
  meta["runs"] = base.runs;
  std::vector<std::string> names;
  for (const auto& r : rows) names.push_back(r.policy);
  meta["policies"] = names;
  meta["files"] = {"summary.csv"};
  std::ofstream(dir / "meta.json", std::ios::binary | std::ios::trunc) << meta.dump(2) << '\n';
  return kExitOk;
}

int cmd_ne_experiment(const CommonFlags& f, std::ostream& out) {
  const auto offload = apply_overrides(preset("ne_two_agent"), f);
  const auto matrix = apply_overrides(preset("matching_pennies"), f);
  const auto root = out_dir(f, "ne_experiment");

  // Final-third mass on the two pure equilibria (FN 1, FN 2) and (FN 2, FN 1).
  double mass = 0.0;
  execute(offload, root / offload.name, f, out, [&](const harness::RunMetrics& m) {
    const auto& a = m.agents[0].arms;
    const auto& b = m.agents[1].arms;
    const std::size_t begin = a.size() - a.size() / 3;
    std::size_t hits = 0;
    for (std::size_t t = begin; t < a.size(); ++t) {
      hits += (a[t] == 0 && b[t] == 1) || (a[t] == 1 && b[t] == 0);
    }
    mass += static_cast<double>(hits) / static_cast<double>(a.size() - begin);
  });
  mass /= static_cast<double>(offload.runs);

  std::vector<double> gap(3, 0.0);
  execute(matrix, root / matrix.name, f, out, [&](const harness::RunMetrics& m) {
    for (std::size_t c = 0; c < m.ne_checkpoints.size() && c < gap.size(); ++c) {
      const auto& cp = m.ne_checkpoints[c];
      gap[c] += std::max(cp.row_gap, cp.column_gap) / static_cast<double>(matrix.runs);
    }
  });

  out << "equilibrium mass (final third): " << format_number(mass) << "\n";
  out << "matching pennies mean gap at T/3, 2T/3, T: " << format_number(gap[0]) << ", "
      << format_number(gap[1]) << ", " << format_number(gap[2]) << " (epsilon "
      << format_number(matrix.ne_epsilon) << ")\n";
  return kExitOk;
}

int cmd_list(std::ostream& out) {
  for (const auto& name : preset_names()) out << name << "  " << preset_description(name) << "\n";
  return kExitOk;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Fog-network peer-offloading simulator", "fogsim"};
  app.require_subcommand(1);

  CommonFlags run_flags, cmp_flags, ne_flags;
  std::string policy;
  std::string policy_list = "deb,exp3,qpmd,sdb,ducb,blot";

  try {
    run_flags.workers = cmp_flags.workers = ne_flags.workers = default_workers();
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  auto* run = app.add_subcommand("run", "run one scenario and write its output bundle");
  add_common(run, run_flags, true);
  run->add_option("--policy", policy, "policy for every agent (overrides the scenario)");

  auto* compare = app.add_subcommand("compare", "run several policies on one scenario");
  add_common(compare, cmp_flags, true);
  compare->add_option("--policies", policy_list, "comma-separated policy names")
      ->capture_default_str();

  auto* ne = app.add_subcommand("ne-experiment",
                                "two-agent equilibrium experiment plus the matrix-game check");
  add_common(ne, ne_flags, false);

  auto* list = app.add_subcommand("list-scenarios", "list bundled scenarios");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    if (*run) return cmd_run(run_flags, policy, out);
    if (*compare) return cmd_compare(cmp_flags, policy_list, out);
    if (*ne) return cmd_ne_experiment(ne_flags, out);
    if (*list) return cmd_list(out);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const InvariantError& e) {
    err << "invalid scenario: " << e.what() << "\n";
    return kExitConfig;
  } catch (const SchemaError& e) {
    err << "scenario schema error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const ScenarioFileError& e) {
    err << "scenario file error: " << e.what() << "\n";
    return kExitConfig;
  } catch (const ConfigError& e) {
    // Bad names given on the command line (policy, preset).
    err << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "failed: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitUsage;
}

}  // namespace fog::cli
