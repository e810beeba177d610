#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "fog/common/types.hpp"
#include "fog/harness/scenario.hpp"
#include "fog/policies/policy.hpp"

namespace fog::harness {

// Builds the policy of one agent. The default factory uses make_policy with
// the scenario's per-agent policy.
using PolicyFactory = std::function<std::unique_ptr<policies::Policy>(
    std::size_t agent, const policies::PolicyContext& context)>;

PolicyFactory default_policy_factory(const ScenarioConfig& scenario);

// Per-slot series of one agent, indexed by slot - 1. Per-slot entries describe
// the fresh decision of that slot; re-offloads only enter the counters and
// the regret sums.
struct AgentSeries {
  std::vector<std::uint32_t> arms;
  std::vector<double> losses;          // loss the delay channel reports for the task
  std::vector<double> latencies;       // realized O; t_max for dropped tasks
  std::vector<double> window_latency;  // mean latency over the trailing window
  std::vector<double> cum_regret;
  std::vector<std::size_t> selections;  // every decision, re-offloads included
  std::size_t decisions = 0;
  std::size_t reoffloads = 0;
  std::size_t timeouts = 0;
  std::size_t dropped = 0;  // collision losers
  double total_delay = 0.0;  // sum of delivered feedback delays
  // Hindsight-best arm of the final phase.
  Arm comparator_arm = 0;

  double final_regret() const { return cum_regret.empty() ? 0.0 : cum_regret.back(); }
  double final_window_latency() const {
    return window_latency.empty() ? 0.0 : window_latency.back();
  }
  // Most frequent fresh choice over slots [begin, end) (1-based, end exclusive);
  // lowest arm on ties.
  Arm modal_arm(Slot begin, Slot end) const;
  double arm_frequency(Arm arm, Slot begin, Slot end) const;
};

// Ergodic-average diagnostics of a two-player matrix game at one slot.
struct NeCheckpoint {
  Slot slot = 0;
  double row_gap = 0.0;
  double column_gap = 0.0;
  std::vector<double> row_average;
  std::vector<double> column_average;
};

struct RunMetrics {
  std::size_t run = 0;
  std::vector<AgentSeries> agents;
  // "fixed" or "per_phase".
  std::string comparator = "fixed";
  // Counterfactual loss vectors per slot (only when the scenario asks).
  std::vector<std::vector<double>> counterfactuals;
  // Matrix-game scenarios: checkpoints at T/3, 2T/3 and T.
  std::vector<NeCheckpoint> ne_checkpoints;
  // Final environment fingerprint, for determinism checks.
  std::uint64_t state_hash = 0;

  double total_regret() const;
};

// Recomputes a cumulative regret series from per-decision played losses and
// the counterfactual matrix; used to cross-check the streamed series.
std::vector<double> regret_from_counterfactuals(
    const std::vector<std::vector<double>>& counterfactuals, const std::vector<std::uint32_t>& arms,
    Slot phase_break = 0);

RunMetrics run_single_agent(const ScenarioConfig& scenario, std::size_t run);
RunMetrics run_single_agent(const ScenarioConfig& scenario, std::size_t run,
                            const PolicyFactory& factory);
RunMetrics run_multi_agent(const ScenarioConfig& scenario, std::size_t run);
RunMetrics run_multi_agent(const ScenarioConfig& scenario, std::size_t run,
                           const PolicyFactory& factory);

// Dispatches on mode and agent count.
RunMetrics run_scenario(const ScenarioConfig& scenario, std::size_t run);

}  // namespace fog::harness
