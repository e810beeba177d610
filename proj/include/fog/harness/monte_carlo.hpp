#pragma once

#include <cstddef>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "fog/harness/runner.hpp"
#include "fog/harness/scenario.hpp"

namespace fog::harness {

// Running mean and standard error of a per-slot series across runs.
class SeriesAccumulator {
 public:
  void add(const std::vector<double>& series);
  std::size_t count() const { return count_; }
  const std::vector<double>& mean() const { return mean_; }
  // Standard error of the mean; zeros for a single run.
  std::vector<double> standard_error() const;

 private:
  std::size_t count_ = 0;
  std::vector<double> mean_;
  std::vector<double> m2_;
};

struct AgentAggregate {
  SeriesAccumulator regret;
  SeriesAccumulator window_latency;
  std::vector<double> selection_mean;  // mean decisions per arm
};

// Scalar outcome of one run, summed (regret) or averaged (the rest) over agents.
struct RunSummary {
  std::size_t run = 0;
  double final_regret = 0.0;
  double final_latency = 0.0;
  // Share of the final third of fresh decisions spent on the comparator arm.
  double best_arm_frequency = 0.0;
  std::vector<Arm> modal_final_third;  // per agent
};

RunSummary summarize(const RunMetrics& metrics, Slot horizon);

struct Summary {
  std::size_t runs = 0;
  double final_regret_mean = 0.0;
  double final_regret_se = 0.0;
  double final_latency_mean = 0.0;
  double best_arm_frequency = 0.0;
};

struct MonteCarloOptions {
  std::size_t workers = 1;
  bool keep_runs = false;
  // Replaces the scenario's own policies when set.
  std::optional<PolicyFactory> factory;
  // Called once per run, in run-index order, from a single thread at a time.
  std::function<void(const RunMetrics&)> on_run;
};

struct MonteCarloResult {
  std::vector<RunMetrics> runs;  // only with keep_runs
  std::vector<RunSummary> summaries;
  std::vector<AgentAggregate> agents;
  Summary summary;
  std::string comparator;
};

// Executes scenario.runs independent runs (run index i uses streams derived
// from (seed, i)) on `workers` threads and folds them in index order, so the
// result does not depend on the worker count.
MonteCarloResult monte_carlo(const ScenarioConfig& scenario, const MonteCarloOptions& options = {});

}  // namespace fog::harness
