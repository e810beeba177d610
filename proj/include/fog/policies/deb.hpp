#pragma once

#include <cstddef>
#include <unordered_map>
#include <vector>

#include "fog/policies/exponential_weights.hpp"
#include "fog/policies/policy.hpp"

namespace fog::policies {

struct StepSizes {
  double eta = 0.0;
  double beta = 0.0;
};

// eta = 2 beta = sqrt((ln K + ln(K / delta)) / (D_hat + (e + 1) K T / 2)).
// Throws ConfigError unless K >= 2, T >= 1, 0 < delta < 1 and D_hat >= 0.
StepSizes theorem1_params(std::size_t arms, Slot horizon, double delay_budget, double delta);

// Delayed exponential-weights policy with implicit exploration.
//
// Each dispatch stores the probability its arm had at that moment; when the
// record returns, possibly out of order and together with others, its loss is
// importance-weighted by that stored probability. All estimates arriving in one
// slot are summed per arm and applied as a single multiplicative update. An
// empty feedback set leaves the distribution untouched.
class Deb final : public Policy {
 public:
  Deb(std::size_t arms, StepSizes steps, SnapshotMode snapshot = SnapshotMode::kDispatch);

  std::string_view name() const override { return "deb"; }
  std::size_t num_arms() const override { return weights_.size(); }
  Arm select_arm(Rng& rng) override;
  void on_dispatch(TaskId task, Arm arm) override;
  void ingest(const delay::FeedbackSet& feedback) override;
  std::vector<double> distribution() const override;

  double eta() const { return steps_.eta; }
  double beta() const { return steps_.beta; }
  const ExponentialWeights& weights() const { return weights_; }
  const std::vector<double>& cumulative_estimates() const { return cumulative_; }
  std::size_t outstanding() const { return snapshots_.size(); }

 private:
  struct Snapshot {
    Arm arm;
    double probability;
  };

  ExponentialWeights weights_;
  StepSizes steps_;
  SnapshotMode snapshot_mode_;
  std::unordered_map<TaskId, Snapshot> snapshots_;
  std::vector<double> cumulative_;
};

}  // namespace fog::policies
