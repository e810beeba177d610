#include "fog/policies/deb.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "fog/common/errors.hpp"
#include "fog/policies/estimator.hpp"

namespace fog::policies {

StepSizes theorem1_params(std::size_t arms, Slot horizon, double delay_budget, double delta) {
  if (arms < 2) throw ConfigError("theorem1_params: K must be at least 2");
  if (horizon < 1) throw ConfigError("theorem1_params: T must be at least 1");
  if (!(delta > 0.0 && delta < 1.0)) throw ConfigError("theorem1_params: delta must be in (0, 1)");
  if (!(delay_budget >= 0.0)) throw ConfigError("theorem1_params: delay budget must be >= 0");
  const double k = static_cast<double>(arms);
  const double t = static_cast<double>(horizon);
  const double numerator = std::log(k) + std::log(k / delta);
  const double denominator = delay_budget + (std::numbers::e + 1.0) * k * t / 2.0;
  const double eta = std::sqrt(numerator / denominator);
  return {eta, eta / 2.0};
}

Deb::Deb(std::size_t arms, StepSizes steps, SnapshotMode snapshot)
    : weights_(arms), steps_(steps), snapshot_mode_(snapshot), cumulative_(arms, 0.0) {
  if (!(steps.eta > 0.0)) throw ConfigError("deb: eta must be positive");
  if (!(steps.beta >= 0.0)) throw ConfigError("deb: beta must be non-negative");
}

Arm Deb::select_arm(Rng& rng) { return weights_.sample(rng); }

void Deb::on_dispatch(TaskId task, Arm arm) {
  snapshots_[task] = {arm, weights_.probabilities()[arm]};
}

void Deb::ingest(const delay::FeedbackSet& feedback) {
  if (feedback.empty()) return;
  const std::size_t k = weights_.size();
  std::vector<std::vector<double>> per_arm(k);
  for (const auto& r : feedback.records) {
    auto it = snapshots_.find(r.task);
    if (it == snapshots_.end() || it->second.arm != r.arm) {
      throw AccountingError("deb: feedback for unknown dispatch " + std::to_string(r.task));
    }
    const double p = snapshot_mode_ == SnapshotMode::kDispatch
                         ? it->second.probability
                         : weights_.probabilities()[r.arm];
    per_arm[r.arm].push_back(estimate_loss(r.loss, p, steps_.beta, true));
    snapshots_.erase(it);
  }
  // Sorted summation makes the update independent of record order.
  std::vector<double> estimates(k, 0.0);
  for (std::size_t j = 0; j < k; ++j) {
    std::sort(per_arm[j].begin(), per_arm[j].end());
    for (double v : per_arm[j]) estimates[j] += v;
    cumulative_[j] += estimates[j];
  }
  weights_.apply(estimates, steps_.eta);
}

std::vector<double> Deb::distribution() const {
  auto p = weights_.probabilities();
  return {p.begin(), p.end()};
}

}  // namespace fog::policies
