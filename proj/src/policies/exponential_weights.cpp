#include "fog/policies/exponential_weights.hpp"

#include <algorithm>
#include <cmath>

#include "fog/common/errors.hpp"

namespace fog::policies {

ExponentialWeights::ExponentialWeights(std::size_t arms)
    : log_weights_(arms, 0.0), probs_(arms, arms ? 1.0 / static_cast<double>(arms) : 0.0) {
  if (arms == 0) throw ConfigError("exponential weights need at least one arm");
}

void ExponentialWeights::apply(std::span<const double> estimates, double eta) {
  if (estimates.size() != log_weights_.size()) {
    throw UsageError("ExponentialWeights::apply: estimate vector has wrong length");
  }
  for (std::size_t j = 0; j < log_weights_.size(); ++j) {
    log_weights_[j] -= eta * estimates[j];
  }
  renormalize();
}

void ExponentialWeights::renormalize() {
  const double top = *std::max_element(log_weights_.begin(), log_weights_.end());
  double total = 0.0;
  for (std::size_t j = 0; j < log_weights_.size(); ++j) {
    log_weights_[j] -= top;
    probs_[j] = std::exp(log_weights_[j]);
    total += probs_[j];
  }
  for (double& p : probs_) p /= total;
}

Arm ExponentialWeights::sample(Rng& rng) const { return sample_from(probs_, rng); }

Arm sample_from(std::span<const double> probs, Rng& rng) {
  const double u = uniform01(rng);
  double acc = 0.0;
  Arm last_positive = 0;
  for (std::size_t j = 0; j < probs.size(); ++j) {
    if (probs[j] <= 0.0) continue;
    acc += probs[j];
    last_positive = j;
    if (u < acc) return j;
  }
  // Rounding left the cumulative sum a hair below 1.
  return last_positive;
}

}  // namespace fog::policies
