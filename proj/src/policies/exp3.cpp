#include "fog/policies/exp3.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "fog/common/errors.hpp"
#include "fog/policies/estimator.hpp"

namespace fog::policies {

Exp3Ix::Exp3Ix(std::size_t arms, StepSizes steps) : weights_(arms), steps_(steps) {
  if (!(steps.eta > 0.0)) throw ConfigError("exp3ix: eta must be positive");
  if (!(steps.beta >= 0.0)) throw ConfigError("exp3ix: beta must be non-negative");
}

void Exp3Ix::ingest(const delay::FeedbackSet& feedback) {
  for (const auto& r : feedback.records) {
    std::vector<double> estimates(weights_.size(), 0.0);
    estimates[r.arm] = estimate_loss(r.loss, weights_.probabilities()[r.arm], steps_.beta, true);
    weights_.apply(estimates, steps_.eta);
  }
}

std::vector<double> Exp3Ix::distribution() const {
  auto p = weights_.probabilities();
  return {p.begin(), p.end()};
}

Exp3::Exp3(std::size_t arms, double gamma) : weights_(arms), gamma_(gamma) {
  if (!(gamma > 0.0 && gamma <= 1.0)) throw ConfigError("exp3: gamma must be in (0, 1]");
}

double Exp3::default_gamma(std::size_t arms, Slot horizon) {
  const double k = static_cast<double>(std::max<std::size_t>(arms, 2));
  const double t = static_cast<double>(std::max<Slot>(horizon, 1));
  return std::min(1.0, std::sqrt(k * std::log(k) / ((std::numbers::e - 1.0) * t)));
}

std::vector<double> Exp3::distribution() const {
  const auto w = weights_.probabilities();
  const double k = static_cast<double>(w.size());
  std::vector<double> p(w.size());
  for (std::size_t j = 0; j < w.size(); ++j) p[j] = (1.0 - gamma_) * w[j] + gamma_ / k;
  return p;
}

Arm Exp3::select_arm(Rng& rng) { return sample_from(distribution(), rng); }

void Exp3::ingest(const delay::FeedbackSet& feedback) {
  const double k = static_cast<double>(weights_.size());
  for (const auto& r : feedback.records) {
    const auto p = distribution();
    std::vector<double> estimates(weights_.size(), 0.0);
    // Rewards enter as negative losses.
    estimates[r.arm] = -(1.0 - r.loss) / p[r.arm];
    weights_.apply(estimates, gamma_ / k);
  }
}

}  // namespace fog::policies
