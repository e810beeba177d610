#pragma once

#include <cstddef>
#include <vector>

#include "fog/policies/deb.hpp"
#include "fog/policies/exponential_weights.hpp"
#include "fog/policies/policy.hpp"

namespace fog::policies {

// EXP3-IX without delay: the loss of each dispatch is seen in its own slot and
// weighted by the current probability of the arm.
class Exp3Ix final : public Policy {
 public:
  Exp3Ix(std::size_t arms, StepSizes steps);

  std::string_view name() const override { return "exp3ix"; }
  std::size_t num_arms() const override { return weights_.size(); }
  Arm select_arm(Rng& rng) override { return weights_.sample(rng); }
  void ingest(const delay::FeedbackSet& feedback) override;
  bool wants_immediate_feedback() const override { return true; }
  std::vector<double> distribution() const override;

 private:
  ExponentialWeights weights_;
  StepSizes steps_;
};

// Auer et al. EXP3 on rewards r = 1 - l with uniform mixing gamma, fed without
// delay. Default gamma = min(1, sqrt(K ln K / ((e - 1) T))).
class Exp3 final : public Policy {
 public:
  Exp3(std::size_t arms, double gamma);

  static double default_gamma(std::size_t arms, Slot horizon);

  std::string_view name() const override { return "exp3"; }
  std::size_t num_arms() const override { return weights_.size(); }
  Arm select_arm(Rng& rng) override;
  void ingest(const delay::FeedbackSet& feedback) override;
  bool wants_immediate_feedback() const override { return true; }
  std::vector<double> distribution() const override;

  double gamma() const { return gamma_; }

 private:
  ExponentialWeights weights_;
  double gamma_;
};

}  // namespace fog::policies
