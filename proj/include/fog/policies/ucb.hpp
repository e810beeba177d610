#pragma once

#include <cstddef>
#include <deque>
#include <vector>

#include "fog/policies/policy.hpp"

namespace fog::policies {

// Discounted UCB over delivered feedback, on rewards r = 1 - l.
//
// When the records of slot t arrive, every statistic is first discounted by
// gamma^(t - t_prev); each record then adds weight 1. The index of arm j is
//   S_j / N_j + sqrt(xi * ln(max(n, 1)) / N_j),   n = sum_j N_j,
// and arms with N_j == 0 come first. Ties go to the lowest arm index. With
// gamma = 1 and xi = 2 this is UCB1.
class Ducb final : public Policy {
 public:
  Ducb(std::size_t arms, double discount, double exploration);

  std::string_view name() const override { return "ducb"; }
  std::size_t num_arms() const override { return counts_.size(); }
  Arm select_arm(Rng& rng) override;
  void ingest(const delay::FeedbackSet& feedback) override;

  // +inf for arms without feedback.
  std::vector<double> indices() const;
  double discounted_count(Arm arm) const { return counts_.at(arm); }

 private:
  double discount_;
  double exploration_;
  std::vector<double> counts_;
  std::vector<double> reward_sums_;
  Slot last_slot_ = 0;
  bool started_ = false;
};

// BLOT-style index: a lower confidence bound on the mean loss, computed only
// from feedback delivered within the last `window` slots:
//   mean_j - sqrt(xi * ln(min(t, window)) / N_j),
// lowest index played, arms with no feedback in the window first, ties to the
// lowest arm index.
class Blot final : public Policy {
 public:
  Blot(std::size_t arms, Slot window, double exploration);

  std::string_view name() const override { return "blot"; }
  std::size_t num_arms() const override { return samples_.size(); }
  Arm select_arm(Rng& rng) override;
  void ingest(const delay::FeedbackSet& feedback) override;

  // -inf for arms without feedback in the window.
  std::vector<double> indices() const;

 private:
  struct Sample {
    Slot slot;
    double loss;
  };
  void expire(Slot now);

  Slot window_;
  double exploration_;
  std::vector<std::deque<Sample>> samples_;
  std::vector<double> sums_;
  Slot now_ = 0;
};

}  // namespace fog::policies
