#pragma once

#include <cstddef>
#include <deque>
#include <vector>

#include "fog/policies/policy.hpp"

namespace fog::policies {

// Beta-posterior Thompson sampler on rewards 1 - l with fractional updates:
// alpha += 1 - l, beta += l, starting from Beta(1, 1).
class BetaThompson {
 public:
  explicit BetaThompson(std::size_t arms);

  void observe(Arm arm, double loss);
  // Arm with the largest posterior draw; ties go to the lowest index.
  Arm propose(Rng& rng) const;
  double mean_reward(Arm arm) const;
  std::size_t size() const { return alpha_.size(); }

 private:
  std::vector<double> alpha_;
  std::vector<double> beta_;
};

// Queued Partial Monitoring with Delayed Feedback over a Thompson base learner.
// Feedback is parked in a FIFO per arm. To choose, the base proposes an arm; if
// that arm's queue holds samples, the oldest is fed to the base and the base is
// asked again, until it proposes an arm with an empty queue, which is played.
class Qpmd : public Policy {
 public:
  explicit Qpmd(std::size_t arms);

  std::string_view name() const override { return "qpmd"; }
  std::size_t num_arms() const override { return base_.size(); }
  Arm select_arm(Rng& rng) override;
  void ingest(const delay::FeedbackSet& feedback) override;

  std::size_t queued(Arm arm) const { return queues_.at(arm).size(); }
  std::size_t consumed() const { return consumed_; }
  const BetaThompson& base() const { return base_; }

 protected:
  BetaThompson base_;
  std::vector<std::deque<double>> queues_;
  std::size_t consumed_ = 0;
};

// Stochastic Delayed Bandits, reconstructed: the QPM-D base above still
// receives every sample through the queues, but the played arm comes from a
// heuristic Thompson sampler that sees all feedback as soon as it arrives with
// probability `heuristic_weight`, and from the base proposal otherwise.
class Sdb final : public Qpmd {
 public:
  Sdb(std::size_t arms, double heuristic_weight);

  std::string_view name() const override { return "sdb"; }
  Arm select_arm(Rng& rng) override;
  void ingest(const delay::FeedbackSet& feedback) override;

 private:
  BetaThompson heuristic_;
  double heuristic_weight_;
};

}  // namespace fog::policies
