#include "fog/policies/thompson.hpp"

#include <random>

#include "fog/common/errors.hpp"

namespace fog::policies {

BetaThompson::BetaThompson(std::size_t arms) : alpha_(arms, 1.0), beta_(arms, 1.0) {
  if (arms == 0) throw ConfigError("thompson sampler needs at least one arm");
}

void BetaThompson::observe(Arm arm, double loss) {
  alpha_.at(arm) += 1.0 - loss;
  beta_.at(arm) += loss;
}

Arm BetaThompson::propose(Rng& rng) const {
  Arm best = 0;
  double best_draw = -1.0;
  for (std::size_t j = 0; j < alpha_.size(); ++j) {
    std::gamma_distribution<double> ga(alpha_[j], 1.0);
    std::gamma_distribution<double> gb(beta_[j], 1.0);
    const double x = ga(rng);
    const double y = gb(rng);
    const double draw = x / (x + y);
    if (draw > best_draw) {
      best_draw = draw;
      best = j;
    }
  }
  return best;
}

double BetaThompson::mean_reward(Arm arm) const {
  return alpha_.at(arm) / (alpha_.at(arm) + beta_.at(arm));
}

Qpmd::Qpmd(std::size_t arms) : base_(arms), queues_(arms) {}

Arm Qpmd::select_arm(Rng& rng) {
  while (true) {
    const Arm proposal = base_.propose(rng);
    auto& q = queues_[proposal];
    if (q.empty()) return proposal;
    base_.observe(proposal, q.front());
    q.pop_front();
    ++consumed_;
  }
}

void Qpmd::ingest(const delay::FeedbackSet& feedback) {
  for (const auto& r : feedback.records) queues_.at(r.arm).push_back(r.loss);
}

Sdb::Sdb(std::size_t arms, double heuristic_weight)
    : Qpmd(arms), heuristic_(arms), heuristic_weight_(heuristic_weight) {
  if (!(heuristic_weight >= 0.0 && heuristic_weight <= 1.0)) {
    throw ConfigError("sdb: heuristic weight must be in [0, 1]");
  }
}

Arm Sdb::select_arm(Rng& rng) {
  const Arm base_arm = Qpmd::select_arm(rng);
  const Arm heuristic_arm = heuristic_.propose(rng);
  return uniform01(rng) < heuristic_weight_ ? heuristic_arm : base_arm;
}

void Sdb::ingest(const delay::FeedbackSet& feedback) {
  Qpmd::ingest(feedback);
  for (const auto& r : feedback.records) heuristic_.observe(r.arm, r.loss);
}

}  // namespace fog::policies
