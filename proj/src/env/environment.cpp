#include "fog/env/environment.hpp"

#include "fog/common/errors.hpp"
#include "fog/common/random.hpp"

namespace fog::env {

Environment::Environment(const EnvConfig& config, Topology topology,
                         std::uint64_t master_seed, std::uint64_t run)
    : config_(config), topology_(std::move(topology)) {
  const std::size_t k = topology_.nodes.size();
  if (k == 0) throw ConfigError("environment needs at least one service node");
  dispatch_.reserve(k);
  nodes_.reserve(k);
  for (std::size_t j = 0; j < k; ++j) {
    const auto& s = topology_.nodes[j];
    dispatch_.push_back(env::dispatch_latency(config_.task, topology_.link_rates[j]));
    nodes_.emplace_back(j, s.arrival_rate, s.service_rate, config_.service,
                        derive_stream(master_seed, run, StreamId::kQueueEvents, j),
                        derive_stream(master_seed, run, StreamId::kServiceRate, j));
  }
}

void Environment::advance_to(double time) {
  for (auto& n : nodes_) {
    if (n.clock() < time) n.advance(time);
  }
}

double Environment::dispatch_latency(Arm arm) const { return dispatch_.at(arm); }

LatencyBreakdown Environment::estimate_latency(Arm arm) const {
  const auto& n = nodes_.at(arm);
  const double c = computation_latency_estimate(static_cast<double>(n.queue_length()),
                                                config_.task, n.nominal_service_rate());
  return combine_latency(dispatch_[arm], c);
}

std::vector<double> Environment::counterfactual_losses() const {
  std::vector<double> out(nodes_.size());
  for (std::size_t j = 0; j < nodes_.size(); ++j) {
    out[j] = normalize_loss(estimate_latency(j).total, config_.loss);
  }
  return out;
}

LatencyBreakdown Environment::execute_offload(Arm arm, double dispatch_time) {
  auto& n = nodes_.at(arm);
  const double arrival = dispatch_time + dispatch_[arm];
  n.advance(arrival);
  const double sojourn = n.execute(config_.task.work());
  return combine_latency(dispatch_[arm], sojourn);
}

void Environment::set_arrival_rate(Arm arm, double rate) { nodes_.at(arm).set_arrival_rate(rate); }

std::uint64_t Environment::state_hash() const {
  std::uint64_t h = 1469598103934665603ULL;
  for (const auto& n : nodes_) h = (h ^ n.state_hash()) * 1099511628211ULL;
  return h;
}

}  // namespace fog::env
