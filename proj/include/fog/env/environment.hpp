#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "fog/env/latency.hpp"
#include "fog/env/service_node.hpp"
#include "fog/env/topology.hpp"

namespace fog::env {

// The fog network seen by the task FNs: one queue per service FN plus the
// static link rates from the task FN at the disk centre.
class Environment {
 public:
  // Node event and service-rate streams are derived from (master_seed, run).
  Environment(const EnvConfig& config, Topology topology, std::uint64_t master_seed,
              std::uint64_t run);

  std::size_t num_arms() const { return nodes_.size(); }
  const Topology& topology() const { return topology_; }
  const TaskSpec& task() const { return config_.task; }
  const LossConfig& loss_config() const { return config_.loss; }

  // Brings every node whose clock lags `time` up to `time`.
  void advance_to(double time);

  double dispatch_latency(Arm arm) const;

  // Dispatch + computation latency estimate from the node's current state. Read-only.
  LatencyBreakdown estimate_latency(Arm arm) const;

  // Normalized estimated loss for every arm from current queue states. Never
  // mutates the environment.
  std::vector<double> counterfactual_losses() const;

  // Ships a task dispatched at `dispatch_time` to `arm`: the task reaches the
  // node after the dispatch latency and joins its queue. Returns the realized
  // dispatch + sojourn latency.
  LatencyBreakdown execute_offload(Arm arm, double dispatch_time);

  void set_arrival_rate(Arm arm, double rate);

  ServiceNode& node(Arm arm) { return nodes_.at(arm); }
  const ServiceNode& node(Arm arm) const { return nodes_.at(arm); }

  std::uint64_t state_hash() const;

 private:
  EnvConfig config_;
  Topology topology_;
  std::vector<double> dispatch_;
  std::vector<ServiceNode> nodes_;
};

}  // namespace fog::env
