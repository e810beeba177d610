#pragma once

#include <cstddef>
#include <vector>

#include "fog/common/random.hpp"
#include "fog/env/channel.hpp"
#include "fog/env/latency.hpp"
#include "fog/env/service_node.hpp"

namespace fog::env {

enum class ArrivalRuleKind {
  kLinear,           // lambda_i = base + step * i, i = 1..K
  kList,             // explicit per-node rates
  kBestPlusUniform,  // node 1 at best_rate, the rest uniform on [low, high]
};

struct ArrivalRule {
  ArrivalRuleKind kind = ArrivalRuleKind::kLinear;
  double base = 4.5;
  double step = 0.5;
  std::vector<double> rates;
  double best_rate = 5.0;
  double low = 6.0;
  double high = 10.0;

  // Consumes `rng` only for kBestPlusUniform.
  std::vector<double> resolve(std::size_t num_nodes, Rng& rng) const;
  bool operator==(const ArrivalRule&) const = default;
};

struct EnvConfig {
  std::size_t num_service_nodes = 6;
  ChannelParams channel;
  // Optional pinned service-node positions (km, task FN at the origin). When
  // empty, nodes are placed uniformly in the disk of channel.radius_km.
  std::vector<Position> positions;
  ArrivalRule arrivals;
  ServiceRateModel service;
  TaskSpec task;
  LossConfig loss;

  void validate() const;
};

struct Topology {
  ChannelParams channel;
  Position task_node;
  std::vector<Position> service_positions;
  std::vector<double> link_rates;  // task units per slot, per service node
  std::vector<ServiceNodeState> nodes;
};

// Task FN at the disk centre, service FNs uniform in the disk (or pinned),
// per-link average rates from the link budget, per-run service rates when the
// model asks for them.
Topology build_topology(const EnvConfig& config, Rng& rng);

}  // namespace fog::env
