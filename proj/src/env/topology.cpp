#include "fog/env/topology.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "fog/common/errors.hpp"

namespace fog::env {

std::vector<double> ArrivalRule::resolve(std::size_t num_nodes, Rng& rng) const {
  std::vector<double> out(num_nodes);
  switch (kind) {
    case ArrivalRuleKind::kLinear:
      for (std::size_t i = 0; i < num_nodes; ++i) {
        out[i] = base + step * static_cast<double>(i + 1);
      }
      break;
    case ArrivalRuleKind::kList:
      if (rates.size() != num_nodes) {
        throw ConfigError("arrival.rates has " + std::to_string(rates.size()) +
                          " entries, expected " + std::to_string(num_nodes));
      }
      out = rates;
      break;
    case ArrivalRuleKind::kBestPlusUniform:
      if (num_nodes > 0) out[0] = best_rate;
      for (std::size_t i = 1; i < num_nodes; ++i) {
        out[i] = low + (high - low) * uniform01(rng);
      }
      break;
  }
  for (double r : out) {
    if (!(r >= 0.0)) throw ConfigError("arrival rates must be non-negative");
  }
  return out;
}

void EnvConfig::validate() const {
  if (num_service_nodes == 0) throw ConfigError("K must be at least 1");
  channel.validate();
  service.validate();
  task.validate();
  loss.validate();
  if (!positions.empty() && positions.size() != num_service_nodes) {
    throw ConfigError("positions_km must list one position per service node");
  }
  for (const auto& p : positions) {
    if (p.distance_to({}) > channel.radius_km) {
      throw ConfigError("positions_km: node outside channel.radius_km");
    }
  }
}

Topology build_topology(const EnvConfig& config, Rng& rng) {
  config.validate();
  Topology topo;
  topo.channel = config.channel;
  topo.task_node = {};

  const std::size_t k = config.num_service_nodes;
  if (config.positions.empty()) {
    topo.service_positions.reserve(k);
    for (std::size_t j = 0; j < k; ++j) {
      const double r = config.channel.radius_km * std::sqrt(uniform01(rng));
      const double theta = 2.0 * std::numbers::pi * uniform01(rng);
      topo.service_positions.push_back({r * std::cos(theta), r * std::sin(theta)});
    }
  } else {
    topo.service_positions = config.positions;
  }

  const auto lambdas = config.arrivals.resolve(k, rng);
  topo.link_rates.reserve(k);
  topo.nodes.reserve(k);
  for (std::size_t j = 0; j < k; ++j) {
    const double d = topo.task_node.distance_to(topo.service_positions[j]);
    topo.link_rates.push_back(transmission_rate(config.channel, d));
    double mu = config.service.mean;
    if (config.service.mode == ServiceRateMode::kPerRun) {
      mu = config.service.draw(rng, config.service.mean);
    }
    topo.nodes.push_back({j, lambdas[j], mu, 0, 0.0});
  }
  return topo;
}

}  // namespace fog::env
