#include "fog/env/latency.hpp"

#include <cmath>

#include "fog/common/errors.hpp"

namespace fog::env {

void TaskSpec::validate() const {
  if (!(size > 0.0)) throw ConfigError("task.size must be positive");
  if (!(compute_factor > 0.0)) throw ConfigError("task.compute_factor must be positive");
}

void LossConfig::validate() const {
  if (!(t_max > 0.0)) throw ConfigError("t_max must be positive");
}

double dispatch_latency(const TaskSpec& task, double rate) {
  if (!(rate > 0.0)) throw ModelError("dispatch_latency: transmission rate must be positive");
  return task.size / rate;
}

double computation_latency_estimate(double queue_length, const TaskSpec& task,
                                    double service_rate) {
  if (!(service_rate > 0.0)) {
    throw ModelError("computation_latency_estimate: service rate must be positive");
  }
  return (queue_length + task.work()) / service_rate;
}

LatencyBreakdown combine_latency(double dispatch, double compute) {
  return {dispatch, compute, dispatch + compute};
}

double normalize_loss(double total_latency, const LossConfig& config) {
  if (total_latency < config.t_max) return total_latency / config.t_max;
  return 1.0;
}

}  // namespace fog::env
