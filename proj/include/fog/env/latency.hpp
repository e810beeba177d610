#pragma once

#include <cstddef>

namespace fog::env {

// One offloaded task. Size is in normalized task units; the computation demand
// placed on a service queue is compute_factor * size job units.
struct TaskSpec {
  double size = 1.0;
  double compute_factor = 1.0;

  double work() const { return size * compute_factor; }
  void validate() const;
  bool operator==(const TaskSpec&) const = default;
};

struct LossConfig {
  double t_max = 5.0;  // maximal tolerable latency, slots

  void validate() const;
  bool operator==(const LossConfig&) const = default;
};

struct LatencyBreakdown {
  double dispatch = 0.0;
  double compute = 0.0;
  double total = 0.0;
};

// b / r.  Throws ModelError when rate <= 0.
double dispatch_latency(const TaskSpec& task, double rate);

// (Q + k b) / mu.  This is an estimate: the realized sojourn comes from the
// queue simulation.  Throws ModelError when service_rate <= 0.
double computation_latency_estimate(double queue_length, const TaskSpec& task,
                                    double service_rate);

LatencyBreakdown combine_latency(double dispatch, double compute);

// O / T_max when O < T_max, exactly 1 otherwise.
double normalize_loss(double total_latency, const LossConfig& config);

}  // namespace fog::env
