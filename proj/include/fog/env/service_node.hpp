#pragma once

#include <cstddef>
#include <cstdint>
#include <deque>

#include "fog/common/random.hpp"
#include "fog/common/types.hpp"

namespace fog::env {

enum class ServiceRateMode {
  kPerSlot,  // a fresh rate N(mean, std) every slot, clamped at `floor`
  kPerRun,   // one rate per node per run, drawn at topology build
};

struct ServiceRateModel {
  double mean = 6.0;
  double stddev = 1.0;
  double floor = 0.5;
  ServiceRateMode mode = ServiceRateMode::kPerSlot;

  void validate() const;
  // max(floor, mean + stddev * z).
  double draw(Rng& rng, double centre) const;
  bool operator==(const ServiceRateModel&) const = default;
};

struct ServiceNodeState {
  std::size_t id = 0;
  double arrival_rate = 0.0;
  double service_rate = 0.0;  // nominal mean used by the latency estimator
  std::size_t queue_length = 0;
  double event_clock = 0.0;
};

// Single-server FIFO queue fed by a Poisson background stream.
//
// Jobs carry exponential work (mean 1 job unit for background jobs) and the
// server drains work at the rate of the current slot. With a constant rate this
// is exactly M/M/1. Background works are drawn lazily, when a job reaches the
// server or when an inserted task needs the total backlog; by memorylessness
// this leaves the process law unchanged and keeps long unstable queues cheap.
class ServiceNode {
 public:
  ServiceNode(std::size_t id, double arrival_rate, double nominal_service_rate,
              ServiceRateModel model, Rng events, Rng rates);

  // Event-simulates arrivals and departures up to `until`. Throws ModelError
  // when `until` precedes the event clock.
  void advance(double until);

  // Inserts a task of `work_units` expected work at the current clock and
  // returns its realized sojourn (wait + service).
  double execute(double work_units);

  // Adds background jobs at the current clock (test setup and warm starts).
  void preload(std::size_t jobs);

  void set_arrival_rate(double rate);

  std::size_t id() const { return id_; }
  std::size_t queue_length() const { return work_.size() + virtual_jobs_; }
  double clock() const { return clock_; }
  double arrival_rate() const { return arrival_rate_; }
  double nominal_service_rate() const { return nominal_rate_; }
  ServiceNodeState state() const;

  // Service rate in effect during `slot` (slot n covers [n, n + 1)).
  double service_rate_in_slot(Slot slot);

  // Hash of the observable and pending state; equal hashes before and after an
  // operation mean it did not touch the node.
  std::uint64_t state_hash() const;

 private:
  double rate_for(Slot slot);
  void serve(double dt, double rate);
  void materialize_head();
  void materialize_all();

  std::size_t id_;
  double arrival_rate_;
  double nominal_rate_;
  ServiceRateModel model_;
  Rng events_;
  Rng rates_rng_;

  double clock_ = 0.0;
  double next_arrival_;
  std::deque<double> work_;  // front is in service
  std::size_t virtual_jobs_ = 0;
  double workload_ = 0.0;  // sum of work_

  Slot rate_base_ = 0;  // slot of rates_.front()
  std::deque<double> rates_;
};

}  // namespace fog::env
