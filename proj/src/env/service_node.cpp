#include "fog/env/service_node.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>

#include "fog/common/errors.hpp"

namespace fog::env {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::uint64_t mix(std::uint64_t h, std::uint64_t v) {
  h ^= v + 0x9e3779b97f4a7c15ULL + (h << 6) + (h >> 2);
  return h;
}

std::uint64_t bits(double v) { return std::bit_cast<std::uint64_t>(v); }

}  // namespace

void ServiceRateModel::validate() const {
  if (!(mean > 0.0)) throw ConfigError("service.mean must be positive");
  if (!(stddev >= 0.0)) throw ConfigError("service.std must be non-negative");
  if (!(floor > 0.0)) throw ConfigError("service.floor must be positive");
}

double ServiceRateModel::draw(Rng& rng, double centre) const {
  if (stddev == 0.0) return std::max(floor, centre);
  return std::max(floor, centre + stddev * standard_normal(rng));
}

ServiceNode::ServiceNode(std::size_t id, double arrival_rate, double nominal_service_rate,
                         ServiceRateModel model, Rng events, Rng rates)
    : id_(id),
      arrival_rate_(arrival_rate),
      nominal_rate_(nominal_service_rate),
      model_(model),
      events_(std::move(events)),
      rates_rng_(std::move(rates)) {
  if (!(arrival_rate >= 0.0)) throw ModelError("arrival rate must be non-negative");
  if (!(nominal_service_rate > 0.0)) throw ModelError("service rate must be positive");
  next_arrival_ = exponential(events_, arrival_rate_);
}

double ServiceNode::rate_for(Slot slot) {
  if (model_.mode == ServiceRateMode::kPerRun) return nominal_rate_;
  // Past slots are never revisited: the clock only moves forward.
  const auto first_needed = static_cast<Slot>(std::floor(clock_));
  while (rate_base_ < first_needed && !rates_.empty()) {
    rates_.pop_front();
    ++rate_base_;
  }
  if (rates_.empty()) rate_base_ = std::max(rate_base_, first_needed);
  if (slot < rate_base_) throw ModelError("service rate requested for a past slot");
  while (static_cast<Slot>(rates_.size()) <= slot - rate_base_) {
    rates_.push_back(model_.draw(rates_rng_, nominal_rate_));
  }
  return rates_[static_cast<std::size_t>(slot - rate_base_)];
}

double ServiceNode::service_rate_in_slot(Slot slot) { return rate_for(slot); }

void ServiceNode::serve(double dt, double rate) {
  if (work_.empty() || dt <= 0.0) return;
  const double done = std::min(work_.front(), dt * rate);
  work_.front() -= done;
  workload_ -= done;
}

void ServiceNode::materialize_head() {
  --virtual_jobs_;
  const double w = exponential(events_, 1.0);
  work_.push_back(w);
  workload_ += w;
}

void ServiceNode::materialize_all() {
  while (virtual_jobs_ > 0) materialize_head();
}

void ServiceNode::advance(double until) {
  if (until < clock_) {
    throw ModelError("ServiceNode::advance: time regression on node " + std::to_string(id_));
  }
  while (clock_ < until) {
    const auto slot = static_cast<Slot>(std::floor(clock_));
    const double segment_end = std::min(until, static_cast<double>(slot + 1));
    const double rate = rate_for(slot);
    while (true) {
      if (work_.empty() && virtual_jobs_ > 0) materialize_head();
      const double departure = work_.empty() ? kInf : clock_ + work_.front() / rate;
      const double next = std::min(departure, next_arrival_);
      if (next >= segment_end) {
        serve(segment_end - clock_, rate);
        clock_ = segment_end;
        break;
      }
      if (departure <= next_arrival_) {
        workload_ -= work_.front();
        work_.pop_front();
        if (work_.empty()) workload_ = 0.0;
        clock_ = departure;
      } else {
        serve(next_arrival_ - clock_, rate);
        clock_ = next_arrival_;
        ++virtual_jobs_;
        next_arrival_ = clock_ + exponential(events_, arrival_rate_);
      }
    }
  }
}

double ServiceNode::execute(double work_units) {
  if (!(work_units > 0.0)) throw ModelError("ServiceNode::execute: work must be positive");
  materialize_all();
  const double own = work_units * exponential(events_, 1.0);
  // FIFO without preemption: later arrivals cannot delay this task, so its
  // completion is where cumulative service reaches backlog + own work.
  double remaining = workload_ + own;
  double t = clock_;
  while (true) {
    const auto slot = static_cast<Slot>(std::floor(t));
    const double rate = rate_for(slot);
    const double capacity = (static_cast<double>(slot + 1) - t) * rate;
    if (remaining <= capacity) {
      t += remaining / rate;
      break;
    }
    remaining -= capacity;
    t = static_cast<double>(slot + 1);
  }
  work_.push_back(own);
  workload_ += own;
  return t - clock_;
}

void ServiceNode::preload(std::size_t jobs) { virtual_jobs_ += jobs; }

void ServiceNode::set_arrival_rate(double rate) {
  if (!(rate >= 0.0)) throw ModelError("arrival rate must be non-negative");
  arrival_rate_ = rate;
  // Memoryless: resampling the pending arrival at the new rate is exact.
  next_arrival_ = clock_ + exponential(events_, arrival_rate_);
}

ServiceNodeState ServiceNode::state() const {
  return {id_, arrival_rate_, nominal_rate_, queue_length(), clock_};
}

std::uint64_t ServiceNode::state_hash() const {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  h = mix(h, id_);
  h = mix(h, bits(arrival_rate_));
  h = mix(h, bits(clock_));
  h = mix(h, bits(next_arrival_));
  h = mix(h, virtual_jobs_);
  h = mix(h, bits(workload_));
  for (double w : work_) h = mix(h, bits(w));
  h = mix(h, static_cast<std::uint64_t>(rate_base_));
  for (double r : rates_) h = mix(h, bits(r));
  return h;
}

}  // namespace fog::env
