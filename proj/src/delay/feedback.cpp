#include "fog/delay/feedback.hpp"

#include <cmath>
#include <string>

#include "fog/common/errors.hpp"

namespace fog::delay {

void DelayConfig::validate() const {
  if (d_max < 1) throw ConfigError("d_max must be at least 1");
  if (retry_cap < 0) throw ConfigError("retry_cap must be non-negative");
}

FeedbackRecord schedule_feedback(const Dispatch& dispatch, double total_latency,
                                 const DelayConfig& delay, const env::LossConfig& loss) {
  if (total_latency < 0.0) throw ModelError("schedule_feedback: negative latency");
  FeedbackRecord r;
  r.task = dispatch.task;
  r.origin = dispatch.origin;
  r.agent = dispatch.agent;
  r.dispatch_slot = dispatch.slot;
  r.arm = dispatch.arm;
  r.latency = total_latency;

  if (!std::isfinite(total_latency)) {
    r.loss = 1.0;
    if (delay.force_min_delay) {
      r.delay = 1;
      r.delivery = dispatch.slot + 1;
    } else {
      r.delay = delay.d_max;
      r.timed_out = delay.timeouts;
      r.delivery = dispatch.slot + delay.d_max;
    }
    return r;
  }

  if (delay.force_min_delay) {
    r.delay = 1;
    r.loss = env::normalize_loss(total_latency, loss);
    r.delivery = dispatch.slot + 1;
    return r;
  }

  r.delay = std::max<Slot>(1, static_cast<Slot>(std::ceil(total_latency)));
  if (delay.timeouts && r.delay >= delay.d_max) {
    r.timed_out = true;
    r.loss = 1.0;
    r.delivery = dispatch.slot + delay.d_max;
  } else {
    r.loss = env::normalize_loss(total_latency, loss);
    r.delivery = dispatch.slot + r.delay;
  }
  return r;
}

FeedbackBuffer::FeedbackBuffer(DelayConfig config) : config_(config) { config_.validate(); }

void FeedbackBuffer::push(const FeedbackRecord& record) {
  if (record.delivery <= record.dispatch_slot) {
    throw AccountingError("feedback for task " + std::to_string(record.task) +
                          " delivered no later than its dispatch slot");
  }
  due_[record.delivery].push_back(record);
  ++pending_;
}

FeedbackSet FeedbackBuffer::collect(Slot slot) {
  FeedbackSet set;
  set.slot = slot;
  auto it = due_.find(slot);
  if (it == due_.end()) return set;
  set.records = std::move(it->second);
  due_.erase(it);
  pending_ -= set.records.size();
  std::vector<TaskId> failed;
  for (const auto& r : set.records) {
    if (r.timed_out) failed.push_back(r.origin);
  }
  if (!failed.empty()) timed_out_[slot] = std::move(failed);
  return set;
}

std::vector<TaskId> FeedbackBuffer::reoffload_due(Slot slot) {
  std::vector<TaskId> out;
  auto it = timed_out_.find(slot);
  if (it == timed_out_.end()) return out;
  for (TaskId origin : it->second) {
    int& count = retries_[origin];
    if (count < config_.retry_cap) {
      ++count;
      out.push_back(origin);
    }
  }
  timed_out_.erase(it);
  return out;
}

}  // namespace fog::delay
