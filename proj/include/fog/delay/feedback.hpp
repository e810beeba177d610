#pragma once

#include <cstddef>
#include <map>
#include <unordered_map>
#include <vector>

#include "fog/common/types.hpp"
#include "fog/env/latency.hpp"

namespace fog::delay {

struct DelayConfig {
  Slot d_max = 3;
  int retry_cap = 1;
  // Every record is delivered exactly one slot after dispatch.
  bool force_min_delay = false;
  // When false, slow tasks are never declared failed; they report their
  // normalized loss whenever they finish.
  bool timeouts = true;

  void validate() const;
  bool operator==(const DelayConfig&) const = default;
};

// Identity of one dispatch as seen by the delay channel.
struct Dispatch {
  TaskId task = 0;
  TaskId origin = 0;  // task id of the first dispatch of this piece of work
  std::size_t agent = 0;
  Slot slot = 0;
  Arm arm = 0;
};

struct FeedbackRecord {
  TaskId task = 0;
  TaskId origin = 0;
  std::size_t agent = 0;
  Slot dispatch_slot = 0;
  Arm arm = 0;
  double loss = 0.0;
  Slot delay = 0;  // d_s, before the d_max cut-off
  bool timed_out = false;
  double latency = 0.0;  // realized O; +inf for a task that was never served
  Slot delivery = 0;

  Slot delivery_slot() const { return delivery; }
};

struct FeedbackSet {
  Slot slot = 0;
  std::vector<FeedbackRecord> records;

  bool empty() const { return records.empty(); }
  std::size_t size() const { return records.size(); }
};

// d_s = max(1, ceil(O)). A record with d_s >= d_max is a failure: loss 1,
// delivered at s + d_max. Otherwise loss = O / T_max (clamped), delivered at
// s + d_s. A non-finite O (task dropped) always counts as a failure.
FeedbackRecord schedule_feedback(const Dispatch& dispatch, double total_latency,
                                 const DelayConfig& delay, const env::LossConfig& loss);

// Holds records in flight and hands them out on their delivery slot.
class FeedbackBuffer {
 public:
  explicit FeedbackBuffer(DelayConfig config);

  void push(const FeedbackRecord& record);

  // Removes and returns every record due at `slot`, in insertion order.
  FeedbackSet collect(Slot slot);

  // Origins of tasks that timed out in the last collect(slot) and still have
  // retry budget; each returned origin has its retry counter incremented.
  // Call after collect(slot).
  std::vector<TaskId> reoffload_due(Slot slot);

  std::size_t pending() const { return pending_; }

 private:
  DelayConfig config_;
  std::map<Slot, std::vector<FeedbackRecord>> due_;
  std::map<Slot, std::vector<TaskId>> timed_out_;
  std::unordered_map<TaskId, int> retries_;
  std::size_t pending_ = 0;
};

}  // namespace fog::delay
