#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fog/common/random.hpp"
#include "fog/common/types.hpp"
#include "fog/delay/feedback.hpp"

namespace fog::policies {

// Uniform surface for every offloading policy: pick an arm each decision,
// learn from whatever feedback the delay channel hands back.
class Policy {
 public:
  virtual ~Policy() = default;

  virtual std::string_view name() const = 0;
  virtual std::size_t num_arms() const = 0;

  virtual Arm select_arm(Rng& rng) = 0;

  // Called once per dispatch, right after select_arm chose `arm` for `task`.
  virtual void on_dispatch(TaskId task, Arm arm) {
    (void)task;
    (void)arm;
  }

  virtual void ingest(const delay::FeedbackSet& feedback) = 0;

  // No-delay reference policies see their own loss in the dispatch slot and
  // bypass the delay channel.
  virtual bool wants_immediate_feedback() const { return false; }

  // Current mixed strategy, or empty for index policies without one.
  virtual std::vector<double> distribution() const { return {}; }
};

enum class PolicyKind { kExp3, kExp3Ix, kQpmd, kSdb, kDucb, kBlot, kDeb };

// Which probability divides the loss in the importance-weighted estimate.
enum class SnapshotMode {
  kDispatch,  // probability of the arm when the task was dispatched
  kDelivery,  // probability of the arm when the feedback arrives
};

// Tunables for every policy kind; fields irrelevant to a kind are ignored.
struct PolicySpec {
  PolicyKind kind = PolicyKind::kDeb;
  double delta = 0.05;
  std::optional<double> delay_budget;  // D-hat; defaults to d_max * T / 2
  std::optional<double> eta;
  std::optional<double> beta;
  SnapshotMode snapshot = SnapshotMode::kDispatch;
  std::optional<double> exp3_gamma;
  double ducb_discount = 0.995;
  double ducb_exploration = 2.0;
  Slot blot_window = 500;
  double blot_exploration = 2.0;
  double sdb_heuristic_weight = 0.5;

  bool operator==(const PolicySpec&) const = default;
};

// Facts about the run a policy is built for.
struct PolicyContext {
  std::size_t arms = 0;
  Slot horizon = 1;
  Slot d_max = 1;
};

std::string_view to_string(PolicyKind kind);
std::string_view to_string(SnapshotMode mode);
// Throws ConfigError listing the valid names.
PolicyKind parse_policy_kind(std::string_view name);
SnapshotMode parse_snapshot_mode(std::string_view name);
const std::vector<std::string>& policy_names();

}  // namespace fog::policies
