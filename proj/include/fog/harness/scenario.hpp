#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fog/common/types.hpp"
#include "fog/delay/feedback.hpp"
#include "fog/env/topology.hpp"
#include "fog/game/collision.hpp"
#include "fog/policies/policy.hpp"

namespace fog::harness {

enum class ScenarioMode {
  kOffload,     // task FNs offloading into the simulated fog network
  kMatrixGame,  // two agents playing a fixed cost matrix with synthetic delays
};

std::string_view to_string(ScenarioMode mode);
ScenarioMode parse_scenario_mode(std::string_view name);

// Arrival rate of one service FN changes from `slot` on.
struct ArrivalSwitch {
  Slot slot = 0;
  Arm arm = 0;
  double rate = 0.0;

  bool operator==(const ArrivalSwitch&) const = default;
};

struct ScenarioConfig {
  std::string name = "custom";
  ScenarioMode mode = ScenarioMode::kOffload;
  std::size_t arms = 6;    // K
  std::size_t agents = 1;  // V
  Slot horizon = 30000;    // T

  env::ArrivalRule arrivals;
  std::optional<ArrivalSwitch> arrival_switch;
  env::ServiceRateModel service;
  env::TaskSpec task;
  double t_max = 5.0;
  delay::DelayConfig delay;

  policies::PolicySpec policy;
  // Per-agent overrides; when non-empty it must hold exactly `agents` entries.
  std::vector<policies::PolicySpec> agent_policies;
  game::CollisionModel collision = game::CollisionModel::kWinnerTakesAll;

  env::ChannelParams channel;
  std::vector<env::Position> positions;

  std::size_t runs = 1;
  std::uint64_t seed = 1;
  Slot window = 500;
  bool store_counterfactuals = false;

  // Matrix-game mode only.
  std::vector<std::vector<double>> matrix;
  double ne_epsilon = 0.05;

  // Throws InvariantError naming the offending key.
  void validate() const;
  env::EnvConfig to_env_config() const;
  const policies::PolicySpec& policy_for(std::size_t agent) const;
  policies::PolicyContext policy_context() const;

  bool operator==(const ScenarioConfig&) const = default;
};

}  // namespace fog::harness
