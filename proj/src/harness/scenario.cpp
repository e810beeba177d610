#include "fog/harness/scenario.hpp"

#include <cmath>
#include <string>

#include "fog/common/errors.hpp"
#include "fog/game/equilibrium.hpp"

namespace fog::harness {

std::string_view to_string(ScenarioMode mode) {
  return mode == ScenarioMode::kOffload ? "offload" : "matrix_game";
}

ScenarioMode parse_scenario_mode(std::string_view name) {
  if (name == "offload") return ScenarioMode::kOffload;
  if (name == "matrix_game") return ScenarioMode::kMatrixGame;
  throw ConfigError("unknown scenario mode '" + std::string(name) +
                    "' (valid: offload, matrix_game)");
}

namespace {

void require(bool ok, const char* key, const std::string& message) {
  if (!ok) throw InvariantError(key, message);
}

// Re-raises a nested ConfigError as an InvariantError carrying `key`.
template <typename F>
void check_section(const char* key, F&& f) {
  try {
    f();
  } catch (const InvariantError&) {
    throw;
  } catch (const ConfigError& e) {
    throw InvariantError(key, e.what());
  }
}

}  // namespace

void ScenarioConfig::validate() const {
  require(arms >= 1, "K", "must be at least 1");
  require(agents >= 1, "V", "must be at least 1");
  require(horizon >= 10, "T", "must be at least 10");
  require(runs >= 1, "runs", "must be at least 1");
  require(window >= 1, "window", "must be at least 1");
  require(std::isfinite(t_max) && t_max > 0.0, "t_max", "must be positive");
  check_section("delay", [&] { delay.validate(); });
  require(agent_policies.empty() || agent_policies.size() == agents, "agent_policies",
          "must list one policy per agent");
  require(ne_epsilon >= 0.0, "ne_epsilon", "must be non-negative");

  if (mode == ScenarioMode::kMatrixGame) {
    require(agents == 2, "V", "a matrix game has exactly two agents");
    require(matrix.size() == arms, "matrix", "must be K x K");
    check_section("matrix", [&] { game::GameMatrix check(matrix); });
    return;
  }

  if (arrival_switch) {
    require(arrival_switch->slot >= 1 && arrival_switch->slot <= horizon, "switch.slot",
            "must lie in [1, T]");
    require(arrival_switch->arm < arms, "switch.arm", "must be a valid arm");
    require(arrival_switch->rate >= 0.0, "switch.rate", "must be non-negative");
  }
  check_section("arrivals", [&] {
    if (arrivals.kind == env::ArrivalRuleKind::kList && arrivals.rates.size() != arms) {
      throw ConfigError("rates must list one rate per service FN");
    }
  });
  check_section("environment", [&] { to_env_config().validate(); });
}

env::EnvConfig ScenarioConfig::to_env_config() const {
  env::EnvConfig config;
  config.num_service_nodes = arms;
  config.channel = channel;
  config.positions = positions;
  config.arrivals = arrivals;
  config.service = service;
  config.task = task;
  config.loss.t_max = t_max;
  return config;
}

const policies::PolicySpec& ScenarioConfig::policy_for(std::size_t agent) const {
  return agent_policies.empty() ? policy : agent_policies.at(agent);
}

policies::PolicyContext ScenarioConfig::policy_context() const {
  return {arms, horizon, delay.d_max};
}

}  // namespace fog::harness
