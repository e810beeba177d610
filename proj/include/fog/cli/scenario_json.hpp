#pragma once

#include <string_view>

#include "fog/env/service_node.hpp"
#include "fog/env/topology.hpp"
#include "fog/harness/scenario.hpp"
#include "json.hpp"

namespace fog::cli {

nlohmann::json scenario_to_json(const harness::ScenarioConfig& config);
nlohmann::json policy_to_json(const policies::PolicySpec& spec);
harness::ScenarioConfig scenario_from_json(const nlohmann::json& doc);

std::string_view to_string(env::ArrivalRuleKind kind);
std::string_view to_string(env::ServiceRateMode mode);

}  // namespace fog::cli
