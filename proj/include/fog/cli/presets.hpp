#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "fog/harness/scenario.hpp"

namespace fog::cli {

// Bundled experiment scenarios.
const std::vector<std::string>& preset_names();
std::optional<harness::ScenarioConfig> find_preset(std::string_view name);
// Throws UsageError listing the preset names.
harness::ScenarioConfig preset(std::string_view name);
// One-line description for list-scenarios.
std::string preset_description(std::string_view name);

}  // namespace fog::cli
