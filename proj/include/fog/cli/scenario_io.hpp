#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "fog/common/errors.hpp"
#include "fog/harness/scenario.hpp"

namespace fog::cli {

// Missing, unreadable or syntactically broken scenario file.
class ScenarioFileError : public ConfigError {
 public:
  using ConfigError::ConfigError;
};

// Unknown key, wrong type or out-of-domain value in a scenario document.
class SchemaError : public ConfigError {
 public:
  SchemaError(std::string key, const std::string& message)
      : ConfigError(key + ": " + message), key_(std::move(key)) {}
  const std::string& key() const { return key_; }

 private:
  std::string key_;
};

// Parses a scenario document. Keys absent from the document take their
// defaults; unknown keys are rejected. Throws SchemaError or InvariantError.
harness::ScenarioConfig parse_scenario_text(std::string_view text);

// Throws ScenarioFileError when the file cannot be read or parsed.
harness::ScenarioConfig parse_scenario(const std::filesystem::path& path);

// A preset name, or else a path to a scenario file.
harness::ScenarioConfig load_scenario(const std::string& name_or_path);

// Full document with every default spelled out; parse_scenario_text of the
// result yields an equal config.
std::string serialize_scenario(const harness::ScenarioConfig& config);

}  // namespace fog::cli
