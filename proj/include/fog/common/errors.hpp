#pragma once

#include <stdexcept>
#include <string>

namespace fog {

// Raised before a run starts when a configuration value is out of its domain.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A cross-field invariant of a scenario does not hold. `key()` names the
// offending field using dotted paths ("arrival.rates").
class InvariantError : public ConfigError {
 public:
  InvariantError(std::string key, const std::string& message)
      : ConfigError(key + ": " + message), key_(std::move(key)) {}
  const std::string& key() const { return key_; }

 private:
  std::string key_;
};

// Physical model called outside its domain (non-positive rate, time going
// backwards in an event simulation).
class ModelError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Bookkeeping mismatch between dispatches and returning feedback.
class AccountingError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class ImpossibleStateError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Caller passed arguments that violate an operation's contract.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace fog
