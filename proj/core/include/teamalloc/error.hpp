#pragma once

#include <stdexcept>
#include <string>

namespace teamalloc {

/// An evaluator was queried outside the agent counts it is defined on.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A caller broke an operation's precondition (e.g. bid on an edge that was filtered out).
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Scenario or table input failed validation. `field` names the offending key when known.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& message, std::string field = {})
      : std::runtime_error(field.empty() ? message : field + ": " + message),
        field_(std::move(field)) {}

  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

/// A run produced a state that violates conservation or monotonicity.
class InvariantBreach : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// A robot owns no grid cell, so its centroid is undefined.
class DegenerateRegion : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The brute-force oracle refuses spaces above its configured size limits.
class OracleLimitExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace teamalloc
