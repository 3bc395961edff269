#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace gaf {

// Caller broke an API contract (wrong tag, shape mismatch, ordering mismatch).
class ContractViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Input outside the mathematical domain (singular matrix, det <= 0, not orthogonal).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// A numerical precondition does not hold on the data (decay, band limit, grid coverage).
class PreconditionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class UnsupportedFeature : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Carries every problem found, not just the first.
class ConfigurationError : public std::runtime_error {
 public:
  explicit ConfigurationError(std::vector<std::string> issues);
  explicit ConfigurationError(const std::string& issue)
      : ConfigurationError(std::vector<std::string>{issue}) {}
  const std::vector<std::string>& issues() const noexcept { return issues_; }

 private:
  std::vector<std::string> issues_;
};

}  // namespace gaf
