#pragma once

#include <stdexcept>
#include <string>

namespace porpi {

/// Raised when a model is handed a state or action it does not accept.
class ModelContractError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Raised by operations that only exist for enumerable (tabular) models.
class UnsupportedOperation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// No particle survived the observation filter within the retry budget.
class ParticleDepletion : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

class NumericError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace porpi
