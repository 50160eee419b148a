#pragma once

#include <stdexcept>
#include <string>

namespace sftlab {

// Input/contract violations: bad matrices, incompatible points, ...
struct DomainError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Resource/limit failures: enumeration caps, horizons, iteration budgets.
struct BudgetError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DegenerateAlphabet : DomainError {
  explicit DegenerateAlphabet(const std::string& what) : DomainError(what) {}
};

struct NotUnique : DomainError {
  explicit NotUnique(const std::string& what) : DomainError(what) {}
};

struct NotHomoclinic : DomainError {
  explicit NotHomoclinic(const std::string& what) : DomainError(what) {}
};

struct EnumerationTooLarge : BudgetError {
  explicit EnumerationTooLarge(const std::string& what) : BudgetError(what) {}
};

struct NoConvergence : BudgetError {
  explicit NoConvergence(const std::string& what) : BudgetError(what) {}
};

struct HorizonExceeded : BudgetError {
  explicit HorizonExceeded(const std::string& what) : BudgetError(what) {}
};

}  // namespace sftlab
