#pragma once

#include <stdexcept>
#include <string>

namespace ulab {

/// Rejected input: contract violation at a module boundary (exit code 2 in
/// the CLI).
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The requested computation exceeds the configured work budget (exit 3).
class BudgetError : public std::runtime_error {
 public:
  BudgetError(std::string msg, double required, double budget)
      : std::runtime_error(std::move(msg)), required_ops(required), budget_ops(budget) {}
  double required_ops;
  double budget_ops;
};

/// A provable internal invariant failed, e.g. a real-by-construction average
/// came out with a visible imaginary part (exit 4).
class InternalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace ulab
