#pragma once

#include <stdexcept>
#include <string>

namespace ncg {

/// Bad mathematical parameters (non-unimodular matrix, theta not fixed by g,
/// malformed grammar, wrong dimensions, ...).  CLI maps this to exit code 3.
struct parameter_error : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

/// Numeric-domain failures (divergent nome, nonpositive rank argument, ...).
/// CLI maps this to exit code 2.
struct numeric_error : std::domain_error {
  using std::domain_error::domain_error;
};

/// Rewriting exceeded its global step budget.
struct rewrite_budget_error : std::runtime_error {
  explicit rewrite_budget_error(unsigned long long budget)
      : std::runtime_error("rewrite budget exceeded (" + std::to_string(budget) + " steps)") {}
};

}  // namespace ncg
