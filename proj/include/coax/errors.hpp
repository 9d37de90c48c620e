#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include "coax/term.hpp"

namespace coax {

/// A fixpoint iteration did not stabilize within its iteration budget.
class BudgetExceeded : public std::runtime_error {
 public:
  explicit BudgetExceeded(std::size_t budget)
      : std::runtime_error("no fixpoint within " + std::to_string(budget) + " iterations"),
        budget_(budget) {}
  std::size_t budget() const { return budget_; }

 private:
  std::size_t budget_;
};

/// kernel() was handed a bound that is not closed under one inference step.
class NotPreFixed : public std::invalid_argument {
 public:
  explicit NotPreFixed(Term witness)
      : std::invalid_argument("bound is not pre-fixed: " + witness.to_string() +
                              " is inferable from it but not contained in it"),
        witness_(std::move(witness)) {}
  const Term& witness() const { return witness_; }

 private:
  Term witness_;
};

/// First syntax error in a textual input. Lines and columns are 1-based.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, std::size_t column, std::vector<std::string> expected,
             std::string found = {});

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }
  const std::vector<std::string>& expected() const { return expected_; }

 private:
  std::size_t line_;
  std::size_t column_;
  std::vector<std::string> expected_;
};

/// A generator would produce more rules than its configured cap.
class InstantiationTooLarge : public std::runtime_error {
 public:
  InstantiationTooLarge(std::size_t requested, std::size_t cap)
      : std::runtime_error("instantiation needs " + std::to_string(requested) +
                           " rules, cap is " + std::to_string(cap)),
        requested_(requested),
        cap_(cap) {}
  std::size_t requested() const { return requested_; }
  std::size_t cap() const { return cap_; }

 private:
  std::size_t requested_;
  std::size_t cap_;
};

/// Equation systems with unbound variables, aliases or shape errors.
class MalformedEquations : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// The lambda evaluation closure outgrew its budget.
class ClosureBudgetExceeded : public std::runtime_error {
 public:
  explicit ClosureBudgetExceeded(std::size_t budget)
      : std::runtime_error("evaluation closure exceeds " + std::to_string(budget) +
                           " expressions"),
        budget_(budget) {}
  std::size_t budget() const { return budget_; }

 private:
  std::size_t budget_;
};

}  // namespace coax
