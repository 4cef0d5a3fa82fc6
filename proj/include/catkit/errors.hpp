#pragma once

#include <stdexcept>
#include <string>

namespace catkit {

/// Malformed input: unknown identifiers, non-total tables, bad file syntax.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// An exhaustive search or closure exceeded its configured budget.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A condition the library asserts internally turned out false.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

}  // namespace catkit
