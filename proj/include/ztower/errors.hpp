#pragma once

#include <stdexcept>
#include <string>

namespace ztower {

/// Input graph or tower fails the standing hypotheses.
class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A derived graph would exceed the configured vertex budget.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A layer of the tower is not connected.
class DisconnectedLayer : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Two independent computations of the same quantity disagree.
class RouteMismatch : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed spec or graph document.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace ztower
