#pragma once

#include <stdexcept>
#include <string>

namespace oseen {

// Argument outside the mathematical domain of a function (r <= 0, nu outside (0,1), ...).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Invalid or inconsistent run configuration (grid ranges, empty case intervals, fit spans).
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A documented precondition of an operation was violated by the caller.
class ContractError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// Numerical result contradicting a mathematical fact the code relies on.
class InternalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace oseen
