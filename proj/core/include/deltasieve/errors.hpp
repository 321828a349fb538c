#pragma once

#include <stdexcept>
#include <string>

namespace deltasieve {

// Precondition or invariant violation on caller-supplied arguments.
class DomainError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

class NotInvertible : public std::domain_error {
 public:
  NotInvertible(long long a, long long m)
      : std::domain_error("not invertible: gcd(" + std::to_string(a) + ", " +
                          std::to_string(m) + ") > 1") {}
};

// A size or time guard tripped. resource() names what ran out.
class LimitExceeded : public std::runtime_error {
 public:
  LimitExceeded(std::string resource, const std::string& what)
      : std::runtime_error(resource + ": " + what), resource_(std::move(resource)) {}
  const std::string& resource() const noexcept { return resource_; }

 private:
  std::string resource_;
};

class ConvergenceError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace deltasieve
