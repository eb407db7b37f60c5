#pragma once

#include <stdexcept>
#include <string>

namespace fourcur {

/// An integrand or sampled function produced a non-finite value.
/// Carries the offending evaluation point.
class NumericDomainError : public std::runtime_error {
public:
  NumericDomainError(const std::string& what, double x1, double x2)
      : std::runtime_error(what), x1(x1), x2(x2) {}
  double x1;
  double x2;
};

/// A numerical routine failed to converge or produced garbage.
class NumericFailure : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// A requested computation exceeds a configured size/cost budget.
class CapacityError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// File-system level failure (missing directory, unwritable file, ...).
class IoError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

}  // namespace fourcur
