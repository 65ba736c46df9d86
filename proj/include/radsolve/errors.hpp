#pragma once

#include <stdexcept>
#include <string>

namespace radsolve {

// Everything thrown by the library derives from Error. DomainError and its
// children are "the inputs are outside the method's reach"; the CLI maps them
// to exit code 1.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DomainError : public Error {
 public:
  using Error::Error;
};

class NoAllowedRegionError : public DomainError {
 public:
  using DomainError::DomainError;
};

class AmbiguousRootsError : public DomainError {
 public:
  using DomainError::DomainError;
};

class ComplexPhaseError : public DomainError {
 public:
  ComplexPhaseError(const std::string& what, double lo, double hi)
      : DomainError(what), lo_(lo), hi_(hi) {}
  double lo() const { return lo_; }
  double hi() const { return hi_; }

 private:
  double lo_;
  double hi_;
};

class NotNormalizableError : public DomainError {
 public:
  using DomainError::DomainError;
};

class IntegrationError : public Error {
 public:
  IntegrationError(const std::string& what, double partial, double error)
      : Error(what), partial_(partial), error_(error) {}
  double partial_value() const { return partial_; }
  double error_estimate() const { return error_; }

 private:
  double partial_;
  double error_;
};

class ConvergenceError : public Error {
 public:
  ConvergenceError(const std::string& what, double last)
      : Error(what), last_(last) {}
  double last_iterate() const { return last_; }

 private:
  double last_;
};

}  // namespace radsolve
