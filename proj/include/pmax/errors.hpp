#ifndef PMAX_ERRORS_HPP
#define PMAX_ERRORS_HPP

#include <cstddef>
#include <stdexcept>
#include <string>

namespace pmax {

// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Argument outside the mathematical domain of an operation.
class DomainError : public Error {
 public:
  using Error::Error;
};

// Vector/matrix dimensions do not agree.
class ShapeError : public Error {
 public:
  using Error::Error;
};

// A model description violates its invariants (e.g. unnormalized M4 coefficients).
class ValidationError : public Error {
 public:
  using Error::Error;
};

// The requested copula has no i.i.d. sampler (limit-only objects such as M4 / Example1G).
class UnsupportedSampler : public Error {
 public:
  using Error::Error;
};

// Sample cannot support the estimator (e.g. all top order statistics tied).
class DegenerateSample : public Error {
 public:
  using Error::Error;
};

class InsufficientData : public Error {
 public:
  InsufficientData(const std::string& what, std::size_t exceedances)
      : Error(what + " (exceedances: " + std::to_string(exceedances) + ")"),
        exceedances_(exceedances) {}

  std::size_t exceedances() const noexcept { return exceedances_; }

 private:
  std::size_t exceedances_;
};

// Monte Carlo block fraction hit 0 or 1; the level choice carries no information.
class UnstableLevel : public Error {
 public:
  using Error::Error;
};

// Malformed input file (CSV, JSON config).
class FormatError : public Error {
 public:
  using Error::Error;
};

// A postcondition the library guarantees was violated.
class InternalError : public Error {
 public:
  using Error::Error;
};

}  // namespace pmax

#endif  // PMAX_ERRORS_HPP
