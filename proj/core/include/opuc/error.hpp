#pragma once

#include <stdexcept>
#include <string>

namespace opuc {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed weight spec or run configuration.
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Arguments outside an operation's contract.
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

/// A band or window does not fit the grid it is applied on.
class CapacityError : public Error {
 public:
  using Error::Error;
};

/// Quadrature could not meet its tolerance budget, or hit a singular point.
class QuadratureError : public Error {
 public:
  using Error::Error;
};

/// Szegő recursion produced |alpha_k| too close to 1.
class BreakdownError : public Error {
 public:
  BreakdownError(int k, double modulus)
      : Error("Szego recursion breakdown at k=" + std::to_string(k) +
              " (|alpha_k| = " + std::to_string(modulus) + ")"),
        index_(k),
        modulus_(modulus) {}
  int index() const noexcept { return index_; }
  double modulus() const noexcept { return modulus_; }

 private:
  int index_;
  double modulus_;
};

/// Dense Toeplitz system too ill-conditioned to be trusted.
class IllConditioned : public Error {
 public:
  IllConditioned(double condition)
      : Error("Toeplitz system condition estimate " +
              std::to_string(condition) + " exceeds 1e12"),
        condition_(condition) {}
  double condition() const noexcept { return condition_; }

 private:
  double condition_;
};

/// Fixed-point iteration does not contract.
class NoContraction : public Error {
 public:
  NoContraction(double factor)
      : Error("fixed-point operator is not a contraction (measured factor " +
              std::to_string(factor) + ")"),
        factor_(factor) {}
  double factor() const noexcept { return factor_; }

 private:
  double factor_;
};

}  // namespace opuc
