#pragma once

#include <stdexcept>
#include <string>

namespace dislab {

/// Base class for every failure raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Argument outside the mathematical domain of an operation (negative density, q out of range, ...).
class DomainError : public Error {
 public:
  using Error::Error;
};

/// Two objects that must share a discretization do not.
class MismatchError : public Error {
 public:
  using Error::Error;
};

/// Time step above the stability bound.
class CflError : public Error {
 public:
  using Error::Error;
};

/// A scheme update produced a negative density.
class NegativeDensityError : public Error {
 public:
  NegativeDensityError(std::size_t cell, double value)
      : Error("negative density " + std::to_string(value) + " in cell " + std::to_string(cell)),
        cell_(cell) {}
  [[nodiscard]] std::size_t cell() const noexcept { return cell_; }

 private:
  std::size_t cell_;
};

/// Riemann data whose solution contains a vacuum region.
class VacuumError : public Error {
 public:
  using Error::Error;
};

/// Malformed input file or configuration document.
class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace dislab
