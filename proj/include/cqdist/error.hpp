#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace cqdist {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Operand shapes do not match. Always a caller bug.
class DimensionError : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t offset)
      : Error(what + " at offset " + std::to_string(offset)), offset_(offset) {}
  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

// Expression evaluation failed at a particular time (division by zero,
// sqrt of a negative, unbound parameter, non-finite result).
class DomainError : public Error {
 public:
  DomainError(const std::string& what, double t)
      : Error(what + " at t=" + std::to_string(t)), t_(t) {}
  double t() const noexcept { return t_; }

 private:
  double t_;
};

// A trajectory, Hamiltonian or spec file violates its invariants.
class SpecError : public Error {
 public:
  using Error::Error;
};

class InvalidStateError : public Error {
 public:
  using Error::Error;
};

class QuadratureError : public Error {
 public:
  QuadratureError(const std::string& what, double a, double b)
      : Error(what + " on [" + std::to_string(a) + ", " + std::to_string(b) + "]"),
        a_(a),
        b_(b) {}
  double lower() const noexcept { return a_; }
  double upper() const noexcept { return b_; }

 private:
  double a_;
  double b_;
};

}  // namespace cqdist
