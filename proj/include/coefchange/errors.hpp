#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace coefchange {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DivisionByZero : public Error {
 public:
  DivisionByZero() : Error("division by zero") {}
};

class TowerMismatch : public Error {
 public:
  explicit TowerMismatch(const std::string& what = "operands live in different fields")
      : Error(what) {}
};

class NoEmbedding : public Error {
 public:
  using Error::Error;
};

class ZeroArgument : public Error {
 public:
  using Error::Error;
};

class NonCentralCoefficient : public Error {
 public:
  NonCentralCoefficient() : Error("polynomial coefficient does not lie in the constant field F_q") {}
};

class ZeroConjugator : public Error {
 public:
  ZeroConjugator() : Error("conjugation by zero") {}
};

class ShapeMismatch : public Error {
 public:
  using Error::Error;
};

class NonDivisibleRank : public Error {
 public:
  using Error::Error;
};

/// Raised when an enumeration or field construction would exceed its configured cap.
class CapExceeded : public Error {
 public:
  CapExceeded(const std::string& what, std::uint64_t required, std::uint64_t cap)
      : Error(what + " (requires " + std::to_string(required) + ", cap " + std::to_string(cap) + ")"),
        required_(required),
        cap_(cap) {}

  std::uint64_t required() const noexcept { return required_; }
  std::uint64_t cap() const noexcept { return cap_; }

 private:
  std::uint64_t required_;
  std::uint64_t cap_;
};

/// Malformed input text (bad JSON syntax).
class ParseError : public Error {
 public:
  using Error::Error;
};

/// Well-formed JSON that does not match the expected document schema.
class SchemaError : public Error {
 public:
  using Error::Error;
};

/// Invalid mathematical input (reducible modulus, non-monic cover, ...).
class InvalidArgument : public Error {
 public:
  using Error::Error;
};

}  // namespace coefchange
