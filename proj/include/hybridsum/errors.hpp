#pragma once

#include <cstddef>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace hybridsum {

// Base for all typed errors thrown by this library.
struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct NotPrimeError : Error {
  explicit NotPrimeError(std::uint64_t n)
      : Error("modulus " + std::to_string(n) + " is not an odd prime >= 3") {}
};

struct TooLargeError : Error {
  TooLargeError(std::uint64_t n, std::uint64_t limit)
      : Error("value " + std::to_string(n) + " exceeds limit " + std::to_string(limit)) {}
};

struct ZeroInverseError : Error {
  ZeroInverseError() : Error("multiplicative inverse of zero") {}
};

struct SyntaxError : Error {
  std::size_t offset;
  SyntaxError(const std::string& what, std::size_t byte_offset)
      : Error(what + " (byte " + std::to_string(byte_offset) + ")"), offset(byte_offset) {}
};

struct NegativeExponentError : Error {
  std::size_t offset;
  explicit NegativeExponentError(std::size_t byte_offset)
      : Error("negative exponent (byte " + std::to_string(byte_offset) + ")"),
        offset(byte_offset) {}
};

struct ZeroDenominatorError : Error {
  ZeroDenominatorError() : Error("denominator is the zero polynomial") {}
};

struct FieldMismatchError : Error {
  FieldMismatchError() : Error("operands belong to different prime fields") {}
};

struct NotPolynomialError : Error {
  NotPolynomialError() : Error("rational map has a nonconstant denominator") {}
};

struct OrderNotDividingError : Error {
  OrderNotDividingError(std::uint64_t a, std::uint64_t p)
      : Error("character order " + std::to_string(a) + " does not divide p-1 = " +
              std::to_string(p - 1)) {}
};

struct CharPowerError : Error {
  CharPowerError(std::uint64_t m, std::uint64_t a)
      : Error("character power " + std::to_string(m) + " is not coprime to the order " +
              std::to_string(a)) {}
};

struct DuplicateXError : Error {
  DuplicateXError()
      : Error("point table has an x-coordinate with several y-values in J; "
              "the tuple correspondence needs one point per x") {}
};

struct ConfigError : Error {
  std::string field_path;
  ConfigError(std::string path, const std::string& what)
      : Error("config." + path + ": " + what), field_path(std::move(path)) {}
};

}  // namespace hybridsum
