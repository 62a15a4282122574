#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gendir {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A materialized value violates a structural invariant (e.g. a frequency
/// that is not strictly increasing). `index()` is the 1-based offending index.
class ValidationError : public Error {
 public:
  ValidationError(const std::string& what, std::size_t index)
      : Error(what), index_(index) {}
  std::size_t index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

/// An argument is outside the domain of the operation.
class ParameterError : public Error {
 public:
  using Error::Error;
};

/// The requested quantity is undefined for the given input.
class UndefinedError : public Error {
 public:
  using Error::Error;
};

/// The operation needs structure the input does not carry (for example a
/// Bohr decomposition, or a norm method that does not apply).
class UnsupportedError : public Error {
 public:
  using Error::Error;
};

/// A file or JSON document does not match its schema. `field()` is a
/// path such as `coefficients[3][0]`.
class SchemaError : public Error {
 public:
  SchemaError(const std::string& field, const std::string& message)
      : Error(field.empty() ? message : field + ": " + message), field_(field) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

}  // namespace gendir
