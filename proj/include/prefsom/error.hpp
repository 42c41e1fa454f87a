#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace prefsom {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Invalid map/training configuration (dimensions, schedules).
class ConfigError : public Error {
 public:
  using Error::Error;
};

/// Bad input data: dimension mismatch, non-finite values, empty data, malformed rows.
class InputError : public Error {
 public:
  using Error::Error;
};

/// Syntax error in a concept or inclusion; `position()` is a 0-based byte offset.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t position)
      : Error(what + " at position " + std::to_string(position)), detail_(what), position_(position) {}

  std::size_t position() const noexcept { return position_; }
  /// The message without the position suffix.
  const std::string& detail() const noexcept { return detail_; }

 private:
  std::string detail_;
  std::size_t position_;
};

/// A concept name that does not denote a category of the model.
class ResolutionError : public Error {
 public:
  using Error::Error;
};

/// The model is inconsistent with the semantics (e.g. a specificity cycle).
class SemanticError : public Error {
 public:
  using Error::Error;
};

/// An internal invariant failed. Reaching this is a bug.
class ConsistencyError : public Error {
 public:
  using Error::Error;
};

class IoError : public Error {
 public:
  using Error::Error;
};

}  // namespace prefsom
