#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace starloop {

enum class ErrorKind {
  InvalidWeight,
  DuplicateEdge,
  LoopsNotSupported,
  ZeroStrength,
  NumericalError,
  DimensionError,
  InvalidVector,
  DegenerateStar,
  NotEquitable,
  InvalidReduction,
  UnsupportedMode,
  NoLoop,
  InvalidEnlargement,
  NothingToDo,
  ParseError,
  InvalidArgument,
};

std::string_view to_string(ErrorKind kind) noexcept;

/// Every failure raised by the library carries an ErrorKind so callers
/// (notably the CLI's exit-code mapping) can dispatch without string matching.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(std::string(to_string(kind)) + ": " + message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace starloop
