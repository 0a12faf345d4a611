#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace lft {

enum class ErrorKind {
  DegenerateMap,
  PoleAtPoint,
  NotSelfMap,
  WrongClass,
  InvalidAffine,
  OutsideDisk,
  EvaluationFailure,
  InvalidUnitRoot,
  NotEmbeddable,
  InconclusiveAtDepth,
  ParseError,
  UnknownMapName,
};

std::string_view to_string(ErrorKind kind);

/// Every library failure is reported through this type; `kind()` is the
/// machine-readable part, `what()` carries the detail.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& detail)
      : std::runtime_error(std::string(to_string(kind)) + ": " + detail),
        kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace lft
