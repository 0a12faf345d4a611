#include "lft/errors.hpp"

namespace lft {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::DegenerateMap: return "DegenerateMap";
    case ErrorKind::PoleAtPoint: return "PoleAtPoint";
    case ErrorKind::NotSelfMap: return "NotSelfMap";
    case ErrorKind::WrongClass: return "WrongClass";
    case ErrorKind::InvalidAffine: return "InvalidAffine";
    case ErrorKind::OutsideDisk: return "OutsideDisk";
    case ErrorKind::EvaluationFailure: return "EvaluationFailure";
    case ErrorKind::InvalidUnitRoot: return "InvalidUnitRoot";
    case ErrorKind::NotEmbeddable: return "NotEmbeddable";
    case ErrorKind::InconclusiveAtDepth: return "InconclusiveAtDepth";
    case ErrorKind::ParseError: return "ParseError";
    case ErrorKind::UnknownMapName: return "UnknownMapName";
  }
  return "Unknown";
}

}  // namespace lft
