#include "qent/error.hpp"

namespace qent {

std::string_view to_string(ErrorKind kind) {
  switch (kind) {
    case ErrorKind::NonSquare: return "NonSquare";
    case ErrorKind::NonHermitian: return "NonHermitian";
    case ErrorKind::NotHermitian: return "NotHermitian";
    case ErrorKind::NotPSD: return "NotPSD";
    case ErrorKind::TraceNotOne: return "TraceNotOne";
    case ErrorKind::DimensionMismatch: return "DimensionMismatch";
    case ErrorKind::NonFinite: return "NonFinite";
    case ErrorKind::NotNormalized: return "NotNormalized";
    case ErrorKind::BadRank: return "BadRank";
    case ErrorKind::BadWeights: return "BadWeights";
    case ErrorKind::NotOrthogonal: return "NotOrthogonal";
    case ErrorKind::IncompleteKraus: return "IncompleteKraus";
    case ErrorKind::ShapeMismatch: return "ShapeMismatch";
    case ErrorKind::UnknownChannel: return "UnknownChannel";
    case ErrorKind::BadParam: return "BadParam";
    case ErrorKind::OrderingViolated: return "OrderingViolated";
    case ErrorKind::NumericalInconsistency: return "NumericalInconsistency";
    case ErrorKind::Parse: return "Parse";
  }
  return "Unknown";
}

Error::Error(ErrorKind kind, const std::string& detail)
    : std::runtime_error(std::string(to_string(kind)) + ": " + detail), kind_(kind) {}

}  // namespace qent
