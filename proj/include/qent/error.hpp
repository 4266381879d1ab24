#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace qent {

enum class ErrorKind {
  NonSquare,
  NonHermitian,
  NotHermitian,
  NotPSD,
  TraceNotOne,
  DimensionMismatch,
  NonFinite,
  NotNormalized,
  BadRank,
  BadWeights,
  NotOrthogonal,
  IncompleteKraus,
  ShapeMismatch,
  UnknownChannel,
  BadParam,
  OrderingViolated,
  NumericalInconsistency,
  Parse,
};

std::string_view to_string(ErrorKind kind);

// Every library failure is reported through this exception; kind() names the
// violated invariant so callers (and the CLI) can map it to an exit code.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& detail);

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace qent
