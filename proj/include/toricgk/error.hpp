#pragma once

#include <stdexcept>
#include <string>

namespace toricgk {

enum class ErrorCode {
  NonSimpleVertex,
  NotDelzant,
  Unbounded,
  EmptyInterior,
  EmptyGrid,
  BoundaryPoint,
  NotConvex,
  Singular,
  NotPSD,
  DegenerateFrame,
  DegenerateDifference,
  NotSymmetric,
  NotSurjective,
  EmptyLevelSet,
  LiftMismatch,
  InvalidArgument,
  Config,
};

const char* to_string(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what);
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace toricgk
