#pragma once

#include <stdexcept>
#include <string>

namespace hsig {

// Every failure the library reports carries one of these codes. The names
// mirror the error vocabulary of the public contract.
enum class Errc {
  SquareRadicand,
  NotPositiveAnywhere,
  ZeroRadicand,
  MismatchedTower,
  DivisionByZero,
  BaseTower,
  NoOrderings,
  NotAnExtension,
  SingularForm,
  ZeroSlot,
  ZeroScale,
  NotEpsilonHermitian,
  SingularPhi0,
  SplitQuaternion,
  SquareD,
  DimensionMismatch,
  NotInvolution,
  InvalidRadicand,
  NotHermitian,
  Singular,
  NotSymmetricUnit,
  SingularUnit,
  MismatchedAlgebra,
  NotUnit,
  NotSemiSymmetric,
  SkewSymmetricOverField,
  NotPerfectSquare,
  NonIntegerQuotient,
  ExhaustedReferences,
  RouteDisagreement,
  PoolExhausted,
  ParseError,
  ValidationError,
  UnknownForm,
  MissingReference,
  Internal,
};

const char* errc_name(Errc code);

class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what);

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

[[noreturn]] void fail(Errc code, const std::string& what);

}  // namespace hsig
