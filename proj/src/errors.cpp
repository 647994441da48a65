#include "errors.hpp"

namespace hsig {

const char* errc_name(Errc code) {
  switch (code) {
    case Errc::SquareRadicand: return "SquareRadicand";
    case Errc::NotPositiveAnywhere: return "NotPositiveAnywhere";
    case Errc::ZeroRadicand: return "ZeroRadicand";
    case Errc::MismatchedTower: return "MismatchedTower";
    case Errc::DivisionByZero: return "DivisionByZero";
    case Errc::BaseTower: return "BaseTower";
    case Errc::NoOrderings: return "NoOrderings";
    case Errc::NotAnExtension: return "NotAnExtension";
    case Errc::SingularForm: return "SingularForm";
    case Errc::ZeroSlot: return "ZeroSlot";
    case Errc::ZeroScale: return "ZeroScale";
    case Errc::NotEpsilonHermitian: return "NotEpsilonHermitian";
    case Errc::SingularPhi0: return "SingularPhi0";
    case Errc::SplitQuaternion: return "SplitQuaternion";
    case Errc::SquareD: return "SquareD";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::NotInvolution: return "NotInvolution";
    case Errc::InvalidRadicand: return "InvalidRadicand";
    case Errc::NotHermitian: return "NotHermitian";
    case Errc::Singular: return "Singular";
    case Errc::NotSymmetricUnit: return "NotSymmetricUnit";
    case Errc::SingularUnit: return "SingularUnit";
    case Errc::MismatchedAlgebra: return "MismatchedAlgebra";
    case Errc::NotUnit: return "NotUnit";
    case Errc::NotSemiSymmetric: return "NotSemiSymmetric";
    case Errc::SkewSymmetricOverField: return "SkewSymmetricOverField";
    case Errc::NotPerfectSquare: return "NotPerfectSquare";
    case Errc::NonIntegerQuotient: return "NonIntegerQuotient";
    case Errc::ExhaustedReferences: return "ExhaustedReferences";
    case Errc::RouteDisagreement: return "RouteDisagreement";
    case Errc::PoolExhausted: return "PoolExhausted";
    case Errc::ParseError: return "ParseError";
    case Errc::ValidationError: return "ValidationError";
    case Errc::UnknownForm: return "UnknownForm";
    case Errc::MissingReference: return "MissingReference";
    case Errc::Internal: return "Internal";
  }
  return "Unknown";
}

Error::Error(Errc code, const std::string& what)
    : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

void fail(Errc code, const std::string& what) { throw Error(code, what); }

}  // namespace hsig
