#include "circelg/errors.hpp"

namespace circelg {

const char* errc_name(Errc code) noexcept {
  switch (code) {
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::InvalidModulus: return "InvalidModulus";
    case Errc::NotAUnit: return "NotAUnit";
    case Errc::IncompleteFactorization: return "IncompleteFactorization";
    case Errc::NotCoprime: return "NotCoprime";
    case Errc::DNotPrime: return "DNotPrime";
    case Errc::ZeroInverse: return "ZeroInverse";
    case Errc::SpecMismatch: return "SpecMismatch";
    case Errc::DimensionMismatch: return "DimensionMismatch";
    case Errc::EvenD: return "EvenD";
    case Errc::NotInvertible: return "NotInvertible";
    case Errc::PhiReducible: return "PhiReducible";
    case Errc::BudgetExceeded: return "BudgetExceeded";
    case Errc::NotPrimitive: return "NotPrimitive";
    case Errc::RetriesExhausted: return "RetriesExhausted";
    case Errc::NotFound: return "NotFound";
    case Errc::OracleInconsistent: return "OracleInconsistent";
    case Errc::ParseError: return "ParseError";
    case Errc::IoError: return "IoError";
  }
  return "Unknown";
}

Error::Error(Errc code, const std::string& what)
    : std::runtime_error(std::string(errc_name(code)) + ": " + what), code_(code) {}

}  // namespace circelg
