#pragma once

#include <stdexcept>
#include <string>

namespace circelg {

enum class Errc {
  InvalidArgument,
  InvalidModulus,
  NotAUnit,
  IncompleteFactorization,
  NotCoprime,
  DNotPrime,
  ZeroInverse,
  SpecMismatch,
  DimensionMismatch,
  EvenD,
  NotInvertible,
  PhiReducible,
  BudgetExceeded,
  NotPrimitive,
  RetriesExhausted,
  NotFound,
  OracleInconsistent,
  ParseError,
  IoError,
};

const char* errc_name(Errc code) noexcept;

/// Every failure raised by the library carries one of the codes above; the
/// C API maps them onto status values.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what);

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

}  // namespace circelg
