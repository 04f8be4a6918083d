#pragma once

#include <cstdint>

#include "circelg/circulant.hpp"

namespace circelg {

/// Leaf solvers refuse primes above this.
inline constexpr std::uint64_t kBsgsMaxOrder = std::uint64_t{1} << 48;

/// base^x = target in F_q[x]/modulus, with group_order a multiple of the
/// order of base.
struct DlpInstance {
  Poly base;
  Poly target;
  Factorization group_order;
  ExtensionSpec ext;
};

struct FieldDlpInstance {
  FieldSpec field;
  FieldElement base;
  FieldElement target;
};

struct CirculantReduction {
  DlpInstance beta;
  FieldDlpInstance alpha;
};

struct BsgsStats {
  std::uint64_t table_entries = 0;
  std::uint64_t giant_steps = 0;
};

/// A logarithm together with the modulus it is unique for (the order of
/// the base).
struct DlpSolution {
  Natural exponent;
  Natural modulus;
};

/// Least x in [0, order) with base^x = target. Throws NotFound, and
/// InvalidArgument when order exceeds kBsgsMaxOrder.
Natural bsgs(const Poly& base, const Poly& target, const Natural& order, const ExtensionSpec& ext,
             BsgsStats* stats = nullptr);
Natural bsgs(const FieldSpec& field, FieldElement base, FieldElement target, const Natural& order,
             BsgsStats* stats = nullptr);

/// Solves prime by prime with BSGS on each digit and recombines by CRT.
/// The exponent lies in [0, modulus) where modulus is the order of base.
/// Throws IncompleteFactorization, NotFound, and InvalidArgument when a
/// prime that matters exceeds kBsgsMaxOrder.
DlpSolution pohlig_hellman(const Poly& base, const Poly& target, const Factorization& order,
                           const ExtensionSpec& ext);
DlpSolution pohlig_hellman(const FieldSpec& field, FieldElement base, FieldElement target,
                           const Factorization& order);

/// Splits A and B into their row-sum and Φ components. Needs odd prime d.
CirculantReduction reduce_to_field(const Circulant& a, const Circulant& b,
                                   std::uint64_t budget = kDefaultFactorBudget);

/// m in [0, ord A) with A^m = B.
Natural solve_circulant_dlp(const Circulant& a, const Circulant& b,
                            std::uint64_t budget = kDefaultFactorBudget);

}  // namespace circelg
