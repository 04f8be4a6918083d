#pragma once

#include <cstdint>

#include "circelg/circulant.hpp"

namespace circelg {

/// Order of a circulant. When `exact` is false, `value` is a certified
/// divisor of the true order (the part carried by the primes we found).
struct OrderInfo {
  Natural value;
  bool exact = false;
};

struct ParamSet {
  FieldSpec field;
  unsigned d = 0;
  Circulant A;
  Poly tau;
  Natural det_order;
  OrderInfo order;
  /// Factorization of q^{d-1} - 1, possibly partial.
  Factorization group_order;
  bool tau_primitive = false;
  unsigned attempts = 0;
};

struct ConditionReport {
  bool det_one = false;
  bool row_sum_one = false;
  bool d_prime = false;
  bool quotient_irreducible = false;
  bool q_primitive = false;
  bool all = false;
};

inline constexpr unsigned kMaxGenerateAttempts = 32;

/// q^{d-1} - 1 = 2^{n(d-1)} - 1. Every invertible d×d circulant over F_q
/// (d odd) has order dividing it.
Factorization circulant_group_order(const FieldSpec& field, unsigned d,
                                    std::uint64_t budget = kDefaultFactorBudget);

/// One pass of the construction with no validation: random primitive τ of
/// degree d-1, ψ ≡ 1 (mod x-1), ψ ≡ τ (mod Φ), A = circ(ψ)^{ord τ(0)}.
/// Works for any odd prime d, including cells where q is not primitive.
ParamSet construct_candidate(const FieldSpec& field, unsigned d, Entropy& rng,
                             const Factorization& group_order);

/// Repeats construct_candidate until the output passes all five
/// conditions and, when its order is known exactly, has order at least
/// q^{d-3}. Throws NotPrimitive when 2^n is not primitive mod d and
/// RetriesExhausted after kMaxGenerateAttempts tries.
ParamSet generate(unsigned n, unsigned d, Entropy& rng,
                  std::uint64_t budget = kDefaultFactorBudget);

/// Never throws on mathematical grounds; invalid inputs just fail checks.
ConditionReport five_conditions(const Circulant& a);

/// Throws NotInvertible for a singular circulant and EvenD for even d.
OrderInfo order_of(const Circulant& a, const Factorization& group_order);
OrderInfo order_of(const Circulant& a, std::uint64_t budget = kDefaultFactorBudget);

/// Rebuilds a ParamSet around an existing matrix (e.g. one read from disk).
/// tau is left empty and det_order is computed from det(A).
ParamSet params_from_matrix(const Circulant& a, std::uint64_t budget = kDefaultFactorBudget);

}  // namespace circelg
