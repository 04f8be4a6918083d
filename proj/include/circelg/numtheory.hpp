#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <utility>
#include <vector>

#include "circelg/entropy.hpp"

namespace circelg {

/// Pollard rho iteration budget used when callers do not supply one.
inline constexpr std::uint64_t kDefaultFactorBudget = std::uint64_t{1} << 26;

struct PrimePower {
  Natural prime;
  unsigned exponent = 0;
};

/// Prime decomposition of `value`. When `complete` is false, `unfactored`
/// holds the composite pieces the budget could not split, and the listed
/// prime powers times the product of `unfactored` still equals `value`.
struct Factorization {
  Natural value;
  std::vector<PrimePower> factors;  // strictly increasing primes
  std::vector<Natural> unfactored;
  bool complete = false;

  /// Product of the listed prime powers.
  Natural factored_part() const;
  /// Largest listed prime, or 1 if none.
  Natural largest_prime() const;
};

unsigned bit_length(const Natural& n);
double log2_of(const Natural& n);

/// base^exponent mod modulus. Throws InvalidModulus when modulus < 2.
Natural mod_pow(const Natural& base, const Natural& exponent, const Natural& modulus);

/// Miller–Rabin. Deterministic below 2^64; above that, 64 rounds with
/// witnesses drawn from `rng`.
bool is_prime(const Natural& n, Entropy& rng);
/// Same as above with a fixed internal seed.
bool is_prime(const Natural& n);

/// Trial division below 10^6, then Pollard–Brent until `budget` rho
/// iterations are spent.
Factorization factor(const Natural& n, std::uint64_t budget = kDefaultFactorBudget);

/// Factors 2^exponent - 1 by splitting it into the cyclotomic values
/// Φ_k(2), k | exponent, before handing each piece to `factor`. All pieces
/// share one budget.
Factorization factor_two_power_minus_one(unsigned exponent,
                                         std::uint64_t budget = kDefaultFactorBudget);

/// Order of an element in a group whose order (or a multiple of it) is
/// `group_order`. `is_identity_at(e)` must report whether g^e is the identity.
/// Requires a complete factorization and is_identity_at(group_order.value).
Natural order_by_division(const Factorization& group_order,
                          const std::function<bool(const Natural&)>& is_identity_at);

/// Product over the known primes p of the exact p-part of the element's
/// order. Equals the order when the factorization is complete, and is a
/// certified divisor of it otherwise.
Natural order_certified_part(const Factorization& group_order,
                             const std::function<bool(const Natural&)>& is_identity_at);

Natural mult_order(const Natural& g, const Natural& modulus,
                   const Factorization& group_order_factorization);

/// True iff q has multiplicative order d - 1 modulo the prime d.
bool is_primitive_mod(const Natural& q, const Natural& d);

/// Unique x mod prod(moduli) with x ≡ residues[i] (mod moduli[i]).
Natural integer_crt(std::span<const Natural> residues, std::span<const Natural> moduli);

/// Merges x ≡ r1 (mod m1) and x ≡ r2 (mod m2) for moduli that need not be
/// coprime. Returns (x, lcm) or nullopt when the congruences disagree.
std::optional<std::pair<Natural, Natural>> crt_merge(const Natural& r1, const Natural& m1,
                                                     const Natural& r2, const Natural& m2);

}  // namespace circelg
