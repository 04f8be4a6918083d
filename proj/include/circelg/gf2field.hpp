#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "circelg/entropy.hpp"
#include "circelg/numtheory.hpp"

namespace circelg {

/// Bit string wide enough for any supported GF(2^n), n <= 128.
using Word = unsigned __int128;

inline constexpr unsigned kMaxFieldDegree = 128;

/// An element of GF(2^n): bit i is the coefficient of t^i. Elements are
/// plain values; the FieldSpec they belong to travels with the container
/// (Poly, Circulant) or is passed to the arithmetic explicitly.
struct FieldElement {
  Word bits = 0;

  constexpr bool is_zero() const noexcept { return bits == 0; }
  friend constexpr bool operator==(FieldElement, FieldElement) = default;
};

/// GF(2^n) defined by a monic irreducible modulus of degree n over GF(2).
class FieldSpec {
 public:
  /// Canonical field: the smallest irreducible modulus (by integer value of
  /// its bit encoding) with a nonzero constant term.
  static FieldSpec make(unsigned n);

  /// Field with an explicit modulus, given without its leading t^n bit.
  /// Throws InvalidArgument if the polynomial is reducible.
  static FieldSpec with_modulus(unsigned n, Word modulus_low);

  unsigned degree() const noexcept { return n_; }
  Word modulus_low() const noexcept { return low_; }
  /// Full modulus including the t^n term.
  Natural modulus() const;
  /// q = 2^n.
  Natural order() const;
  Word mask() const noexcept;

  FieldElement zero() const noexcept { return {}; }
  FieldElement one() const noexcept { return {1}; }
  /// Throws InvalidArgument if `bits` has bits at or above position n.
  FieldElement element(Word bits) const;
  bool contains(FieldElement a) const noexcept { return (a.bits & ~mask()) == 0; }

  FieldElement add(FieldElement a, FieldElement b) const noexcept { return {a.bits ^ b.bits}; }
  FieldElement mul(FieldElement a, FieldElement b) const noexcept;
  FieldElement square(FieldElement a) const noexcept { return mul(a, a); }
  /// Extended Euclid on bit polynomials. Throws ZeroInverse for 0.
  FieldElement inv(FieldElement a) const;
  FieldElement pow(FieldElement a, const Natural& e) const;

  FieldElement random(Entropy& rng) const;

  friend bool operator==(const FieldSpec&, const FieldSpec&) = default;

 private:
  FieldSpec(unsigned n, Word low) : n_(n), low_(low) {}

  unsigned n_ = 1;
  Word low_ = 1;
};

/// True iff the degree-n GF(2) polynomial t^n + (modulus_low) is irreducible.
bool gf2_is_irreducible(unsigned n, Word modulus_low);

/// "0x" followed by minimal lowercase hex digits; zero is "0x0".
std::string to_hex(FieldElement a);
std::string to_hex(const Natural& value);
FieldElement parse_field_hex(const FieldSpec& field, std::string_view text);
Natural parse_natural_hex(std::string_view text);

/// Polynomial over a FieldSpec, index i = coefficient of x^i. Always kept
/// normalized: no trailing zero coefficients.
class Poly {
 public:
  explicit Poly(FieldSpec field) : field_(field) {}
  Poly(FieldSpec field, std::vector<FieldElement> coeffs);

  static Poly constant(FieldSpec field, FieldElement c);
  static Poly monomial(FieldSpec field, FieldElement c, std::size_t power);
  static Poly x(FieldSpec field) { return monomial(field, field.one(), 1); }

  const FieldSpec& field() const noexcept { return field_; }
  /// -1 for the zero polynomial.
  int degree() const noexcept { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const noexcept { return coeffs_.empty(); }
  bool is_one() const noexcept { return coeffs_.size() == 1 && coeffs_[0] == field_.one(); }
  FieldElement coeff(std::size_t i) const noexcept {
    return i < coeffs_.size() ? coeffs_[i] : FieldElement{};
  }
  FieldElement leading() const noexcept { return coeffs_.empty() ? FieldElement{} : coeffs_.back(); }
  std::span<const FieldElement> coeffs() const noexcept { return coeffs_; }

  friend bool operator==(const Poly&, const Poly&) = default;

 private:
  void normalize();

  FieldSpec field_;
  std::vector<FieldElement> coeffs_;
};

Poly poly_add(const Poly& a, const Poly& b);
Poly poly_mul(const Poly& a, const Poly& b);
Poly poly_scale(const Poly& a, FieldElement c);
Poly poly_square(const Poly& a);
Poly poly_monic(const Poly& a);

struct PolyDivMod {
  Poly quotient;
  Poly remainder;
};
/// Throws InvalidArgument on division by zero.
PolyDivMod poly_divmod(const Poly& a, const Poly& b);
Poly poly_mod(const Poly& a, const Poly& m);

struct PolyExtGcd {
  Poly g;
  Poly u;
  Poly v;
};
/// g = u·a + v·b with g the monic gcd. Requires a and b not both zero.
PolyExtGcd poly_ext_gcd(const Poly& a, const Poly& b);

Poly poly_powmod(const Poly& base, const Natural& e, const Poly& m);
FieldElement poly_eval(const Poly& p, FieldElement x);

/// Polynomial CRT: the unique r mod m1·m2 with r ≡ r1 (mod m1), r ≡ r2 (mod m2).
/// Throws NotCoprime if gcd(m1, m2) != 1.
Poly poly_crt(const Poly& r1, const Poly& m1, const Poly& r2, const Poly& m2);

/// Distinct-degree criterion over F_q: p is irreducible iff
/// x^{q^k} ≡ x (mod p) and gcd(x^{q^{k/r}} - x, p) = 1 for primes r | k.
bool poly_is_irreducible(const Poly& p);

/// Quotient ring F_q[x]/(modulus). A field when the modulus is irreducible,
/// e.g. Φ(x) = 1 + x + ... + x^{d-1} when q is primitive mod d.
class ExtensionSpec {
 public:
  /// Φ(x) = (x^d - 1)/(x - 1) over `base`.
  static ExtensionSpec cyclotomic(const FieldSpec& base, unsigned d);
  /// Arbitrary monic modulus of degree >= 1; `d` is the associated circulant size.
  ExtensionSpec(Poly modulus, unsigned d);

  const FieldSpec& base() const noexcept { return modulus_.field(); }
  const Poly& modulus() const noexcept { return modulus_; }
  unsigned d() const noexcept { return d_; }
  unsigned degree() const noexcept { return static_cast<unsigned>(modulus_.degree()); }
  bool is_field() const noexcept { return irreducible_; }
  /// q^degree - 1.
  Natural unit_group_exponent() const;

  Poly one() const { return Poly::constant(base(), base().one()); }
  Poly reduce(const Poly& a) const { return poly_mod(a, modulus_); }
  Poly mul(const Poly& a, const Poly& b) const;
  Poly pow(const Poly& a, const Natural& e) const;
  /// Throws NotInvertible when gcd(a, modulus) != 1.
  Poly inverse(const Poly& a) const;
  Poly frobenius(const Poly& a) const;

  friend bool operator==(const ExtensionSpec& a, const ExtensionSpec& b) {
    return a.d_ == b.d_ && a.modulus_ == b.modulus_;
  }

 private:
  Poly modulus_;
  unsigned d_;
  bool irreducible_;
};

/// a·b reduced by ext.modulus(); throws SpecMismatch across fields.
Poly poly_mod_mul(const Poly& a, const Poly& b, const ExtensionSpec& ext);
/// a^q mod ext.modulus().
Poly frobenius(const Poly& a, const ExtensionSpec& ext);

/// True iff x has order exactly q^deg - 1 modulo tau (tau irreducible).
bool poly_is_primitive(const Poly& tau, const Factorization& group_order);

struct PrimitivePolyResult {
  Poly tau;
  Factorization order_factorization;  // of q^degree - 1
  bool primitivity_verified = false;
};

/// Random monic irreducible polynomial of the given degree whose root has
/// order q^degree - 1. When q^degree - 1 cannot be factored within `budget`,
/// returns an irreducible tau with primitivity_verified = false.
PrimitivePolyResult primitive_poly(unsigned degree, const FieldSpec& base, Entropy& rng,
                                   std::uint64_t budget = kDefaultFactorBudget);

/// Same search against a factorization the caller already holds.
PrimitivePolyResult primitive_poly(unsigned degree, const FieldSpec& base, Entropy& rng,
                                   const Factorization& group_order);

/// A normal basis {θ, θ^2, ..., θ^{2^{n-1}}} of GF(2^n) over GF(2) together
/// with the GF(2) change-of-basis matrices (one Word per row).
struct NormalBasis {
  FieldSpec field;
  FieldElement theta;
  std::vector<Word> to_normal;
  std::vector<Word> from_normal;

  FieldElement to_normal_coords(FieldElement a) const;
  FieldElement from_normal_coords(FieldElement a) const;
  /// Coordinate i moves to position i+1 (mod n): squaring in normal coordinates.
  FieldElement rotate(FieldElement a) const;
};

NormalBasis normal_basis_find(const FieldSpec& field);

}  // namespace circelg
