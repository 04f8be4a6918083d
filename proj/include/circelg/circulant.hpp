#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "circelg/gf2field.hpp"

namespace circelg {

/// Tallies for circulant arithmetic. A general multiplication costs d^2
/// base-field multiplications; squaring costs d field squarings and is
/// tallied separately.
struct OpCounter {
  std::uint64_t general_mults = 0;
  std::uint64_t field_mults = 0;
  std::uint64_t squarings = 0;
};

/// d×d circulant over GF(2^n), stored as its first row c_0 … c_{d-1}.
/// The row doubles as the representer polynomial c_0 + c_1 x + … in
/// F_q[x]/(x^d - 1); row k of the full matrix is the first row rotated
/// right k times.
class Circulant {
 public:
  Circulant(FieldSpec field, std::vector<FieldElement> first_row);

  static Circulant identity(const FieldSpec& field, unsigned d);
  /// Reduces p modulo x^d - 1.
  static Circulant from_representer(const Poly& p, unsigned d);
  static Circulant random(const FieldSpec& field, unsigned d, Entropy& rng);

  unsigned size() const noexcept { return static_cast<unsigned>(row_.size()); }
  const FieldSpec& field() const noexcept { return field_; }
  std::span<const FieldElement> row() const noexcept { return row_; }
  FieldElement operator[](std::size_t i) const noexcept { return row_[i]; }

  Poly representer() const { return Poly(field_, row_); }
  bool is_identity() const noexcept;

  friend bool operator==(const Circulant&, const Circulant&) = default;

 private:
  FieldSpec field_;
  std::vector<FieldElement> row_;
};

using Matrix = std::vector<std::vector<FieldElement>>;

Matrix expand(const Circulant& a);

/// c_k = sum_{i+j ≡ k (mod d)} a_i b_j.
Circulant mul(const Circulant& a, const Circulant& b, OpCounter* counter = nullptr);
/// Characteristic-2 squaring: output index 2i mod d receives a_i^2. Needs odd d.
Circulant square(const Circulant& a, OpCounter* counter = nullptr);
/// Left-to-right square-and-multiply: bit_length(m) - 1 squarings and
/// popcount(m) - 1 general multiplications.
Circulant pow(const Circulant& a, const Natural& m, OpCounter* counter = nullptr);
/// Inverse through extended Euclid on (representer, x^d - 1).
Circulant inverse(const Circulant& a);
std::vector<FieldElement> matvec(const Circulant& a, std::span<const FieldElement> v,
                                 OpCounter* counter = nullptr);
FieldElement row_sum(const Circulant& a);
/// Gaussian elimination on the expanded matrix.
FieldElement det(const Circulant& a);

/// Image of a circulant in F_q[x]/(x-1) × F_q[x]/Φ(x).
struct CrtPair {
  FieldElement alpha;
  Poly beta;
  ExtensionSpec ext;
};

CrtPair crt_split(const Circulant& a);
Circulant crt_join(const CrtPair& pair);

struct CharPolyQuotient {
  Poly g;
  bool irreducible = false;
};

/// g(x) = prod_{i<d-1} (x - β^{q^i}) with β the Φ-component of A.
/// Throws PhiReducible unless Φ is irreducible over F_q.
CharPolyQuotient char_poly_quotient(const Circulant& a);

/// det(xI - A) through Hessenberg reduction; valid for any d and any
/// field, no division by integers.
Poly characteristic_polynomial(const Circulant& a);

FieldElement matrix_det(const FieldSpec& field, Matrix m);
std::size_t matrix_rank(const FieldSpec& field, Matrix m);
Poly matrix_charpoly(const FieldSpec& field, Matrix m);

}  // namespace circelg
