#include <bit>
#include <optional>

#include "circelg/errors.hpp"
#include "circelg/gf2field.hpp"

namespace circelg {
namespace {

constexpr std::uint64_t kNormalBasisSeed = 0x6e6f726d616cULL;

bool parity(Word w) {
  return (std::popcount(static_cast<std::uint64_t>(w)) +
          std::popcount(static_cast<std::uint64_t>(w >> 64))) & 1;
}

Word apply(const std::vector<Word>& rows, Word v) {
  Word out = 0;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    if (parity(rows[i] & v)) out |= Word{1} << i;
  }
  return out;
}

/// Gauss–Jordan inverse over GF(2); nullopt when singular.
std::optional<std::vector<Word>> invert(std::vector<Word> m) {
  const std::size_t n = m.size();
  std::vector<Word> inv(n);
  for (std::size_t i = 0; i < n; ++i) inv[i] = Word{1} << i;
  for (std::size_t col = 0; col < n; ++col) {
    const Word bit = Word{1} << col;
    std::size_t pivot = col;
    while (pivot < n && (m[pivot] & bit) == 0) ++pivot;
    if (pivot == n) return std::nullopt;
    std::swap(m[pivot], m[col]);
    std::swap(inv[pivot], inv[col]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r != col && (m[r] & bit) != 0) {
        m[r] ^= m[col];
        inv[r] ^= inv[col];
      }
    }
  }
  return inv;
}

}  // namespace

FieldElement NormalBasis::to_normal_coords(FieldElement a) const { return {apply(to_normal, a.bits)}; }

FieldElement NormalBasis::from_normal_coords(FieldElement a) const {
  return {apply(from_normal, a.bits)};
}

FieldElement NormalBasis::rotate(FieldElement a) const {
  const unsigned n = field.degree();
  if (n == 1) return a;
  return {((a.bits << 1) | (a.bits >> (n - 1))) & field.mask()};
}

NormalBasis normal_basis_find(const FieldSpec& field) {
  const unsigned n = field.degree();
  Entropy rng(kNormalBasisSeed);
  for (;;) {
    const FieldElement theta = n == 1 ? field.one() : field.random(rng);
    if (theta.is_zero()) continue;
    // Column j of from_normal holds theta^{2^j} in polynomial coordinates.
    std::vector<Word> from(n, 0);
    FieldElement conj = theta;
    for (unsigned j = 0; j < n; ++j) {
      for (unsigned i = 0; i < n; ++i) {
        if ((conj.bits >> i) & 1) from[i] |= Word{1} << j;
      }
      conj = field.square(conj);
    }
    if (auto to = invert(from)) return NormalBasis{field, theta, std::move(*to), std::move(from)};
  }
}

}  // namespace circelg
