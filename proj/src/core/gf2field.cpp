#include <array>
#include <bit>

#include "circelg/errors.hpp"
#include "circelg/gf2field.hpp"

namespace circelg {
namespace {

Word mask_for(unsigned n) { return n >= 128 ? ~Word{0} : (Word{1} << n) - 1; }

Word clmul_mod(Word a, Word b, unsigned n, Word low) {
  const Word top = Word{1} << (n - 1);
  const Word mask = mask_for(n);
  Word r = 0;
  while (b != 0) {
    if (b & 1) r ^= a;
    b >>= 1;
    const bool carry = (a & top) != 0;
    a = (a << 1) & mask;
    if (carry) a ^= low;
  }
  return r;
}

/// GF(2)[t] polynomial of degree up to 191, enough to hold a degree-128
/// modulus and the shifted operands of the extended Euclid steps.
struct WidePoly {
  std::array<std::uint64_t, 3> limb{};

  static WidePoly from_word(Word w) {
    WidePoly p;
    p.limb[0] = static_cast<std::uint64_t>(w);
    p.limb[1] = static_cast<std::uint64_t>(w >> 64);
    return p;
  }
  static WidePoly modulus(unsigned n, Word low) {
    WidePoly p = from_word(low);
    p.limb[n / 64] |= std::uint64_t{1} << (n % 64);
    return p;
  }

  int degree() const {
    for (int i = 2; i >= 0; --i) {
      if (limb[i] != 0) return 64 * i + 63 - std::countl_zero(limb[i]);
    }
    return -1;
  }
  bool is_zero() const { return degree() < 0; }

  /// this ^= other << shift
  void xor_shifted(const WidePoly& other, unsigned shift) {
    const unsigned whole = shift / 64, part = shift % 64;
    for (int i = 2; i >= static_cast<int>(whole); --i) {
      const int src = i - static_cast<int>(whole);
      std::uint64_t v = other.limb[src] << part;
      if (part != 0 && src >= 1) v |= other.limb[src - 1] >> (64 - part);
      limb[i] ^= v;
    }
  }

  Word low_word() const { return (Word{limb[1]} << 64) | limb[0]; }
};

WidePoly wide_mod(WidePoly a, const WidePoly& m) {
  const int dm = m.degree();
  for (int da = a.degree(); da >= dm; da = a.degree()) {
    a.xor_shifted(m, static_cast<unsigned>(da - dm));
  }
  return a;
}

WidePoly wide_gcd(WidePoly a, WidePoly b) {
  while (!b.is_zero()) {
    a = wide_mod(a, b);
    std::swap(a, b);
  }
  return a;
}

int hex_digit(char c) {
  if (c >= '0' && c <= '9') return c - '0';
  if (c >= 'a' && c <= 'f') return c - 'a' + 10;
  if (c >= 'A' && c <= 'F') return c - 'A' + 10;
  return -1;
}

std::string_view strip_hex_prefix(std::string_view text) {
  if (text.size() >= 2 && text[0] == '0' && (text[1] == 'x' || text[1] == 'X')) {
    text.remove_prefix(2);
  }
  if (text.empty()) throw Error(Errc::ParseError, "empty hex value");
  return text;
}

}  // namespace

bool gf2_is_irreducible(unsigned n, Word modulus_low) {
  if (n == 0 || n > kMaxFieldDegree) return false;
  if (n == 1) return true;
  if ((modulus_low & 1) == 0) return false;  // divisible by t
  const Word t = 2;
  // powers[i] = t^{2^i} mod f
  std::vector<Word> powers(n + 1);
  powers[0] = t;
  for (unsigned i = 1; i <= n; ++i) powers[i] = clmul_mod(powers[i - 1], powers[i - 1], n, modulus_low);
  if (powers[n] != t) return false;
  const WidePoly f = WidePoly::modulus(n, modulus_low);
  unsigned rest = n;
  for (unsigned r = 2; r <= rest; ++r) {
    if (rest % r != 0) continue;
    while (rest % r == 0) rest /= r;
    const Word h = powers[n / r] ^ t;
    if (h == 0) return false;
    if (wide_gcd(f, WidePoly::from_word(h)).degree() != 0) return false;
  }
  return true;
}

FieldSpec FieldSpec::make(unsigned n) {
  if (n < 1 || n > kMaxFieldDegree) {
    throw Error(Errc::InvalidArgument, "field degree must be in [1, 128]");
  }
  for (Word low = 1;; low += 2) {
    if (gf2_is_irreducible(n, low)) return FieldSpec(n, low);
  }
}

FieldSpec FieldSpec::with_modulus(unsigned n, Word modulus_low) {
  if (n < 1 || n > kMaxFieldDegree) {
    throw Error(Errc::InvalidArgument, "field degree must be in [1, 128]");
  }
  if ((modulus_low & ~mask_for(n)) != 0) {
    throw Error(Errc::InvalidArgument, "modulus has terms above t^n");
  }
  if (!gf2_is_irreducible(n, modulus_low)) {
    throw Error(Errc::InvalidArgument, "field modulus is reducible over GF(2)");
  }
  return FieldSpec(n, modulus_low);
}

Natural FieldSpec::modulus() const {
  const WidePoly p = WidePoly::modulus(n_, low_);
  Natural out;
  mpz_import(out.get_mpz_t(), 3, -1, sizeof(std::uint64_t), 0, 0, p.limb.data());
  return out;
}

Natural FieldSpec::order() const { return Natural(1) << n_; }

Word FieldSpec::mask() const noexcept { return mask_for(n_); }

FieldElement FieldSpec::element(Word bits) const {
  if ((bits & ~mask()) != 0) throw Error(Errc::InvalidArgument, "value exceeds field width");
  return {bits};
}

FieldElement FieldSpec::mul(FieldElement a, FieldElement b) const noexcept {
  return {clmul_mod(a.bits, b.bits, n_, low_)};
}

FieldElement FieldSpec::inv(FieldElement a) const {
  if (a.is_zero()) throw Error(Errc::ZeroInverse, "zero has no inverse");
  const WidePoly f = WidePoly::modulus(n_, low_);
  WidePoly u = WidePoly::from_word(a.bits), v = f;
  WidePoly g1 = WidePoly::from_word(1), g2;
  while (u.degree() != 0) {
    int j = u.degree() - v.degree();
    if (j < 0) {
      std::swap(u, v);
      std::swap(g1, g2);
      j = -j;
    }
    u.xor_shifted(v, static_cast<unsigned>(j));
    g1.xor_shifted(g2, static_cast<unsigned>(j));
  }
  return {wide_mod(g1, f).low_word()};
}

FieldElement FieldSpec::pow(FieldElement a, const Natural& e) const {
  if (e < 0) throw Error(Errc::InvalidArgument, "negative exponent");
  FieldElement r = one();
  for (int i = static_cast<int>(bit_length(e)) - 1; i >= 0; --i) {
    r = square(r);
    if (mpz_tstbit(e.get_mpz_t(), static_cast<mp_bitcnt_t>(i))) r = mul(r, a);
  }
  return r;
}

FieldElement FieldSpec::random(Entropy& rng) const {
  const Word lo = rng.next_u64();
  const Word hi = rng.next_u64();
  return {((hi << 64) | lo) & mask()};
}

std::string to_hex(FieldElement a) {
  static constexpr char kDigits[] = "0123456789abcdef";
  if (a.is_zero()) return "0x0";
  std::string digits;
  for (Word w = a.bits; w != 0; w >>= 4) digits.push_back(kDigits[static_cast<unsigned>(w & 0xf)]);
  return "0x" + std::string(digits.rbegin(), digits.rend());
}

std::string to_hex(const Natural& value) {
  if (value < 0) throw Error(Errc::InvalidArgument, "negative value");
  return "0x" + value.get_str(16);
}

Natural parse_natural_hex(std::string_view text) {
  text = strip_hex_prefix(text);
  Natural out = 0;
  for (char c : text) {
    const int v = hex_digit(c);
    if (v < 0) throw Error(Errc::ParseError, "invalid hex digit in '" + std::string(text) + "'");
    out = (out << 4) + v;
  }
  return out;
}

FieldElement parse_field_hex(const FieldSpec& field, std::string_view text) {
  text = strip_hex_prefix(text);
  Word value = 0;
  for (char c : text) {
    const int v = hex_digit(c);
    if (v < 0) throw Error(Errc::ParseError, "invalid hex digit in '" + std::string(text) + "'");
    if ((value >> 124) != 0) throw Error(Errc::ParseError, "field element too wide");
    value = (value << 4) | static_cast<unsigned>(v);
  }
  if ((value & ~field.mask()) != 0) {
    throw Error(Errc::ParseError, "field element wider than the field degree");
  }
  return {value};
}

}  // namespace circelg
