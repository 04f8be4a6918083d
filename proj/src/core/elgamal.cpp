#include "circelg/elgamal.hpp"

#include "circelg/errors.hpp"

namespace circelg {
namespace {

Natural full_exponent_range(const Circulant& a) {
  return Natural(1) << (a.field().degree() * (a.size() - 1));
}

}  // namespace

Natural exponent_limit(const Circulant& a, const OrderInfo& order) {
  return order.exact ? order.value : full_exponent_range(a);
}

KeyPair keygen(const Circulant& a, const OrderInfo& order, Entropy& rng) {
  const Natural limit = exponent_limit(a, order);
  if (limit <= 2) throw Error(Errc::InvalidArgument, "order of A leaves no private exponent");
  Natural m = rng.in_range(2, limit - 1);
  Circulant am = pow(a, m);
  return {PrivateKey{std::move(m), a}, PublicKey{a, std::move(am)}};
}

KeyPair keygen(const ParamSet& params, Entropy& rng) { return keygen(params.A, params.order, rng); }

Ciphertext encrypt_with(const PublicKey& pub, std::span<const FieldElement> v, const Natural& r) {
  if (v.size() != pub.A.size()) throw Error(Errc::DimensionMismatch, "block length differs from d");
  for (auto c : v) {
    if (!pub.A.field().contains(c)) throw Error(Errc::InvalidArgument, "block entry outside the field");
  }
  Circulant ar = pow(pub.A, r);
  Block w = matvec(pow(pub.Am, r), v);
  return {std::move(ar), std::move(w)};
}

Ciphertext encrypt(const PublicKey& pub, std::span<const FieldElement> v, Entropy& rng) {
  const Natural r = rng.in_range(2, full_exponent_range(pub.A) - 1);
  return encrypt_with(pub, v, r);
}

Block decrypt(const PrivateKey& priv, const Ciphertext& ct) {
  if (ct.Ar.size() != priv.A.size() || ct.w.size() != priv.A.size()) {
    throw Error(Errc::DimensionMismatch, "ciphertext size differs from the key");
  }
  if (!(ct.Ar.field() == priv.A.field())) throw Error(Errc::SpecMismatch, "ciphertext over another field");
  const Circulant mask = pow(ct.Ar, priv.m);
  return matvec(inverse(mask), ct.w);
}

Circulant dh_shared(const Circulant& a, const Natural& exponent, const Circulant& other) {
  if (a.size() != other.size()) throw Error(Errc::DimensionMismatch, "circulants of different sizes");
  return pow(other, exponent);
}

OracleReduction oracle_reduction(const DecryptOracle& oracle, const Circulant& a,
                                 const Circulant& g, const Circulant& h) {
  const unsigned d = a.size();
  if (g.size() != d || h.size() != d) throw Error(Errc::DimensionMismatch, "circulants of different sizes");
  const FieldSpec& field = a.field();

  Matrix m(d, std::vector<FieldElement>(d));
  unsigned queries = 0;
  for (unsigned i = 0; i < d; ++i) {
    Block probe(d);
    probe[i] = field.one();
    const Block column = oracle(Ciphertext{h, probe});
    ++queries;
    if (column.size() != d) throw Error(Errc::OracleInconsistent, "oracle answered with a wrong-sized block");
    for (unsigned k = 0; k < d; ++k) m[k][i] = column[k];
  }

  // Row k must be the first row rotated right k times.
  for (unsigned k = 0; k < d; ++k) {
    for (unsigned j = 0; j < d; ++j) {
      if (!(m[k][j] == m[0][(j + d - k) % d])) {
        throw Error(Errc::OracleInconsistent, "oracle answers do not form a circulant");
      }
    }
  }
  const Circulant inverse_shared(field, m[0]);
  try {
    return {inverse(inverse_shared), queries};
  } catch (const Error& e) {
    if (e.code() != Errc::NotInvertible) throw;
    throw Error(Errc::OracleInconsistent, "oracle answers form a singular matrix");
  }
}

std::vector<Block> encode_bytes(const FieldSpec& field, unsigned d, std::span<const std::uint8_t> bytes) {
  if (d == 0) throw Error(Errc::InvalidArgument, "d must be positive");
  const unsigned n = field.degree();
  const std::size_t total_bits = bytes.size() * 8;
  const std::size_t per_block = std::size_t{n} * d;
  const std::size_t blocks = (total_bits + per_block - 1) / per_block;
  std::vector<Block> out(blocks, Block(d));
  for (std::size_t bit = 0; bit < total_bits; ++bit) {
    if (((bytes[bit / 8] >> (bit % 8)) & 1) == 0) continue;
    const std::size_t element = bit / n;
    out[element / d][element % d].bits |= Word{1} << (bit % n);
  }
  return out;
}

std::vector<std::uint8_t> decode_bytes(const FieldSpec& field, unsigned d, std::span<const Block> blocks,
                                       std::size_t length) {
  const unsigned n = field.degree();
  const std::size_t capacity = blocks.size() * d * n;
  if (length * 8 > capacity) throw Error(Errc::InvalidArgument, "length exceeds the encoded payload");
  std::vector<std::uint8_t> out(length);
  for (std::size_t bit = 0; bit < length * 8; ++bit) {
    const std::size_t element = bit / n;
    const Block& block = blocks[element / d];
    if (block.size() != d) throw Error(Errc::DimensionMismatch, "block length differs from d");
    if ((block[element % d].bits >> (bit % n)) & 1) out[bit / 8] |= static_cast<std::uint8_t>(1u << (bit % 8));
  }
  return out;
}

}  // namespace circelg
