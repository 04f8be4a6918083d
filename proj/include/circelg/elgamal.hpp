#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "circelg/keygen.hpp"

namespace circelg {

using Block = std::vector<FieldElement>;

struct PrivateKey {
  Natural m;
  Circulant A;
};

struct PublicKey {
  Circulant A;
  Circulant Am;
};

struct KeyPair {
  PrivateKey priv;
  PublicKey pub;
};

struct Ciphertext {
  Circulant Ar;
  Block w;
};

/// Exclusive upper end for private exponents: the exact order of A when
/// known, otherwise 2^{n(d-1)}.
Natural exponent_limit(const Circulant& a, const OrderInfo& order);

/// m uniform in [2, L-1]. Throws InvalidArgument when L <= 2.
KeyPair keygen(const Circulant& a, const OrderInfo& order, Entropy& rng);
KeyPair keygen(const ParamSet& params, Entropy& rng);

/// Fresh r in [2, 2^{n(d-1)} - 1]; Ar = A^r, w = (A^m)^r v.
Ciphertext encrypt(const PublicKey& pub, std::span<const FieldElement> v, Entropy& rng);
/// Same with a caller-chosen r.
Ciphertext encrypt_with(const PublicKey& pub, std::span<const FieldElement> v, const Natural& r);

/// v = (Ar^m)^{-1} w. NotInvertible only for a corrupted ciphertext.
Block decrypt(const PrivateKey& priv, const Ciphertext& ct);

/// other^a. Both parties land on A^{ab}.
Circulant dh_shared(const Circulant& a, const Natural& exponent, const Circulant& other);

using DecryptOracle = std::function<Block(const Ciphertext&)>;

struct OracleReduction {
  Circulant shared;
  unsigned queries = 0;
};

/// Given an oracle that decrypts under the public key (A, g = A^a), recovers
/// A^{ab} from h = A^b with exactly d queries: the i-th query (h, e_i)
/// returns column i of A^{-ab}. Throws OracleInconsistent when the columns
/// do not form an invertible circulant.
OracleReduction oracle_reduction(const DecryptOracle& oracle, const Circulant& a,
                                 const Circulant& g, const Circulant& h);

/// Byte stream -> blocks of d field elements. Bits are read little-endian
/// (bit b of byte i is stream bit 8i+b), grouped into n-bit elements, and
/// the last block is zero-padded.
std::vector<Block> encode_bytes(const FieldSpec& field, unsigned d,
                                std::span<const std::uint8_t> bytes);
/// Inverse of encode_bytes; `length` is the original byte count.
std::vector<std::uint8_t> decode_bytes(const FieldSpec& field, unsigned d,
                                       std::span<const Block> blocks, std::size_t length);

}  // namespace circelg
