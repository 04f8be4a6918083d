#pragma once

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "circelg/elgamal.hpp"

namespace circelg {

/// Line-oriented `key = value` text. Blank lines and lines starting with
/// '#' are skipped; order is preserved.
struct KeyValues {
  std::vector<std::pair<std::string, std::string>> entries;
};

KeyValues parse_key_values(std::string_view text);

/// Comma-separated FieldElement hex, index 0 first.
std::string format_row(std::span<const FieldElement> row);
Block parse_row(const FieldSpec& field, std::string_view text, unsigned d);

/// Full modulus as hex (top bit included), e.g. 0xb for t^3 + t + 1.
std::string format_field_poly(const FieldSpec& field);
FieldSpec parse_field_poly(unsigned n, std::string_view text);

std::string format_params(const Circulant& a);
Circulant parse_params(std::string_view text);

std::string format_private_key(const PrivateKey& key);
PrivateKey parse_private_key(std::string_view text);

std::string format_public_key(const PublicKey& key);
PublicKey parse_public_key(std::string_view text);

enum class PayloadEncoding { Bytes, Block };

/// One or more ciphertext blocks. With Bytes encoding `length` is the
/// plaintext byte count; with Block encoding it is the number of field
/// elements (d per block).
struct CiphertextFile {
  FieldSpec field;
  unsigned d = 0;
  PayloadEncoding encoding = PayloadEncoding::Bytes;
  std::size_t length = 0;
  std::vector<Ciphertext> blocks;
};

std::string format_ciphertext(const CiphertextFile& ct);
CiphertextFile parse_ciphertext(std::string_view text);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, std::string_view text);

}  // namespace circelg
