#include "circelg/circelg.h"

#include <cstdlib>
#include <cstring>
#include <iomanip>
#include <new>
#include <optional>
#include <sstream>

#include "circelg/dlp.hpp"
#include "circelg/elgamal.hpp"
#include "circelg/errors.hpp"
#include "circelg/keygen.hpp"
#include "circelg/security.hpp"
#include "circelg/textio.hpp"

using namespace circelg;

struct circelg_params {
  Circulant A;
  std::optional<ParamSet> generated;
  std::optional<OrderInfo> order;
};

struct circelg_private_key {
  PrivateKey key;
};

struct circelg_public_key {
  PublicKey key;
};

struct circelg_ciphertext {
  CiphertextFile file;
};

namespace {

thread_local std::string last_error;

circelg_status status_for(Errc code) {
  switch (code) {
    case Errc::ParseError: return CIRCELG_ERR_PARSE;
    case Errc::IoError: return CIRCELG_ERR_IO;
    case Errc::NotPrimitive: return CIRCELG_ERR_NOT_PRIMITIVE;
    case Errc::RetriesExhausted: return CIRCELG_ERR_RETRIES_EXHAUSTED;
    case Errc::NotInvertible:
    case Errc::ZeroInverse: return CIRCELG_ERR_NOT_INVERTIBLE;
    case Errc::IncompleteFactorization: return CIRCELG_ERR_INCOMPLETE_FACTORIZATION;
    case Errc::NotFound:
    case Errc::OracleInconsistent: return CIRCELG_ERR_NOT_FOUND;
    case Errc::DimensionMismatch: return CIRCELG_ERR_DIMENSION_MISMATCH;
    case Errc::PhiReducible: return CIRCELG_ERR_PHI_REDUCIBLE;
    default: return CIRCELG_ERR_INVALID_ARGUMENT;
  }
}

template <class F>
circelg_status guarded(F&& body) {
  try {
    body();
    last_error.clear();
    return CIRCELG_OK;
  } catch (const Error& e) {
    last_error = e.what();
    return status_for(e.code());
  } catch (const std::bad_alloc&) {
    last_error = "out of memory";
    return CIRCELG_ERR_INTERNAL;
  } catch (const std::exception& e) {
    last_error = e.what();
    return CIRCELG_ERR_INTERNAL;
  }
}

void require(bool ok, const char* what) {
  if (!ok) throw Error(Errc::InvalidArgument, what);
}

char* copy_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

const OrderInfo& ensure_order(circelg_params* p, std::uint64_t budget) {
  if (!p->order) p->order = order_of(p->A, budget);
  return *p->order;
}

std::string cells_text(const std::vector<Cell>& cells) {
  std::string out;
  for (const auto& [n, d] : cells) {
    if (!out.empty()) out += ' ';
    out += std::to_string(n) + ":" + std::to_string(d);
  }
  return out;
}

std::string rows_text(const std::vector<ReferenceRow2>& rows) {
  std::vector<Cell> cells;
  for (const auto& r : rows) cells.emplace_back(r.n, r.d);
  return cells_text(cells);
}

}  // namespace

extern "C" {

const char* circelg_status_name(circelg_status status) {
  switch (status) {
    case CIRCELG_OK: return "ok";
    case CIRCELG_ERR_INVALID_ARGUMENT: return "invalid_argument";
    case CIRCELG_ERR_PARSE: return "parse_error";
    case CIRCELG_ERR_IO: return "io_error";
    case CIRCELG_ERR_NOT_PRIMITIVE: return "not_primitive";
    case CIRCELG_ERR_RETRIES_EXHAUSTED: return "retries_exhausted";
    case CIRCELG_ERR_NOT_INVERTIBLE: return "not_invertible";
    case CIRCELG_ERR_INCOMPLETE_FACTORIZATION: return "incomplete_factorization";
    case CIRCELG_ERR_NOT_FOUND: return "not_found";
    case CIRCELG_ERR_DIMENSION_MISMATCH: return "dimension_mismatch";
    case CIRCELG_ERR_PHI_REDUCIBLE: return "phi_reducible";
    case CIRCELG_ERR_INTERNAL: return "internal_error";
  }
  return "unknown";
}

const char* circelg_last_error(void) { return last_error.c_str(); }

void circelg_free(void* ptr) { std::free(ptr); }

circelg_status circelg_params_generate(unsigned n, unsigned d, uint64_t seed, uint64_t factor_budget,
                                       circelg_params** out) {
  return guarded([&] {
    require(out != nullptr, "null output handle");
    require(factor_budget > 0, "factor budget must be positive");
    Entropy rng(seed);
    ParamSet ps = generate(n, d, rng, factor_budget);
    Circulant a = ps.A;
    OrderInfo order = ps.order;
    *out = new circelg_params{std::move(a), std::move(ps), std::move(order)};
  });
}

circelg_status circelg_params_read(const char* path, circelg_params** out) {
  return guarded([&] {
    require(path != nullptr && out != nullptr, "null argument");
    *out = new circelg_params{parse_params(read_text_file(path)), std::nullopt, std::nullopt};
  });
}

circelg_status circelg_params_write(const circelg_params* params, const char* path) {
  return guarded([&] {
    require(params != nullptr && path != nullptr, "null argument");
    write_text_file(path, format_params(params->A));
  });
}

circelg_status circelg_params_describe(const circelg_params* params, char** text) {
  return guarded([&] {
    require(params != nullptr && text != nullptr, "null argument");
    std::ostringstream os;
    os << "n=" << params->A.field().degree() << '\n'
       << "d=" << params->A.size() << '\n'
       << "field_poly=" << format_field_poly(params->A.field()) << '\n'
       << "A=" << format_row(params->A.row()) << '\n';
    if (params->generated) {
      const ParamSet& g = *params->generated;
      os << "attempts=" << g.attempts << '\n'
         << "det_order=" << g.det_order.get_str() << '\n'
         << "tau_primitive=" << (g.tau_primitive ? 1 : 0) << '\n';
    }
    if (params->order) {
      os << "order=" << params->order->value.get_str() << '\n'
         << "order_exact=" << (params->order->exact ? 1 : 0) << '\n';
    }
    *text = copy_string(os.str());
  });
}

circelg_status circelg_params_check(const circelg_params* params, circelg_conditions* report) {
  return guarded([&] {
    require(params != nullptr && report != nullptr, "null argument");
    const ConditionReport r = five_conditions(params->A);
    *report = {r.det_one, r.row_sum_one, r.d_prime, r.quotient_irreducible, r.q_primitive, r.all};
  });
}

circelg_status circelg_params_order(circelg_params* params, uint64_t factor_budget, char** order,
                                    int* exact) {
  return guarded([&] {
    require(params != nullptr && order != nullptr && exact != nullptr, "null argument");
    require(factor_budget > 0, "factor budget must be positive");
    const OrderInfo& info = ensure_order(params, factor_budget);
    *order = copy_string(info.value.get_str());
    *exact = info.exact ? 1 : 0;
  });
}

void circelg_params_free(circelg_params* params) { delete params; }

circelg_status circelg_keygen(circelg_params* params, uint64_t seed, uint64_t factor_budget,
                              circelg_private_key** priv, circelg_public_key** pub) {
  return guarded([&] {
    require(params != nullptr && priv != nullptr && pub != nullptr, "null argument");
    require(factor_budget > 0, "factor budget must be positive");
    Entropy rng(seed);
    KeyPair kp = keygen(params->A, ensure_order(params, factor_budget), rng);
    auto* p = new circelg_private_key{std::move(kp.priv)};
    try {
      *pub = new circelg_public_key{std::move(kp.pub)};
    } catch (...) {
      delete p;
      throw;
    }
    *priv = p;
  });
}

circelg_status circelg_private_key_read(const char* path, circelg_private_key** out) {
  return guarded([&] {
    require(path != nullptr && out != nullptr, "null argument");
    *out = new circelg_private_key{parse_private_key(read_text_file(path))};
  });
}

circelg_status circelg_private_key_write(const circelg_private_key* key, const char* path) {
  return guarded([&] {
    require(key != nullptr && path != nullptr, "null argument");
    write_text_file(path, format_private_key(key->key));
  });
}

void circelg_private_key_free(circelg_private_key* key) { delete key; }

circelg_status circelg_public_key_read(const char* path, circelg_public_key** out) {
  return guarded([&] {
    require(path != nullptr && out != nullptr, "null argument");
    *out = new circelg_public_key{parse_public_key(read_text_file(path))};
  });
}

circelg_status circelg_public_key_write(const circelg_public_key* key, const char* path) {
  return guarded([&] {
    require(key != nullptr && path != nullptr, "null argument");
    write_text_file(path, format_public_key(key->key));
  });
}

void circelg_public_key_free(circelg_public_key* key) { delete key; }

circelg_status circelg_encrypt_bytes(const circelg_public_key* pub, const uint8_t* data, size_t length,
                                     uint64_t seed, circelg_ciphertext** out) {
  return guarded([&] {
    require(pub != nullptr && out != nullptr, "null argument");
    require(data != nullptr || length == 0, "null data with nonzero length");
    const Circulant& a = pub->key.A;
    Entropy rng(seed);
    std::vector<Ciphertext> blocks;
    for (const Block& b : encode_bytes(a.field(), a.size(), {data, length})) {
      blocks.push_back(encrypt(pub->key, b, rng));
    }
    *out = new circelg_ciphertext{
        CiphertextFile{a.field(), a.size(), PayloadEncoding::Bytes, length, std::move(blocks)}};
  });
}

circelg_status circelg_encrypt_block(const circelg_public_key* pub, const char* hex_row, uint64_t seed,
                                     circelg_ciphertext** out) {
  return guarded([&] {
    require(pub != nullptr && hex_row != nullptr && out != nullptr, "null argument");
    const Circulant& a = pub->key.A;
    const Block v = parse_row(a.field(), hex_row, a.size());
    Entropy rng(seed);
    std::vector<Ciphertext> blocks{encrypt(pub->key, v, rng)};
    *out = new circelg_ciphertext{
        CiphertextFile{a.field(), a.size(), PayloadEncoding::Block, a.size(), std::move(blocks)}};
  });
}

circelg_status circelg_decrypt(const circelg_private_key* priv, const circelg_ciphertext* ct,
                               uint8_t** data, size_t* length) {
  return guarded([&] {
    require(priv != nullptr && ct != nullptr && data != nullptr && length != nullptr, "null argument");
    const CiphertextFile& f = ct->file;
    if (!(f.field == priv->key.A.field()) || f.d != priv->key.A.size()) {
      throw Error(Errc::DimensionMismatch, "ciphertext parameters differ from the private key");
    }
    std::vector<Block> plain;
    for (const auto& c : f.blocks) plain.push_back(decrypt(priv->key, c));

    std::string bytes;
    if (f.encoding == PayloadEncoding::Bytes) {
      const auto raw = decode_bytes(f.field, f.d, plain, f.length);
      bytes.assign(raw.begin(), raw.end());
    } else {
      for (const auto& b : plain) bytes += format_row(b) + '\n';
    }
    auto* buf = static_cast<uint8_t*>(std::malloc(bytes.empty() ? 1 : bytes.size()));
    if (buf == nullptr) throw std::bad_alloc();
    std::memcpy(buf, bytes.data(), bytes.size());
    *data = buf;
    *length = bytes.size();
  });
}

circelg_status circelg_ciphertext_read(const char* path, circelg_ciphertext** out) {
  return guarded([&] {
    require(path != nullptr && out != nullptr, "null argument");
    *out = new circelg_ciphertext{parse_ciphertext(read_text_file(path))};
  });
}

circelg_status circelg_ciphertext_write(const circelg_ciphertext* ct, const char* path) {
  return guarded([&] {
    require(ct != nullptr && path != nullptr, "null argument");
    write_text_file(path, format_ciphertext(ct->file));
  });
}

void circelg_ciphertext_free(circelg_ciphertext* ct) { delete ct; }

circelg_status circelg_attack_dlp(const circelg_params* params, const circelg_public_key* pub,
                                  uint64_t factor_budget, char** m) {
  return guarded([&] {
    require(params != nullptr && pub != nullptr && m != nullptr, "null argument");
    require(factor_budget > 0, "factor budget must be positive");
    if (!(params->A == pub->key.A)) {
      throw Error(Errc::InvalidArgument, "public key was not made from these parameters");
    }
    *m = copy_string(solve_circulant_dlp(pub->key.A, pub->key.Am, factor_budget).get_str());
  });
}

circelg_status circelg_security_estimate(unsigned n, unsigned d, uint64_t factor_budget, char** text) {
  return guarded([&] {
    require(text != nullptr, "null argument");
    require(factor_budget > 0, "factor budget must be positive");
    const SecurityReport r = estimate(n, d, factor_budget);
    std::ostringstream os;
    os << "n=" << r.n << '\n'
       << "d=" << r.d << '\n'
       << "primitive=" << (r.primitive ? 1 : 0) << '\n'
       << "index_bits=" << r.index_calculus_bits << '\n'
       << "largest_prime=" << r.largest_prime.get_str() << '\n'
       << "largest_prime_exact=" << (r.largest_prime_exact ? 1 : 0) << '\n'
       << "generic_bits=" << std::fixed << std::setprecision(2) << r.generic_bits << '\n'
       << "regime_exponential=" << (r.regime_exponential ? 1 : 0) << '\n';
    *text = copy_string(os.str());
  });
}

circelg_status circelg_security_table(int which, unsigned n_lo, unsigned n_hi, unsigned d_lo,
                                      unsigned d_hi, uint64_t factor_budget, char** tsv) {
  return guarded([&] {
    require(tsv != nullptr, "null argument");
    require(which == 1 || which == 2, "table must be 1 or 2");
    require(factor_budget > 0, "factor budget must be positive");
    std::string out = std::string(kTableHeader) + '\n';
    if (which == 1) {
      for (const auto& c : table1_generate(n_lo, n_hi, d_lo, d_hi)) out += tsv_row(c) + '\n';
    } else {
      for (const auto& r : table2_generate(n_lo, n_hi, d_lo, d_hi, factor_budget)) out += tsv_row(r) + '\n';
    }
    *tsv = copy_string(out);
  });
}

circelg_status circelg_security_compare(int which, const char* reference_path, unsigned n_lo,
                                        unsigned n_hi, unsigned d_lo, unsigned d_hi, char** text,
                                        size_t* discrepancies) {
  return guarded([&] {
    require(reference_path != nullptr && text != nullptr && discrepancies != nullptr, "null argument");
    require(which == 1 || which == 2, "table must be 1 or 2");
    std::ostringstream os;
    if (which == 1) {
      const auto ref = read_table1_reference(reference_path);
      const auto cmp = compare_table1(ref, d_lo, d_hi);
      os << "rows=" << ref.size() << '\n'
         << "listed_not_primitive=" << cells_text(cmp.listed_not_primitive) << '\n'
         << "primitive_not_listed=" << cells_text(cmp.primitive_not_listed) << '\n';
      *discrepancies = cmp.listed_not_primitive.size() + cmp.primitive_not_listed.size();
    } else {
      const auto ref = read_table2_reference(reference_path);
      const auto cmp = compare_table2(ref, n_lo, n_hi, d_lo, d_hi);
      os << "rows=" << cmp.rows << '\n'
         << "index_bits_mismatch=" << rows_text(cmp.index_bits_mismatch) << '\n'
         << "not_primitive=" << rows_text(cmp.not_primitive) << '\n'
         << "primitive_not_listed=" << cells_text(cmp.primitive_not_listed) << '\n';
      *discrepancies =
          cmp.index_bits_mismatch.size() + cmp.not_primitive.size() + cmp.primitive_not_listed.size();
    }
    *text = copy_string(os.str());
  });
}

circelg_status circelg_verify_quoted_primes(char** text, int* all_ok) {
  return guarded([&] {
    require(text != nullptr && all_ok != nullptr, "null argument");
    std::ostringstream os;
    os.setf(std::ios::fixed);
    bool ok = true;
    for (const auto& c : verify_quoted_primes()) {
      os.precision(2);
      os << "check n=" << c.n << " d=" << c.d << " prime=" << c.prime << " divides=" << c.divides
         << " log2=" << c.log2 << (c.lower_bound ? " quoted_lower_bound=" : " quoted=") << c.quoted_log2;
      if (!c.lower_bound) os << " tolerance=" << c.tolerance;
      os << " log2_ok=" << c.log2_ok << " q_primitive=" << c.q_primitive << " ok=" << c.ok << '\n';
      ok = ok && c.ok;
    }
    os << "all_ok=" << (ok ? 1 : 0) << '\n';
    *text = copy_string(os.str());
    *all_ok = ok ? 1 : 0;
  });
}

circelg_status circelg_bench_pow(unsigned n, unsigned d, unsigned bits, unsigned trials, uint64_t seed,
                                 circelg_bench_result* out) {
  return guarded([&] {
    require(out != nullptr, "null argument");
    require(bits >= 1 && trials >= 1 && d >= 1, "bits, trials and d must be positive");
    const FieldSpec field = FieldSpec::make(n);
    Entropy rng(seed);
    const Natural top = Natural(1) << (bits - 1);
    OpCounter total;
    bool exact = true;
    for (unsigned t = 0; t < trials; ++t) {
      const Circulant a = Circulant::random(field, d, rng);
      const Natural m = top + rng.random_bits(bits - 1);
      OpCounter c;
      pow(a, m, &c);
      if (d % 2 == 1 && c.squarings != bits - 1) exact = false;
      total.general_mults += c.general_mults;
      total.field_mults += c.field_mults;
      total.squarings += c.squarings;
    }
    out->mean_general_mults = static_cast<double>(total.general_mults) / trials;
    out->mean_field_mults = static_cast<double>(total.field_mults) / trials;
    out->mean_squarings = static_cast<double>(total.squarings) / trials;
    out->predicted_field_mults = static_cast<double>(d) * d / 2.0 * bits;
    out->squarings_exact = (d % 2 == 1 && exact) ? 1 : 0;
  });
}

}  // extern "C"
