#ifndef CIRCELG_CIRCELG_H
#define CIRCELG_CIRCELG_H

/* C interface to the circulant ElGamal library.
 *
 * Objects are opaque handles released with their *_free function. Every
 * call returns a circelg_status; on failure circelg_last_error() describes
 * the problem for the calling thread. Strings and buffers handed out by the
 * library are released with circelg_free(). */

#include <stddef.h>
#include <stdint.h>

#if defined(_WIN32)
#  if defined(CIRCELG_BUILDING_LIBRARY)
#    define CIRCELG_API __declspec(dllexport)
#  else
#    define CIRCELG_API __declspec(dllimport)
#  endif
#else
#  define CIRCELG_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum circelg_status {
  CIRCELG_OK = 0,
  CIRCELG_ERR_INVALID_ARGUMENT = 1,
  CIRCELG_ERR_PARSE = 2,
  CIRCELG_ERR_IO = 3,
  CIRCELG_ERR_NOT_PRIMITIVE = 4,
  CIRCELG_ERR_RETRIES_EXHAUSTED = 5,
  CIRCELG_ERR_NOT_INVERTIBLE = 6,
  CIRCELG_ERR_INCOMPLETE_FACTORIZATION = 7,
  CIRCELG_ERR_NOT_FOUND = 8,
  CIRCELG_ERR_DIMENSION_MISMATCH = 9,
  CIRCELG_ERR_PHI_REDUCIBLE = 10,
  CIRCELG_ERR_INTERNAL = 11
} circelg_status;

typedef struct circelg_params circelg_params;
typedef struct circelg_private_key circelg_private_key;
typedef struct circelg_public_key circelg_public_key;
typedef struct circelg_ciphertext circelg_ciphertext;

typedef struct circelg_conditions {
  int det_one;
  int row_sum_one;
  int d_prime;
  int quotient_irreducible;
  int q_primitive;
  int all;
} circelg_conditions;

typedef struct circelg_bench_result {
  double mean_general_mults;
  double mean_field_mults;
  double mean_squarings;
  /* (d^2 / 2) * bits */
  double predicted_field_mults;
  /* 1 when every trial used exactly bits - 1 squarings */
  int squarings_exact;
} circelg_bench_result;

CIRCELG_API const char* circelg_status_name(circelg_status status);
CIRCELG_API const char* circelg_last_error(void);
CIRCELG_API void circelg_free(void* ptr);

/* ---- parameters ---- */

CIRCELG_API circelg_status circelg_params_generate(unsigned n, unsigned d, uint64_t seed,
                                                   uint64_t factor_budget, circelg_params** out);
CIRCELG_API circelg_status circelg_params_read(const char* path, circelg_params** out);
CIRCELG_API circelg_status circelg_params_write(const circelg_params* params, const char* path);
/* key=value lines: n, d, field_poly, and for generated sets attempts,
 * det_order, tau_primitive, order, order_exact. */
CIRCELG_API circelg_status circelg_params_describe(const circelg_params* params, char** text);
CIRCELG_API circelg_status circelg_params_check(const circelg_params* params,
                                                circelg_conditions* report);
/* Order of A as a decimal string; *exact is 0 when only a certified divisor
 * could be established within the budget. */
CIRCELG_API circelg_status circelg_params_order(circelg_params* params, uint64_t factor_budget,
                                                char** order, int* exact);
CIRCELG_API void circelg_params_free(circelg_params* params);

/* ---- keys ---- */

CIRCELG_API circelg_status circelg_keygen(circelg_params* params, uint64_t seed,
                                          uint64_t factor_budget, circelg_private_key** priv,
                                          circelg_public_key** pub);
CIRCELG_API circelg_status circelg_private_key_read(const char* path, circelg_private_key** out);
CIRCELG_API circelg_status circelg_private_key_write(const circelg_private_key* key, const char* path);
CIRCELG_API void circelg_private_key_free(circelg_private_key* key);
CIRCELG_API circelg_status circelg_public_key_read(const char* path, circelg_public_key** out);
CIRCELG_API circelg_status circelg_public_key_write(const circelg_public_key* key, const char* path);
CIRCELG_API void circelg_public_key_free(circelg_public_key* key);

/* ---- encryption ---- */

/* Byte payload, chunked into n-bit elements and d-element blocks, each
 * block under its own random exponent. */
CIRCELG_API circelg_status circelg_encrypt_bytes(const circelg_public_key* pub, const uint8_t* data,
                                                 size_t length, uint64_t seed,
                                                 circelg_ciphertext** out);
/* A single block given as d comma-separated hex field elements. */
CIRCELG_API circelg_status circelg_encrypt_block(const circelg_public_key* pub, const char* hex_row,
                                                 uint64_t seed, circelg_ciphertext** out);
/* Bytes for byte payloads; for block payloads the hex row followed by a
 * newline. */
CIRCELG_API circelg_status circelg_decrypt(const circelg_private_key* priv,
                                           const circelg_ciphertext* ct, uint8_t** data,
                                           size_t* length);
CIRCELG_API circelg_status circelg_ciphertext_read(const char* path, circelg_ciphertext** out);
CIRCELG_API circelg_status circelg_ciphertext_write(const circelg_ciphertext* ct, const char* path);
CIRCELG_API void circelg_ciphertext_free(circelg_ciphertext* ct);

/* ---- attacks and estimates ---- */

/* Recovers m with A^m = Am (decimal string). */
CIRCELG_API circelg_status circelg_attack_dlp(const circelg_params* params,
                                              const circelg_public_key* pub, uint64_t factor_budget,
                                              char** m);
/* key=value lines for one (n, d) cell. */
CIRCELG_API circelg_status circelg_security_estimate(unsigned n, unsigned d, uint64_t factor_budget,
                                                     char** text);
/* TSV with header "n d primitive index_bits largest_prime exact generic_bits"
 * (tab separated); which = 1 lists primitive cells, which = 2 adds
 * largest-prime estimates. */
CIRCELG_API circelg_status circelg_security_table(int which, unsigned n_lo, unsigned n_hi,
                                                  unsigned d_lo, unsigned d_hi,
                                                  uint64_t factor_budget, char** tsv);
/* Diffs a reference TSV fixture against computed data; key=value lines,
 * *discrepancies counts flagged rows. */
CIRCELG_API circelg_status circelg_security_compare(int which, const char* reference_path,
                                                    unsigned n_lo, unsigned n_hi, unsigned d_lo,
                                                    unsigned d_hi, char** text,
                                                    size_t* discrepancies);
/* Checks the six published order primes; *all_ok is 1 when every check passes. */
CIRCELG_API circelg_status circelg_verify_quoted_primes(char** text, int* all_ok);
CIRCELG_API circelg_status circelg_bench_pow(unsigned n, unsigned d, unsigned bits, unsigned trials,
                                             uint64_t seed, circelg_bench_result* out);

#ifdef __cplusplus
}
#endif

#endif
