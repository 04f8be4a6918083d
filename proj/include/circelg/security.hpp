#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "circelg/numtheory.hpp"

namespace circelg {

struct SecurityReport {
  unsigned n = 0;
  unsigned d = 0;
  bool primitive = false;
  std::uint64_t index_calculus_bits = 0;
  /// Largest prime found in q^{d-1} - 1. Only the true maximum when
  /// largest_prime_exact; otherwise a lower bound for it.
  Natural largest_prime = 1;
  bool largest_prime_exact = false;
  double generic_bits = 0.0;
  bool regime_exponential = false;
};

/// n(d-1): bit size of F_{q^{d-1}}.
std::uint64_t index_calculus_bits(unsigned n, unsigned d);
/// log2(p)/2.
double generic_bits(const Natural& p);
/// True iff d > n^2, where index calculus on the circulant side turns exponential.
bool regime_check(unsigned n, unsigned d);

/// 2^n primitive mod d; false (never an exception) for composite d.
bool cell_primitive(unsigned n, unsigned d);

SecurityReport estimate(unsigned n, unsigned d, std::uint64_t budget = kDefaultFactorBudget);

using Cell = std::pair<unsigned, unsigned>;  // (n, d)

/// Every (n, d) with d prime in [d_lo, d_hi] and 2^n primitive mod d,
/// sorted by n then d. No randomness.
std::vector<Cell> table1_generate(unsigned n_lo, unsigned n_hi, unsigned d_lo, unsigned d_hi);

/// One report per primitive cell, sorted by n then d. Cells are computed
/// on `threads` workers (0 = hardware concurrency).
std::vector<SecurityReport> table2_generate(unsigned n_lo, unsigned n_hi, unsigned d_lo,
                                            unsigned d_hi, std::uint64_t budget = kDefaultFactorBudget,
                                            unsigned threads = 0);

inline constexpr const char* kTableHeader =
    "n\td\tprimitive\tindex_bits\tlargest_prime\texact\tgeneric_bits";

/// One TSV line (no trailing newline) in kTableHeader column order.
std::string tsv_row(const SecurityReport& r);
/// Table 1 cells carry only primitivity and index bits; the prime columns are "-".
std::string tsv_row(const Cell& cell);

struct ReferenceRow2 {
  unsigned n = 0;
  unsigned d = 0;
  unsigned log2_largest_prime = 0;
  std::uint64_t index_bits = 0;
};

/// TSV fixtures: "n<TAB>d" and "n<TAB>d<TAB>log2_largest_prime<TAB>index_bits",
/// each with a header line. Throws IoError / ParseError.
std::vector<Cell> read_table1_reference(const std::string& path);
std::vector<ReferenceRow2> read_table2_reference(const std::string& path);

struct Table1Comparison {
  std::vector<Cell> listed_not_primitive;
  std::vector<Cell> primitive_not_listed;
};

/// Compares listed pairs with a fresh primitivity scan over the listed n
/// values and primes d in [d_lo, d_hi].
Table1Comparison compare_table1(const std::vector<Cell>& reference, unsigned d_lo, unsigned d_hi);

struct Table2Comparison {
  std::size_t rows = 0;
  std::vector<ReferenceRow2> index_bits_mismatch;
  std::vector<ReferenceRow2> not_primitive;
  std::vector<Cell> primitive_not_listed;
};

Table2Comparison compare_table2(const std::vector<ReferenceRow2>& reference, unsigned n_lo,
                                unsigned n_hi, unsigned d_lo, unsigned d_hi);

struct PrimeCheck {
  unsigned n = 0;
  unsigned d = 0;
  Natural p;
  /// Quoted log2; with `lower_bound` set the quote is only "log2 > quoted".
  double quoted_log2 = 0.0;
  double tolerance = 0.0;
  bool lower_bound = false;

  bool prime = false;
  bool divides = false;
  double log2 = 0.0;
  bool log2_ok = false;
  bool q_primitive = false;
  bool ok = false;
};

/// The six published order primes: primality (64 seeded Miller–Rabin rounds),
/// p | 2^{n(d-1)} - 1, log2 against the quoted value, and primitivity of
/// 2^n mod d. Never throws.
std::vector<PrimeCheck> verify_quoted_primes();

}  // namespace circelg
