#pragma once

#include <cstdint>
#include <random>

#include <gmpxx.h>

namespace circelg {

using Natural = mpz_class;

/// Seedable pseudorandom source. Always passed explicitly; the library keeps
/// no global generator. Sampling avoids std::uniform_*_distribution so a seed
/// yields identical streams on every standard library.
class Entropy {
 public:
  explicit Entropy(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next_u64() { return engine_(); }

  /// Uniform value with exactly `bits` random bits (top bit may be zero).
  Natural random_bits(unsigned bits);

  /// Uniform in [0, bound); bound must be positive.
  Natural below(const Natural& bound);

  /// Uniform in [lo, hi]; requires lo <= hi.
  Natural in_range(const Natural& lo, const Natural& hi);

 private:
  std::mt19937_64 engine_;
};

}  // namespace circelg
