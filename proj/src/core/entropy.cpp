#include "circelg/entropy.hpp"

#include "circelg/errors.hpp"

namespace circelg {

Natural Entropy::random_bits(unsigned bits) {
  Natural out = 0;
  unsigned filled = 0;
  while (filled < bits) {
    const unsigned take = bits - filled < 64 ? bits - filled : 64;
    std::uint64_t word = engine_();
    if (take < 64) word &= (std::uint64_t{1} << take) - 1;
    Natural chunk;
    mpz_import(chunk.get_mpz_t(), 1, -1, sizeof word, 0, 0, &word);
    out += chunk << filled;
    filled += take;
  }
  return out;
}

Natural Entropy::below(const Natural& bound) {
  if (bound <= 0) throw Error(Errc::InvalidArgument, "sampling bound must be positive");
  if (bound == 1) return 0;
  const Natural top = bound - 1;
  const auto bits = static_cast<unsigned>(mpz_sizeinbase(top.get_mpz_t(), 2));
  for (;;) {
    Natural candidate = random_bits(bits);
    if (candidate < bound) return candidate;
  }
}

Natural Entropy::in_range(const Natural& lo, const Natural& hi) {
  if (lo > hi) throw Error(Errc::InvalidArgument, "empty sampling range");
  return lo + below(hi - lo + 1);
}

}  // namespace circelg
