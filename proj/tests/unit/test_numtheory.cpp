#include <doctest.h>

#include <array>

#include "circelg/errors.hpp"
#include "circelg/numtheory.hpp"
#include "../oracle.hpp"

using namespace circelg;

namespace {

const Natural kP1("7993364465170792998716337691033251350895453313");

Natural two_pow(unsigned e) { return Natural(1) << e; }

std::uint64_t to_u64(const Natural& n) { return n.get_ui(); }

}  // namespace

TEST_SUITE("numtheory") {

TEST_CASE("mod_pow examples") {
  CHECK(mod_pow(2, 10, 1000) == 24);
  CHECK(mod_pow(12345, 0, 77) == 1);
  CHECK(mod_pow(0, 0, 2) == 1);
  CHECK(mod_pow(2, 1068, kP1) == 1);
  CHECK_THROWS_AS(mod_pow(3, 4, 1), Error);
}

TEST_CASE("mod_pow agrees with repeated multiplication") {
  Entropy rng(11);
  for (int i = 0; i < 200; ++i) {
    const std::uint64_t m = 2 + rng.next_u64() % 100000;
    const std::uint64_t g = rng.next_u64() % m;
    const unsigned e = static_cast<unsigned>(rng.next_u64() % 60);
    std::uint64_t expect = 1 % m;
    for (unsigned k = 0; k < e; ++k) expect = expect * g % m;
    CHECK(to_u64(mod_pow(Natural(static_cast<unsigned long>(g)), e, Natural(static_cast<unsigned long>(m)))) == expect);
  }
}

TEST_CASE("is_prime examples") {
  CHECK_FALSE(is_prime(1));
  CHECK_FALSE(is_prime(0));
  CHECK(is_prime(2));
  CHECK(is_prime(331));
  CHECK(is_prime(kP1));
  CHECK_FALSE(is_prime(Natural(561)));  // Carmichael
  CHECK_FALSE(is_prime(two_pow(89) + 1));
  CHECK(is_prime(two_pow(89) - 1));
}

TEST_CASE("is_prime matches trial division below 20000") {
  for (unsigned n = 0; n < 20000; ++n) {
    CHECK_MESSAGE(is_prime(Natural(n)) == oracle::trial_prime(n), "n = " << n);
  }
}

TEST_CASE("factor examples") {
  const Factorization f15 = factor(15);
  CHECK(f15.complete);
  REQUIRE(f15.factors.size() == 2);
  CHECK(f15.factors[0].prime == 3);
  CHECK(f15.factors[0].exponent == 1);
  CHECK(f15.factors[1].prime == 5);

  const Factorization f30 = factor(two_pow(30) - 1);
  CHECK(f30.complete);
  const std::array<std::pair<unsigned, unsigned>, 6> expect{
      {{3, 2}, {7, 1}, {11, 1}, {31, 1}, {151, 1}, {331, 1}}};
  REQUIRE(f30.factors.size() == expect.size());
  for (std::size_t i = 0; i < expect.size(); ++i) {
    CHECK(f30.factors[i].prime == expect[i].first);
    CHECK(f30.factors[i].exponent == expect[i].second);
  }
  CHECK(f30.largest_prime() == 331);
}

TEST_CASE("factor of 2^1068 - 1 stays incomplete under the default budget") {
  const Factorization f = factor_two_power_minus_one(1068);
  CHECK_FALSE(f.complete);
  Natural product = f.factored_part();
  for (const auto& u : f.unfactored) product *= u;
  CHECK(product == two_pow(1068) - 1);
}

TEST_CASE("factor reassembles random n below 2^40") {
  Entropy rng(40);
  for (int trial = 0; trial < 10000; ++trial) {
    const Natural n = rng.below(two_pow(40) - 2) + 2;
    const Factorization f = factor(n);
    REQUIRE(f.complete);
    Natural product = 1;
    Natural previous = 1;
    for (const auto& pp : f.factors) {
      CHECK(pp.prime > previous);
      previous = pp.prime;
      // Primality from GMP's own test, not ours.
      CHECK(mpz_probab_prime_p(pp.prime.get_mpz_t(), 30) > 0);
      for (unsigned e = 0; e < pp.exponent; ++e) product *= pp.prime;
    }
    CHECK(product == n);
  }
}

TEST_CASE("factor agrees with trial division on small values") {
  for (std::uint64_t n = 2; n < 3000; ++n) {
    const Factorization f = factor(Natural(static_cast<unsigned long>(n)));
    const auto expect = oracle::trial_factor(n);
    REQUIRE(f.factors.size() == expect.size());
    for (std::size_t i = 0; i < expect.size(); ++i) {
      CHECK(to_u64(f.factors[i].prime) == expect[i].first);
      CHECK(f.factors[i].exponent == expect[i].second);
    }
  }
}

TEST_CASE("factor_two_power_minus_one matches direct factoring") {
  CHECK(factor_two_power_minus_one(1).complete);
  CHECK(factor_two_power_minus_one(1).factors.empty());
  for (unsigned e = 2; e <= 64; ++e) {
    const Factorization a = factor_two_power_minus_one(e);
    const Factorization b = factor(two_pow(e) - 1);
    REQUIRE(a.complete);
    REQUIRE(b.complete);
    REQUIRE(a.factors.size() == b.factors.size());
    for (std::size_t i = 0; i < a.factors.size(); ++i) {
      CHECK(a.factors[i].prime == b.factors[i].prime);
      CHECK(a.factors[i].exponent == b.factors[i].exponent);
    }
  }
}

TEST_CASE("mult_order examples") {
  CHECK(mult_order(2, 11, factor(10)) == 10);
  CHECK(mult_order(10, 11, factor(10)) == 2);
  CHECK(mult_order(1, 11, factor(10)) == 1);
  CHECK(mult_order(1, 1009, factor(1008)) == 1);
}

TEST_CASE("mult_order is minimal") {
  for (unsigned m : {7u, 11u, 13u, 101u, 257u, 1009u}) {
    const Factorization f = factor(m - 1);
    for (unsigned g = 1; g < m; ++g) {
      const Natural ord = mult_order(g, m, f);
      CHECK(mod_pow(g, ord, m) == 1);
      unsigned brute = 1;
      std::uint64_t acc = g;
      while (acc != 1) {
        acc = acc * g % m;
        ++brute;
      }
      CHECK(ord == brute);
    }
  }
}

TEST_CASE("order_by_division needs a complete factorization") {
  Factorization partial = factor(two_pow(30) - 1);
  partial.complete = false;
  CHECK_THROWS_AS(order_by_division(partial, [](const Natural&) { return true; }), Error);
}

TEST_CASE("is_primitive_mod examples") {
  CHECK(is_primitive_mod(two_pow(47), 11));
  CHECK_FALSE(is_primitive_mod(two_pow(55), 11));
  CHECK(is_primitive_mod(2, 3));
  CHECK(is_primitive_mod(8, 11));
  CHECK_FALSE(is_primitive_mod(two_pow(8), 11));
  CHECK_THROWS_AS(is_primitive_mod(22, 11), Error);
  CHECK_THROWS_AS(is_primitive_mod(2, 9), Error);
}

TEST_CASE("is_primitive_mod depends only on q mod d") {
  Entropy rng(5);
  for (unsigned d : {3u, 5u, 7u, 11u, 13u, 29u, 37u}) {
    for (int i = 0; i < 50; ++i) {
      const Natural q = rng.random_bits(200);
      if (q % d == 0) continue;
      CHECK(is_primitive_mod(q, d) == is_primitive_mod(q % d, d));
    }
  }
}

TEST_CASE("integer_crt examples") {
  const std::array<Natural, 1> r1{1}, m1{7};
  CHECK(integer_crt(r1, m1) == 1);
  const std::array<Natural, 2> r2{2, 3}, m2{3, 5};
  CHECK(integer_crt(r2, m2) == 8);
  const std::array<Natural, 2> r3{0, 0}, m3{4, 9};
  CHECK(integer_crt(r3, m3) == 0);
}

TEST_CASE("integer_crt matches a scan") {
  const std::array<Natural, 3> m{4, 9, 25};
  for (unsigned x = 0; x < 900; x += 7) {
    const std::array<Natural, 3> r{x % 4, x % 9, x % 25};
    CHECK(integer_crt(r, m) == x);
  }
}

TEST_CASE("crt_merge with shared factors") {
  auto ok = crt_merge(2, 6, 5, 9);
  REQUIRE(ok.has_value());
  CHECK(ok->first == 14);
  CHECK(ok->second == 18);
  CHECK_FALSE(crt_merge(1, 6, 2, 9).has_value());
}

}  // TEST_SUITE
