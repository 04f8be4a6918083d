#include "circelg/numtheory.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "circelg/errors.hpp"

namespace circelg {
namespace {

constexpr std::uint32_t kTrialLimit = 1'000'000;
constexpr std::uint64_t kRhoBatch = 128;
constexpr std::uint64_t kPrimalitySeed = 0x6d696c6c65722d72ULL;
constexpr std::uint64_t kRhoSeed = 0x706f6c6c6172642dULL;

const std::vector<std::uint32_t>& small_primes() {
  static const std::vector<std::uint32_t> primes = [] {
    std::vector<bool> composite(kTrialLimit, false);
    std::vector<std::uint32_t> out;
    for (std::uint32_t i = 2; i < kTrialLimit; ++i) {
      if (composite[i]) continue;
      out.push_back(i);
      for (std::uint64_t j = std::uint64_t{i} * i; j < kTrialLimit; j += i) composite[j] = true;
    }
    return out;
  }();
  return primes;
}

bool miller_rabin_round(const Natural& n, const Natural& n_minus_1, const Natural& odd_part,
                        unsigned twos, const Natural& witness) {
  Natural x;
  mpz_powm(x.get_mpz_t(), witness.get_mpz_t(), odd_part.get_mpz_t(), n.get_mpz_t());
  if (x == 1 || x == n_minus_1) return true;
  for (unsigned i = 1; i < twos; ++i) {
    mpz_powm_ui(x.get_mpz_t(), x.get_mpz_t(), 2, n.get_mpz_t());
    if (x == n_minus_1) return true;
    if (x == 1) return false;
  }
  return false;
}

using PrimeMap = std::map<Natural, unsigned>;

/// Strips primes below 10^6 from `rest`. Stops early once the remaining
/// cofactor is certainly prime.
void trial_divide(Natural& rest, PrimeMap& found, Entropy& rng) {
  const auto& primes = small_primes();
  bool changed = false;
  for (std::size_t i = 0; i < primes.size() && rest > 1; ++i) {
    const unsigned long p = primes[i];
    if (rest < Natural(p) * p) {
      ++found[rest];
      rest = 1;
      return;
    }
    if (mpz_divisible_ui_p(rest.get_mpz_t(), p)) {
      unsigned e = 0;
      while (mpz_divisible_ui_p(rest.get_mpz_t(), p)) {
        mpz_divexact_ui(rest.get_mpz_t(), rest.get_mpz_t(), p);
        ++e;
      }
      found[Natural(p)] += e;
      changed = true;
    }
    if ((i == 168 || (changed && i > 168)) && rest > 1) {
      changed = false;
      if (is_prime(rest, rng)) {
        ++found[rest];
        rest = 1;
        return;
      }
    }
  }
}

/// Pollard–Brent with batched gcds. Returns a proper factor of n, or 0 when
/// the budget is exhausted.
Natural brent_split(const Natural& n, std::uint64_t& budget, Entropy& rng) {
  const Natural n_minus_1 = n - 1;
  Natural x, y, ys, c, q, g, diff;
  auto step = [&](Natural& v) {
    mpz_mul(v.get_mpz_t(), v.get_mpz_t(), v.get_mpz_t());
    mpz_add(v.get_mpz_t(), v.get_mpz_t(), c.get_mpz_t());
    mpz_mod(v.get_mpz_t(), v.get_mpz_t(), n.get_mpz_t());
  };
  while (budget > 0) {
    y = rng.in_range(1, n_minus_1);
    c = rng.in_range(1, n_minus_1);
    q = 1;
    g = 1;
    std::uint64_t r = 1;
    do {
      x = y;
      for (std::uint64_t i = 0; i < r; ++i) {
        if (budget == 0) return 0;
        step(y);
        --budget;
      }
      for (std::uint64_t k = 0; k < r && g == 1; k += kRhoBatch) {
        ys = y;
        const std::uint64_t batch = std::min(kRhoBatch, r - k);
        for (std::uint64_t i = 0; i < batch; ++i) {
          if (budget == 0) return 0;
          step(y);
          --budget;
          mpz_sub(diff.get_mpz_t(), x.get_mpz_t(), y.get_mpz_t());
          mpz_abs(diff.get_mpz_t(), diff.get_mpz_t());
          mpz_mul(q.get_mpz_t(), q.get_mpz_t(), diff.get_mpz_t());
          mpz_mod(q.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
        }
        mpz_gcd(g.get_mpz_t(), q.get_mpz_t(), n.get_mpz_t());
      }
      r *= 2;
    } while (g == 1);
    if (g == n) {
      // The batch overshot; replay it one step at a time.
      do {
        if (budget == 0) return 0;
        step(ys);
        --budget;
        mpz_sub(diff.get_mpz_t(), x.get_mpz_t(), ys.get_mpz_t());
        mpz_abs(diff.get_mpz_t(), diff.get_mpz_t());
        mpz_gcd(g.get_mpz_t(), diff.get_mpz_t(), n.get_mpz_t());
      } while (g == 1);
    }
    if (g != n) return g;
  }
  return 0;
}

void factor_into(const Natural& n, std::uint64_t& budget, PrimeMap& found,
                 std::vector<Natural>& unfactored, Entropy& rng) {
  Natural rest = n;
  trial_divide(rest, found, rng);
  std::vector<Natural> pending;
  if (rest > 1) pending.push_back(rest);
  while (!pending.empty()) {
    Natural m = std::move(pending.back());
    pending.pop_back();
    if (m == 1) continue;
    if (is_prime(m, rng)) {
      ++found[m];
      continue;
    }
    Natural root;
    if (mpz_perfect_square_p(m.get_mpz_t())) {
      mpz_sqrt(root.get_mpz_t(), m.get_mpz_t());
      pending.push_back(root);
      pending.push_back(root);
      continue;
    }
    Natural split = brent_split(m, budget, rng);
    if (split == 0) {
      unfactored.push_back(m);
      continue;
    }
    pending.push_back(m / split);
    pending.push_back(split);
  }
}

Factorization assemble(const Natural& value, const PrimeMap& found,
                       std::vector<Natural> unfactored) {
  Factorization out;
  out.value = value;
  for (const auto& [p, e] : found) out.factors.push_back({p, e});
  std::sort(unfactored.begin(), unfactored.end());
  out.unfactored = std::move(unfactored);
  out.complete = out.unfactored.empty();
  return out;
}

int moebius(unsigned k) {
  int sign = 1;
  for (unsigned p = 2; p * p <= k; ++p) {
    if (k % p != 0) continue;
    k /= p;
    if (k % p == 0) return 0;
    sign = -sign;
  }
  if (k > 1) sign = -sign;
  return sign;
}

Natural two_power_minus_one(unsigned e) { return (Natural(1) << e) - 1; }

}  // namespace

Natural Factorization::factored_part() const {
  Natural out = 1;
  for (const auto& pp : factors) {
    Natural power;
    mpz_pow_ui(power.get_mpz_t(), pp.prime.get_mpz_t(), pp.exponent);
    out *= power;
  }
  return out;
}

Natural Factorization::largest_prime() const {
  return factors.empty() ? Natural(1) : factors.back().prime;
}

unsigned bit_length(const Natural& n) {
  if (n == 0) return 0;
  return static_cast<unsigned>(mpz_sizeinbase(n.get_mpz_t(), 2));
}

double log2_of(const Natural& n) {
  if (n <= 0) throw Error(Errc::InvalidArgument, "log2 of a non-positive value");
  long exp = 0;
  const double mantissa = mpz_get_d_2exp(&exp, n.get_mpz_t());
  return std::log2(mantissa) + static_cast<double>(exp);
}

Natural mod_pow(const Natural& base, const Natural& exponent, const Natural& modulus) {
  if (modulus < 2) throw Error(Errc::InvalidModulus, "modulus must be at least 2");
  if (exponent < 0) throw Error(Errc::InvalidArgument, "negative exponent");
  Natural out;
  mpz_powm(out.get_mpz_t(), base.get_mpz_t(), exponent.get_mpz_t(), modulus.get_mpz_t());
  return out;
}

bool is_prime(const Natural& n, Entropy& rng) {
  if (n < 2) return false;
  static constexpr unsigned kSmall[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  for (unsigned p : kSmall) {
    if (n == p) return true;
    if (mpz_divisible_ui_p(n.get_mpz_t(), p)) return false;
  }
  const Natural n_minus_1 = n - 1;
  Natural odd_part = n_minus_1;
  const auto twos = static_cast<unsigned>(mpz_scan1(odd_part.get_mpz_t(), 0));
  odd_part >>= twos;

  if (bit_length(n) <= 64) {
    for (unsigned a : kSmall) {
      if (!miller_rabin_round(n, n_minus_1, odd_part, twos, Natural(a))) return false;
    }
    return true;
  }
  for (int round = 0; round < 64; ++round) {
    const Natural witness = rng.in_range(2, n - 2);
    if (!miller_rabin_round(n, n_minus_1, odd_part, twos, witness)) return false;
  }
  return true;
}

bool is_prime(const Natural& n) {
  Entropy rng(kPrimalitySeed);
  return is_prime(n, rng);
}

Factorization factor(const Natural& n, std::uint64_t budget) {
  if (n < 2) throw Error(Errc::InvalidArgument, "factor requires n >= 2");
  if (budget == 0) throw Error(Errc::InvalidArgument, "factor budget must be positive");
  Entropy rng(kRhoSeed);
  PrimeMap found;
  std::vector<Natural> unfactored;
  factor_into(n, budget, found, unfactored, rng);
  return assemble(n, found, std::move(unfactored));
}

Factorization factor_two_power_minus_one(unsigned exponent, std::uint64_t budget) {
  if (exponent == 0) throw Error(Errc::InvalidArgument, "exponent must be positive");
  if (budget == 0) throw Error(Errc::InvalidArgument, "factor budget must be positive");
  Entropy rng(kRhoSeed);
  PrimeMap found;
  std::vector<Natural> unfactored;
  for (unsigned k = 2; k <= exponent; ++k) {
    if (exponent % k != 0) continue;
    // Φ_k(2) = prod_{j | k} (2^j - 1)^{μ(k/j)}
    Natural num = 1, den = 1;
    for (unsigned j = 1; j <= k; ++j) {
      if (k % j != 0) continue;
      const int mu = moebius(k / j);
      if (mu == 1) num *= two_power_minus_one(j);
      if (mu == -1) den *= two_power_minus_one(j);
    }
    Natural piece;
    mpz_divexact(piece.get_mpz_t(), num.get_mpz_t(), den.get_mpz_t());
    if (piece > 1) factor_into(piece, budget, found, unfactored, rng);
  }
  return assemble(two_power_minus_one(exponent), found, std::move(unfactored));
}

Natural order_by_division(const Factorization& group_order,
                          const std::function<bool(const Natural&)>& is_identity_at) {
  if (!group_order.complete) {
    throw Error(Errc::IncompleteFactorization, "order needs a complete factorization");
  }
  if (!is_identity_at(group_order.value)) {
    throw Error(Errc::InvalidArgument, "element order does not divide the stated group order");
  }
  Natural order = group_order.value;
  for (const auto& [p, e] : group_order.factors) {
    for (unsigned i = 0; i < e; ++i) {
      Natural reduced;
      mpz_divexact(reduced.get_mpz_t(), order.get_mpz_t(), p.get_mpz_t());
      if (!is_identity_at(reduced)) break;
      order = std::move(reduced);
    }
  }
  return order;
}

Natural order_certified_part(const Factorization& group_order,
                             const std::function<bool(const Natural&)>& is_identity_at) {
  if (!is_identity_at(group_order.value)) {
    throw Error(Errc::InvalidArgument, "element order does not divide the stated group order");
  }
  Natural certified = 1;
  for (const auto& pp : group_order.factors) {
    Natural stripped = group_order.value;
    unsigned valuation = 0;
    while (mpz_divisible_p(stripped.get_mpz_t(), pp.prime.get_mpz_t())) {
      mpz_divexact(stripped.get_mpz_t(), stripped.get_mpz_t(), pp.prime.get_mpz_t());
      ++valuation;
    }
    Natural exponent = stripped;
    for (unsigned k = 0; k <= valuation; ++k) {
      if (is_identity_at(exponent)) break;
      exponent *= pp.prime;
      certified *= pp.prime;
    }
  }
  return certified;
}

Natural mult_order(const Natural& g, const Natural& modulus,
                   const Factorization& group_order_factorization) {
  if (modulus < 2) throw Error(Errc::InvalidModulus, "modulus must be at least 2");
  Natural base = g % modulus;
  if (base < 0) base += modulus;
  Natural common;
  mpz_gcd(common.get_mpz_t(), base.get_mpz_t(), modulus.get_mpz_t());
  if (common != 1) throw Error(Errc::NotAUnit, "element is not a unit modulo the modulus");
  return order_by_division(group_order_factorization,
                           [&](const Natural& e) { return mod_pow(base, e, modulus) == 1; });
}

bool is_primitive_mod(const Natural& q, const Natural& d) {
  if (!is_prime(d)) throw Error(Errc::DNotPrime, "d must be prime");
  if (d == 2) {
    if (mpz_even_p(q.get_mpz_t())) throw Error(Errc::NotAUnit, "q shares a factor with d");
    return true;
  }
  const Natural order = mult_order(q, d, factor(d - 1));
  return order == d - 1;
}

Natural integer_crt(std::span<const Natural> residues, std::span<const Natural> moduli) {
  if (residues.empty() || residues.size() != moduli.size()) {
    throw Error(Errc::InvalidArgument, "residues and moduli must be equal-length and non-empty");
  }
  Natural x = 0, modulus = 1;
  for (std::size_t i = 0; i < moduli.size(); ++i) {
    const Natural& m = moduli[i];
    if (m < 1) throw Error(Errc::InvalidArgument, "moduli must be positive");
    Natural common;
    mpz_gcd(common.get_mpz_t(), modulus.get_mpz_t(), m.get_mpz_t());
    if (common != 1) throw Error(Errc::NotCoprime, "moduli are not pairwise coprime");
    Natural r = residues[i] % m;
    if (r < 0) r += m;
    Natural inv = 0;
    if (m > 1) {
      const Natural reduced = modulus % m;
      mpz_invert(inv.get_mpz_t(), reduced.get_mpz_t(), m.get_mpz_t());
    }
    Natural t = ((r - x) * inv) % m;
    if (t < 0) t += m;
    x += modulus * t;
    modulus *= m;
  }
  return x % modulus;
}

std::optional<std::pair<Natural, Natural>> crt_merge(const Natural& r1, const Natural& m1,
                                                     const Natural& r2, const Natural& m2) {
  if (m1 < 1 || m2 < 1) throw Error(Errc::InvalidArgument, "moduli must be positive");
  Natural g;
  mpz_gcd(g.get_mpz_t(), m1.get_mpz_t(), m2.get_mpz_t());
  Natural delta = r2 - r1;
  if (!mpz_divisible_p(delta.get_mpz_t(), g.get_mpz_t())) return std::nullopt;
  const Natural m1g = m1 / g, m2g = m2 / g;
  const Natural lcm = m1g * m2;
  Natural t = 0;
  if (m2g > 1) {
    Natural inv, a = m1g % m2g;
    mpz_invert(inv.get_mpz_t(), a.get_mpz_t(), m2g.get_mpz_t());
    t = ((delta / g) * inv) % m2g;
    if (t < 0) t += m2g;
  }
  Natural x = (r1 + m1 * t) % lcm;
  if (x < 0) x += lcm;
  return std::make_pair(x, lcm);
}

}  // namespace circelg
