#include <algorithm>
#include <map>
#include <mutex>
#include <tuple>

#include "circelg/errors.hpp"
#include "circelg/gf2field.hpp"

namespace circelg {
namespace {

void require_same_field(const Poly& a, const Poly& b) {
  if (!(a.field() == b.field())) throw Error(Errc::SpecMismatch, "polynomials over different fields");
}

}  // namespace

Poly::Poly(FieldSpec field, std::vector<FieldElement> coeffs)
    : field_(field), coeffs_(std::move(coeffs)) {
  for (auto c : coeffs_) {
    if (!field_.contains(c)) throw Error(Errc::InvalidArgument, "coefficient outside the field");
  }
  normalize();
}

Poly Poly::constant(FieldSpec field, FieldElement c) { return Poly(field, {c}); }

Poly Poly::monomial(FieldSpec field, FieldElement c, std::size_t power) {
  std::vector<FieldElement> coeffs(power + 1);
  coeffs[power] = c;
  return Poly(field, std::move(coeffs));
}

void Poly::normalize() {
  while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

Poly poly_add(const Poly& a, const Poly& b) {
  require_same_field(a, b);
  const auto& F = a.field();
  const std::size_t len = std::max(a.coeffs().size(), b.coeffs().size());
  std::vector<FieldElement> out(len);
  for (std::size_t i = 0; i < len; ++i) out[i] = F.add(a.coeff(i), b.coeff(i));
  return Poly(F, std::move(out));
}

Poly poly_mul(const Poly& a, const Poly& b) {
  require_same_field(a, b);
  const auto& F = a.field();
  if (a.is_zero() || b.is_zero()) return Poly(F);
  const auto ac = a.coeffs(), bc = b.coeffs();
  std::vector<FieldElement> out(ac.size() + bc.size() - 1);
  for (std::size_t i = 0; i < ac.size(); ++i) {
    if (ac[i].is_zero()) continue;
    for (std::size_t j = 0; j < bc.size(); ++j) out[i + j] = F.add(out[i + j], F.mul(ac[i], bc[j]));
  }
  return Poly(F, std::move(out));
}

Poly poly_scale(const Poly& a, FieldElement c) {
  const auto& F = a.field();
  std::vector<FieldElement> out(a.coeffs().begin(), a.coeffs().end());
  for (auto& v : out) v = F.mul(v, c);
  return Poly(F, std::move(out));
}

Poly poly_square(const Poly& a) {
  // Characteristic 2: (sum a_i x^i)^2 = sum a_i^2 x^{2i}.
  const auto& F = a.field();
  if (a.is_zero()) return a;
  std::vector<FieldElement> out(2 * a.coeffs().size() - 1);
  for (std::size_t i = 0; i < a.coeffs().size(); ++i) out[2 * i] = F.square(a.coeffs()[i]);
  return Poly(F, std::move(out));
}

Poly poly_monic(const Poly& a) {
  if (a.is_zero()) return a;
  return poly_scale(a, a.field().inv(a.leading()));
}

PolyDivMod poly_divmod(const Poly& a, const Poly& b) {
  require_same_field(a, b);
  if (b.is_zero()) throw Error(Errc::InvalidArgument, "polynomial division by zero");
  const auto& F = a.field();
  if (a.degree() < b.degree()) return {Poly(F), a};
  std::vector<FieldElement> rem(a.coeffs().begin(), a.coeffs().end());
  const auto bc = b.coeffs();
  const std::size_t db = bc.size() - 1;
  const FieldElement lead_inv = F.inv(bc.back());
  std::vector<FieldElement> quot(rem.size() - db);
  for (std::size_t k = rem.size(); k-- > db;) {
    if (rem[k].is_zero()) continue;
    const FieldElement c = F.mul(rem[k], lead_inv);
    quot[k - db] = c;
    for (std::size_t j = 0; j <= db; ++j) rem[k - db + j] = F.add(rem[k - db + j], F.mul(c, bc[j]));
  }
  rem.resize(db);
  return {Poly(F, std::move(quot)), Poly(F, std::move(rem))};
}

Poly poly_mod(const Poly& a, const Poly& m) {
  if (a.degree() < m.degree()) {
    require_same_field(a, m);
    return a;
  }
  return poly_divmod(a, m).remainder;
}

PolyExtGcd poly_ext_gcd(const Poly& a, const Poly& b) {
  require_same_field(a, b);
  const auto& F = a.field();
  if (a.is_zero() && b.is_zero()) throw Error(Errc::InvalidArgument, "gcd(0, 0) is undefined");
  Poly r0 = a, r1 = b;
  Poly s0 = Poly::constant(F, F.one()), s1(F);
  Poly t0(F), t1 = Poly::constant(F, F.one());
  while (!r1.is_zero()) {
    auto [q, r] = poly_divmod(r0, r1);
    r0 = std::exchange(r1, std::move(r));
    Poly s2 = poly_add(s0, poly_mul(q, s1));
    s0 = std::exchange(s1, std::move(s2));
    Poly t2 = poly_add(t0, poly_mul(q, t1));
    t0 = std::exchange(t1, std::move(t2));
  }
  const FieldElement scale = F.inv(r0.leading());
  return {poly_scale(r0, scale), poly_scale(s0, scale), poly_scale(t0, scale)};
}

Poly poly_powmod(const Poly& base, const Natural& e, const Poly& m) {
  if (e < 0) throw Error(Errc::InvalidArgument, "negative exponent");
  const auto& F = base.field();
  Poly b = poly_mod(base, m);
  Poly r = poly_mod(Poly::constant(F, F.one()), m);
  for (int i = static_cast<int>(bit_length(e)) - 1; i >= 0; --i) {
    r = poly_mod(poly_square(r), m);
    if (mpz_tstbit(e.get_mpz_t(), static_cast<mp_bitcnt_t>(i))) r = poly_mod(poly_mul(r, b), m);
  }
  return r;
}

FieldElement poly_eval(const Poly& p, FieldElement x) {
  const auto& F = p.field();
  FieldElement acc{};
  for (std::size_t i = p.coeffs().size(); i-- > 0;) acc = F.add(F.mul(acc, x), p.coeffs()[i]);
  return acc;
}

Poly poly_crt(const Poly& r1, const Poly& m1, const Poly& r2, const Poly& m2) {
  const auto [g, u, v] = poly_ext_gcd(m1, m2);
  if (!g.is_one()) throw Error(Errc::NotCoprime, "CRT moduli share a common factor");
  // u·m1 ≡ 1 (mod m2) and ≡ 0 (mod m1).
  const Poly modulus = poly_mul(m1, m2);
  const Poly lift = poly_mul(poly_mul(poly_add(r2, r1), u), m1);
  return poly_mod(poly_add(r1, lift), modulus);
}

namespace {

/// a^q mod m via n = log2(q) squarings.
Poly frobenius_mod(const Poly& a, const Poly& m) {
  Poly r = poly_mod(a, m);
  for (unsigned i = 0; i < a.field().degree(); ++i) r = poly_mod(poly_square(r), m);
  return r;
}

}  // namespace

bool poly_is_irreducible(const Poly& p) {
  if (p.degree() < 1) throw Error(Errc::InvalidArgument, "irreducibility needs degree >= 1");
  const auto k = static_cast<unsigned>(p.degree());
  if (k == 1) return true;
  const Poly f = poly_monic(p);
  const Poly x = Poly::x(f.field());
  // conj[i] = x^{q^i} mod f
  std::vector<Poly> conj{x};
  conj.reserve(k + 1);
  for (unsigned i = 1; i <= k; ++i) conj.push_back(frobenius_mod(conj.back(), f));
  if (!(conj[k] == x)) return false;
  unsigned rest = k;
  for (unsigned r = 2; r <= rest; ++r) {
    if (rest % r != 0) continue;
    while (rest % r == 0) rest /= r;
    const Poly h = poly_add(conj[k / r], x);
    if (h.is_zero()) return false;
    if (!poly_ext_gcd(h, f).g.is_one()) return false;
  }
  return true;
}

ExtensionSpec ExtensionSpec::cyclotomic(const FieldSpec& base, unsigned d) {
  if (d < 2) throw Error(Errc::InvalidArgument, "cyclotomic modulus needs d >= 2");
  // Irreducibility of Φ is the costly part; remember it per (field, d).
  using Key = std::tuple<unsigned, std::uint64_t, std::uint64_t, unsigned>;
  static std::mutex mutex;
  static std::map<Key, ExtensionSpec> cache;
  const Word low = base.modulus_low();
  const Key key{base.degree(), static_cast<std::uint64_t>(low), static_cast<std::uint64_t>(low >> 64), d};
  {
    std::lock_guard lock(mutex);
    if (auto it = cache.find(key); it != cache.end()) return it->second;
  }
  ExtensionSpec ext(Poly(base, std::vector<FieldElement>(d, base.one())), d);
  std::lock_guard lock(mutex);
  return cache.emplace(key, std::move(ext)).first->second;
}

ExtensionSpec::ExtensionSpec(Poly modulus, unsigned d) : modulus_(std::move(modulus)), d_(d) {
  if (modulus_.degree() < 1) throw Error(Errc::InvalidArgument, "extension modulus needs degree >= 1");
  if (!(modulus_.leading() == modulus_.field().one())) {
    throw Error(Errc::InvalidArgument, "extension modulus must be monic");
  }
  irreducible_ = poly_is_irreducible(modulus_);
}

Natural ExtensionSpec::unit_group_exponent() const {
  Natural q_pow;
  const Natural q = base().order();
  mpz_pow_ui(q_pow.get_mpz_t(), q.get_mpz_t(), degree());
  return q_pow - 1;
}

Poly ExtensionSpec::mul(const Poly& a, const Poly& b) const {
  return poly_mod(poly_mul(a, b), modulus_);
}

Poly ExtensionSpec::pow(const Poly& a, const Natural& e) const { return poly_powmod(a, e, modulus_); }

Poly ExtensionSpec::inverse(const Poly& a) const {
  const Poly r = reduce(a);
  if (r.is_zero()) throw Error(Errc::NotInvertible, "zero is not invertible");
  auto [g, u, v] = poly_ext_gcd(r, modulus_);
  if (!g.is_one()) throw Error(Errc::NotInvertible, "element shares a factor with the modulus");
  return reduce(u);
}

Poly ExtensionSpec::frobenius(const Poly& a) const { return frobenius_mod(a, modulus_); }

Poly poly_mod_mul(const Poly& a, const Poly& b, const ExtensionSpec& ext) {
  if (!(a.field() == ext.base()) || !(b.field() == ext.base())) {
    throw Error(Errc::SpecMismatch, "operands are not over the extension's base field");
  }
  return ext.mul(a, b);
}

Poly frobenius(const Poly& a, const ExtensionSpec& ext) {
  if (!(a.field() == ext.base())) throw Error(Errc::SpecMismatch, "operand over a different field");
  return ext.frobenius(a);
}

bool poly_is_primitive(const Poly& tau, const Factorization& group_order) {
  if (!group_order.complete) {
    throw Error(Errc::IncompleteFactorization, "primitivity needs a complete factorization");
  }
  const Poly f = poly_monic(tau);
  const Poly x = Poly::x(f.field());
  if (!poly_powmod(x, group_order.value, f).is_one()) return false;
  for (const auto& pp : group_order.factors) {
    if (poly_powmod(x, group_order.value / pp.prime, f).is_one()) return false;
  }
  return true;
}

PrimitivePolyResult primitive_poly(unsigned degree, const FieldSpec& base, Entropy& rng,
                                   std::uint64_t budget) {
  if (degree < 1) throw Error(Errc::InvalidArgument, "primitive polynomial needs degree >= 1");
  return primitive_poly(degree, base, rng, factor_two_power_minus_one(base.degree() * degree, budget));
}

PrimitivePolyResult primitive_poly(unsigned degree, const FieldSpec& base, Entropy& rng,
                                   const Factorization& group_order) {
  if (degree < 1) throw Error(Errc::InvalidArgument, "primitive polynomial needs degree >= 1");
  Natural expected;
  const Natural q = base.order();
  mpz_pow_ui(expected.get_mpz_t(), q.get_mpz_t(), degree);
  if (group_order.value != expected - 1) {
    throw Error(Errc::InvalidArgument, "factorization is not of q^degree - 1");
  }
  const unsigned max_trials = 2000 + 200 * degree;
  for (unsigned trial = 0; trial < max_trials; ++trial) {
    std::vector<FieldElement> coeffs(degree + 1);
    for (unsigned i = 0; i < degree; ++i) coeffs[i] = base.random(rng);
    coeffs[degree] = base.one();
    if (coeffs[0].is_zero()) continue;
    Poly tau(base, std::move(coeffs));
    if (!poly_is_irreducible(tau)) continue;
    if (!group_order.complete) return {std::move(tau), group_order, false};
    if (poly_is_primitive(tau, group_order)) return {std::move(tau), group_order, true};
  }
  throw Error(Errc::BudgetExceeded, "no primitive polynomial found within the trial limit");
}

}  // namespace circelg
