#include "circelg/dlp.hpp"

#include <cmath>
#include <cstring>
#include <unordered_map>

#include "circelg/errors.hpp"
#include "circelg/keygen.hpp"

namespace circelg {
namespace {

void append_key(std::string& key, FieldElement c) {
  char raw[sizeof(Word)];
  std::memcpy(raw, &c.bits, sizeof raw);
  key.append(raw, sizeof raw);
}

struct ExtGroup {
  using Elem = Poly;
  const ExtensionSpec& ext;

  Elem one() const { return ext.one(); }
  Elem mul(const Elem& a, const Elem& b) const { return ext.mul(a, b); }
  Elem pow(const Elem& a, const Natural& e) const { return ext.pow(a, e); }
  Elem inv(const Elem& a) const { return ext.inverse(a); }
  std::string key(const Elem& a) const {
    std::string k;
    for (unsigned i = 0; i < ext.degree(); ++i) append_key(k, a.coeff(i));
    return k;
  }
};

struct FieldGroup {
  using Elem = FieldElement;
  const FieldSpec& field;

  Elem one() const { return field.one(); }
  Elem mul(Elem a, Elem b) const { return field.mul(a, b); }
  Elem pow(Elem a, const Natural& e) const { return field.pow(a, e); }
  Elem inv(Elem a) const { return field.inv(a); }
  std::string key(Elem a) const {
    std::string k;
    append_key(k, a);
    return k;
  }
};

template <class G>
Natural bsgs_in(const G& g, const typename G::Elem& base, const typename G::Elem& target,
                const Natural& order, BsgsStats* stats) {
  if (order < 1) throw Error(Errc::InvalidArgument, "order must be positive");
  if (order > Natural(static_cast<unsigned long>(kBsgsMaxOrder))) {
    throw Error(Errc::InvalidArgument, "order exceeds the 2^48 leaf bound");
  }
  const std::uint64_t n = order.get_ui();
  std::uint64_t m = static_cast<std::uint64_t>(std::ceil(std::sqrt(static_cast<double>(n))));
  while (m * m < n) ++m;

  std::unordered_map<std::string, std::uint64_t> table;
  table.reserve(m);
  auto step = g.one();
  for (std::uint64_t j = 0; j < m; ++j) {
    table.try_emplace(g.key(step), j);
    step = g.mul(step, base);
  }
  // step = base^m now
  const auto giant = g.inv(step);
  auto gamma = target;
  std::uint64_t i = 0;
  for (; i < m; ++i) {
    if (auto it = table.find(g.key(gamma)); it != table.end()) {
      const std::uint64_t x = i * m + it->second;
      if (stats != nullptr) *stats = {table.size(), i + 1};
      if (x < n) return Natural(static_cast<unsigned long>(x));
      break;
    }
    gamma = g.mul(gamma, giant);
  }
  if (stats != nullptr) *stats = {table.size(), i};
  throw Error(Errc::NotFound, "target is not a power of base");
}

template <class G>
DlpSolution pohlig_hellman_in(const G& g, const typename G::Elem& base, const typename G::Elem& target,
                              const Factorization& order) {
  if (!order.complete) throw Error(Errc::IncompleteFactorization, "group order is not fully factored");
  if (!(g.pow(base, order.value) == g.one())) {
    throw Error(Errc::InvalidArgument, "base order does not divide the stated group order");
  }
  std::vector<Natural> residues, moduli;
  for (const auto& [p, e] : order.factors) {
    Natural pe;
    mpz_pow_ui(pe.get_mpz_t(), p.get_mpz_t(), e);
    const Natural cofactor = order.value / pe;
    const auto bp = g.pow(base, cofactor);
    const auto tp = g.pow(target, cofactor);

    // bp has order p^k for some k <= e.
    unsigned k = 0;
    Natural pk = 1;
    for (auto probe = bp; !(probe == g.one()); probe = g.pow(probe, p)) {
      ++k;
      pk *= p;
    }
    if (k == 0) {
      if (!(tp == g.one())) throw Error(Errc::NotFound, "target is not a power of base");
      continue;
    }
    if (p > Natural(static_cast<unsigned long>(kBsgsMaxOrder))) {
      throw Error(Errc::InvalidArgument, "prime factor exceeds the 2^48 leaf bound");
    }
    const auto gamma = g.pow(bp, pk / p);  // order p
    const auto bp_inv = g.inv(bp);
    Natural x = 0, digit_weight = 1;
    for (unsigned i = 0; i < k; ++i) {
      // (bp^{-x} tp)^{p^{k-1-i}}
      Natural lift;
      mpz_pow_ui(lift.get_mpz_t(), p.get_mpz_t(), k - 1 - i);
      const auto h = g.pow(g.mul(g.pow(bp_inv, x), tp), lift);
      x += bsgs_in(g, gamma, h, p, nullptr) * digit_weight;
      digit_weight *= p;
    }
    residues.push_back(std::move(x));
    moduli.push_back(std::move(pk));
  }
  if (moduli.empty()) return {0, 1};
  Natural x = integer_crt(residues, moduli);
  Natural modulus = 1;
  for (const auto& m : moduli) modulus *= m;
  if (!(g.pow(base, x) == target)) throw Error(Errc::NotFound, "target is not a power of base");
  return {std::move(x), std::move(modulus)};
}

}  // namespace

Natural bsgs(const Poly& base, const Poly& target, const Natural& order, const ExtensionSpec& ext,
             BsgsStats* stats) {
  return bsgs_in(ExtGroup{ext}, ext.reduce(base), ext.reduce(target), order, stats);
}

Natural bsgs(const FieldSpec& field, FieldElement base, FieldElement target, const Natural& order,
             BsgsStats* stats) {
  return bsgs_in(FieldGroup{field}, base, target, order, stats);
}

DlpSolution pohlig_hellman(const Poly& base, const Poly& target, const Factorization& order,
                           const ExtensionSpec& ext) {
  return pohlig_hellman_in(ExtGroup{ext}, ext.reduce(base), ext.reduce(target), order);
}

DlpSolution pohlig_hellman(const FieldSpec& field, FieldElement base, FieldElement target,
                           const Factorization& order) {
  if (base.is_zero() || target.is_zero()) throw Error(Errc::NotFound, "zero is not in the unit group");
  return pohlig_hellman_in(FieldGroup{field}, base, target, order);
}

CirculantReduction reduce_to_field(const Circulant& a, const Circulant& b, std::uint64_t budget) {
  if (a.size() != b.size()) throw Error(Errc::DimensionMismatch, "circulants of different sizes");
  CrtPair sa = crt_split(a);
  CrtPair sb = crt_split(b);
  Factorization group = circulant_group_order(a.field(), a.size(), budget);
  return {DlpInstance{std::move(sa.beta), std::move(sb.beta), std::move(group), std::move(sa.ext)},
          FieldDlpInstance{a.field(), sa.alpha, sb.alpha}};
}

Natural solve_circulant_dlp(const Circulant& a, const Circulant& b, std::uint64_t budget) {
  const CirculantReduction r = reduce_to_field(a, b, budget);
  const DlpSolution beta =
      pohlig_hellman(r.beta.base, r.beta.target, r.beta.group_order, r.beta.ext);

  DlpSolution alpha{0, 1};
  const FieldSpec& field = r.alpha.field;
  if (r.alpha.base == field.one()) {
    if (!(r.alpha.target == field.one())) throw Error(Errc::NotFound, "row sums are inconsistent");
  } else {
    alpha = pohlig_hellman(field, r.alpha.base, r.alpha.target,
                           factor_two_power_minus_one(field.degree(), budget));
  }
  const auto merged = crt_merge(beta.exponent, beta.modulus, alpha.exponent, alpha.modulus);
  if (!merged) throw Error(Errc::NotFound, "component logarithms disagree");
  if (!(pow(a, merged->first) == b)) throw Error(Errc::NotFound, "B is not a power of A");
  return merged->first;
}

}  // namespace circelg
