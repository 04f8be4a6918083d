#include "circelg/keygen.hpp"

#include "circelg/errors.hpp"

namespace circelg {
namespace {

void require_odd_prime(unsigned d) {
  if (d < 3 || d % 2 == 0 || !is_prime(Natural(d))) {
    throw Error(Errc::DNotPrime, "d must be an odd prime, got " + std::to_string(d));
  }
}

/// Order of a nonzero element of F_q^×.
Natural field_element_order(const FieldSpec& field, FieldElement a) {
  const Factorization f = factor_two_power_minus_one(field.degree());
  auto at = [&](const Natural& e) { return field.pow(a, e) == field.one(); };
  if (f.complete) return order_by_division(f, at);
  return field.order() - 1;
}

}  // namespace

Factorization circulant_group_order(const FieldSpec& field, unsigned d, std::uint64_t budget) {
  require_odd_prime(d);
  return factor_two_power_minus_one(field.degree() * (d - 1), budget);
}

ParamSet construct_candidate(const FieldSpec& field, unsigned d, Entropy& rng,
                             const Factorization& group_order) {
  require_odd_prime(d);
  const ExtensionSpec phi = ExtensionSpec::cyclotomic(field, d);
  const Poly x_minus_one(field, {field.one(), field.one()});

  // τ = Φ would give β = 0; only possible when Φ itself is primitive (q = 2, d = 3).
  constexpr unsigned kTauDraws = 64;
  for (unsigned draw = 0; draw < kTauDraws; ++draw) {
    PrimitivePolyResult prim = primitive_poly(d - 1, field, rng, group_order);
    if (prim.tau == phi.modulus()) continue;

    // det of the companion matrix of a monic τ is ±τ(0), and the sign
    // vanishes in characteristic 2.
    const FieldElement tau0 = prim.tau.coeff(0);
    Natural det_order = field_element_order(field, tau0);

    const Poly psi = poly_crt(Poly::constant(field, field.one()), x_minus_one,
                              phi.reduce(prim.tau), phi.modulus());
    Circulant a = pow(Circulant::from_representer(psi, d), det_order);

    OrderInfo order{0, false};
    if (!det(a).is_zero()) order = order_of(a, group_order);
    return ParamSet{field,
                    d,
                    std::move(a),
                    std::move(prim.tau),
                    std::move(det_order),
                    std::move(order),
                    group_order,
                    prim.primitivity_verified,
                    1};
  }
  throw Error(Errc::RetriesExhausted, "no usable primitive polynomial differs from Φ");
}

ParamSet generate(unsigned n, unsigned d, Entropy& rng, std::uint64_t budget) {
  bool primitive = false;
  try {
    primitive = d >= 3 && is_primitive_mod(Natural(1) << n, Natural(d));
  } catch (const Error& e) {
    if (e.code() != Errc::DNotPrime && e.code() != Errc::NotAUnit) throw;
  }
  if (!primitive) {
    throw Error(Errc::NotPrimitive,
                "2^" + std::to_string(n) + " is not primitive mod " + std::to_string(d));
  }
  const FieldSpec field = FieldSpec::make(n);
  const Factorization group = circulant_group_order(field, d, budget);
  const Natural order_floor = Natural(1) << (n * (d - 3));

  for (unsigned attempt = 1; attempt <= kMaxGenerateAttempts; ++attempt) {
    ParamSet candidate = construct_candidate(field, d, rng, group);
    if (!five_conditions(candidate.A).all) continue;
    if (candidate.order.exact && candidate.order.value < order_floor) continue;
    candidate.attempts = attempt;
    return candidate;
  }
  throw Error(Errc::RetriesExhausted, "no candidate passed validation in " +
                                          std::to_string(kMaxGenerateAttempts) + " attempts");
}

ConditionReport five_conditions(const Circulant& a) {
  ConditionReport r;
  const FieldSpec& field = a.field();
  const unsigned d = a.size();
  try {
    r.det_one = det(a) == field.one();
    r.row_sum_one = row_sum(a) == field.one();
    r.d_prime = d >= 2 && is_prime(Natural(d));
    if (r.d_prime) r.q_primitive = is_primitive_mod(field.order(), Natural(d));
    if (r.d_prime && d % 2 == 1) {
      if (ExtensionSpec::cyclotomic(field, d).is_field()) {
        r.quotient_irreducible = char_poly_quotient(a).irreducible;
      } else {
        // χ_A = (x - α)·g with α the row sum; test g directly.
        const Poly chi = characteristic_polynomial(a);
        const Poly root_factor(field, {row_sum(a), field.one()});
        const auto [g, rem] = poly_divmod(chi, root_factor);
        r.quotient_irreducible = rem.is_zero() && g.degree() >= 1 && poly_is_irreducible(g);
      }
    }
  } catch (const Error&) {
    // A check that cannot be evaluated counts as failed.
  }
  r.all = r.det_one && r.row_sum_one && r.d_prime && r.quotient_irreducible && r.q_primitive;
  return r;
}

OrderInfo order_of(const Circulant& a, const Factorization& group_order) {
  require_odd_prime(a.size());
  if (det(a).is_zero()) throw Error(Errc::NotInvertible, "singular circulant has no order");
  auto at = [&](const Natural& e) { return pow(a, e).is_identity(); };
  if (group_order.complete) return {order_by_division(group_order, at), true};
  return {order_certified_part(group_order, at), false};
}

OrderInfo order_of(const Circulant& a, std::uint64_t budget) {
  return order_of(a, circulant_group_order(a.field(), a.size(), budget));
}

ParamSet params_from_matrix(const Circulant& a, std::uint64_t budget) {
  const FieldSpec& field = a.field();
  Factorization group = circulant_group_order(field, a.size(), budget);
  OrderInfo order = order_of(a, group);
  Natural det_order = field_element_order(field, det(a));
  return ParamSet{field,         a.size(),        a,     Poly(field), std::move(det_order),
                  std::move(order), std::move(group), false, 0};
}

}  // namespace circelg
