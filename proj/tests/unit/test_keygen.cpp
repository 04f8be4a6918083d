#include <doctest.h>

#include "circelg/errors.hpp"
#include "circelg/keygen.hpp"

using namespace circelg;

namespace {

FieldElement fe(Word bits) { return {bits}; }

unsigned brute_order(const Circulant& a, unsigned limit) {
  Circulant acc = a;
  for (unsigned k = 1; k <= limit; ++k) {
    if (acc.is_identity()) return k;
    acc = mul(acc, a);
  }
  return 0;
}

void check_generated(const ParamSet& p) {
  const FieldSpec& f = p.field;
  CHECK(p.A.size() == p.d);
  CHECK(det(p.A) == f.one());
  CHECK(row_sum(p.A) == f.one());
  CHECK(five_conditions(p.A).all);
  CHECK(mul(p.A, inverse(p.A)).is_identity());
  REQUIRE(p.order.exact);
  CHECK(pow(p.A, p.order.value).is_identity());
  CHECK(p.order.value >= (Natural(1) << (f.degree() * (p.d - 3))));
  // The Φ-component of A is the reduced τ raised to det_order; the row-sum
  // component is 1.
  const CrtPair split = crt_split(p.A);
  CHECK(split.alpha == f.one());
  CHECK(split.beta == split.ext.pow(split.ext.reduce(p.tau), p.det_order));
}

}  // namespace

TEST_SUITE("keygen") {

TEST_CASE("generate at (1, 5)") {
  for (std::uint64_t seed = 0; seed < 20; ++seed) {
    Entropy rng(seed);
    const ParamSet p = generate(1, 5, rng);
    check_generated(p);
    CHECK(p.det_order == 1);
    CHECK(p.order.value == 15);
    CHECK(brute_order(p.A, 100) == 15);
    CHECK(p.tau_primitive);
  }
}

TEST_CASE("generate at (3, 11)") {
  const Natural group = (Natural(1) << 30) - 1;
  for (std::uint64_t seed = 0; seed < 10; ++seed) {
    Entropy rng(seed);
    const ParamSet p = generate(3, 11, rng);
    check_generated(p);
    CHECK(group % p.order.value == 0);
    CHECK(p.det_order == 7);
  }
}

TEST_CASE("generate rejects non-primitive cells") {
  Entropy rng(1);
  for (auto [n, d] : {std::pair{1u, 9u}, {8u, 11u}, {4u, 5u}, {1u, 7u}, {3u, 2u}, {3u, 1u}}) {
    try {
      generate(n, d, rng);
      FAIL("expected NotPrimitive for n=" << n << " d=" << d);
    } catch (const Error& e) {
      CHECK(e.code() == Errc::NotPrimitive);
    }
  }
}

TEST_CASE("generate is deterministic") {
  Entropy r1(99), r2(99);
  const ParamSet a = generate(3, 11, r1), b = generate(3, 11, r2);
  CHECK(a.A == b.A);
  CHECK(a.tau == b.tau);
  CHECK(a.order.value == b.order.value);
  CHECK(a.attempts == b.attempts);
}

TEST_CASE("five_conditions on fixed matrices") {
  const FieldSpec f = FieldSpec::make(1);
  const ConditionReport id = five_conditions(Circulant::identity(f, 5));
  CHECK(id.det_one);
  CHECK(id.row_sum_one);
  CHECK(id.d_prime);
  CHECK_FALSE(id.quotient_irreducible);
  CHECK(id.q_primitive);
  CHECK_FALSE(id.all);

  const Circulant shift(f, {fe(0), fe(1), fe(0), fe(0), fe(0)});
  const ConditionReport s = five_conditions(shift);
  CHECK(s.det_one);
  CHECK(s.row_sum_one);
  CHECK(s.quotient_irreducible);
  CHECK(s.all);

  const ConditionReport singular = five_conditions(Circulant(f, {fe(1), fe(1), fe(0)}));
  CHECK_FALSE(singular.det_one);
  CHECK_FALSE(singular.row_sum_one);
  CHECK_FALSE(singular.all);

  const ConditionReport even = five_conditions(Circulant::identity(f, 4));
  CHECK_FALSE(even.d_prime);
  CHECK_FALSE(even.all);

  const ConditionReport nonprim = five_conditions(Circulant::identity(FieldSpec::make(8), 11));
  CHECK(nonprim.d_prime);
  CHECK_FALSE(nonprim.q_primitive);
  CHECK_FALSE(nonprim.all);
}

TEST_CASE("quotient irreducibility matches the minimal polynomial of β") {
  // At (1, 5) β ranges over GF(16); g is irreducible iff β has degree 4,
  // i.e. β is not in GF(4) = {0, 1, ζ, ζ^2} where ζ has order 3.
  const FieldSpec f = FieldSpec::make(1);
  const ExtensionSpec ext = ExtensionSpec::cyclotomic(f, 5);
  for (unsigned bits = 0; bits < 16; ++bits) {
    std::vector<FieldElement> c;
    for (int i = 0; i < 4; ++i) c.push_back(fe((bits >> i) & 1));
    const Poly beta(f, c);
    const bool in_subfield = ext.pow(beta, 4) == ext.reduce(beta);
    const Circulant a = crt_join({f.one(), beta, ext});
    CHECK(five_conditions(a).quotient_irreducible == !in_subfield);
  }
}

TEST_CASE("order_of examples") {
  const FieldSpec f = FieldSpec::make(3);
  const OrderInfo id = order_of(Circulant::identity(f, 11));
  CHECK(id.exact);
  CHECK(id.value == 1);
  CHECK_THROWS_AS(order_of(Circulant(FieldSpec::make(1), {fe(1), fe(1), fe(0)})), Error);

  Entropy rng(3);
  for (int i = 0; i < 30; ++i) {
    const Circulant a = Circulant::random(FieldSpec::make(1), 7, rng);
    if (det(a).is_zero()) continue;
    const OrderInfo o = order_of(a);
    CHECK(o.exact);
    CHECK(o.value == brute_order(a, 100));
  }
}

TEST_CASE("order_of reports a certified divisor when factoring stops short") {
  Entropy rng(47);
  const FieldSpec f = FieldSpec::make(47);
  Circulant a = Circulant::random(f, 11, rng);
  while (det(a).is_zero()) a = Circulant::random(f, 11, rng);
  const Factorization group = circulant_group_order(f, 11);
  REQUIRE_FALSE(group.complete);
  const OrderInfo o = order_of(a, group);
  CHECK_FALSE(o.exact);
  CHECK(o.value >= 1);
  CHECK(group.value % o.value == 0);
  CHECK(pow(a, group.value).is_identity());
}

TEST_CASE("construct_candidate works where q is not primitive") {
  const FieldSpec f = FieldSpec::make(8);
  const Factorization group = circulant_group_order(f, 11);
  REQUIRE(group.complete);
  Entropy rng(8);
  const ParamSet p = construct_candidate(f, 11, rng, group);
  CHECK(p.tau_primitive);
  CHECK(det(p.A) == f.one());
  CHECK(row_sum(p.A) == f.one());
  REQUIRE(p.order.exact);
  CHECK(pow(p.A, p.order.value).is_identity());
  CHECK_FALSE(five_conditions(p.A).q_primitive);
}

TEST_CASE("params_from_matrix") {
  Entropy rng(12);
  const ParamSet g = generate(3, 11, rng);
  const ParamSet p = params_from_matrix(g.A);
  CHECK(p.A == g.A);
  CHECK(p.order.exact);
  CHECK(p.order.value == g.order.value);
  CHECK(p.det_order == 1);
}

}  // TEST_SUITE
