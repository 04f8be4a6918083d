#include <doctest.h>

#include "circelg/circulant.hpp"
#include "circelg/errors.hpp"
#include "../oracle.hpp"

using namespace circelg;

namespace {

FieldElement fe(Word bits) { return {bits}; }

Circulant circ(const FieldSpec& f, std::initializer_list<int> row) {
  std::vector<FieldElement> r;
  for (int v : row) r.push_back(fe(static_cast<Word>(v)));
  return Circulant(f, std::move(r));
}

oracle::SmallField small(const FieldSpec& f) {
  return {f.degree(), static_cast<std::uint64_t>(f.modulus_low()) | (std::uint64_t{1} << f.degree())};
}

std::vector<std::uint64_t> raw(const Circulant& a) {
  std::vector<std::uint64_t> out;
  for (auto c : a.row()) out.push_back(static_cast<std::uint64_t>(c.bits));
  return out;
}

/// Polynomial product, then fold x^k onto x^{k mod d}.
std::vector<std::uint64_t> schoolbook(const oracle::SmallField& f, const std::vector<std::uint64_t>& a,
                                      const std::vector<std::uint64_t>& b) {
  const std::size_t d = a.size();
  std::vector<std::uint64_t> prod(2 * d - 1, 0);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) prod[i + j] ^= f.mul(a[i], b[j]);
  }
  std::vector<std::uint64_t> out(d, 0);
  for (std::size_t k = 0; k < prod.size(); ++k) out[k % d] ^= prod[k];
  return out;
}

}  // namespace

TEST_SUITE("circulant") {

TEST_CASE("mul examples") {
  const FieldSpec f = FieldSpec::make(1);
  CHECK(mul(circ(f, {1, 1, 0}), circ(f, {1, 0, 1})) == circ(f, {0, 1, 1}));
  Entropy rng(1);
  const FieldSpec f8 = FieldSpec::make(8);
  for (int i = 0; i < 100; ++i) {
    const Circulant a = Circulant::random(f8, 11, rng), b = Circulant::random(f8, 11, rng);
    CHECK(mul(Circulant::identity(f8, 11), b) == b);
    CHECK(mul(a, b) == mul(b, a));
  }
  CHECK_THROWS_AS(mul(Circulant::identity(f8, 3), Circulant::identity(f8, 5)), Error);
  CHECK_THROWS_AS(mul(Circulant::identity(f8, 3), Circulant::identity(f, 3)), Error);
}

TEST_CASE("mul agrees with schoolbook products mod x^d - 1") {
  Entropy rng(2);
  for (unsigned n : {1u, 3u, 8u}) {
    const FieldSpec f = FieldSpec::make(n);
    const oracle::SmallField o = small(f);
    for (unsigned d : {2u, 3u, 5u, 11u}) {
      for (int i = 0; i < 10000; ++i) {
        const Circulant a = Circulant::random(f, d, rng), b = Circulant::random(f, d, rng);
        OpCounter counter;
        const Circulant c = mul(a, b, &counter);
        CHECK(raw(c) == schoolbook(o, raw(a), raw(b)));
        CHECK(counter.general_mults == 1);
        CHECK(counter.field_mults == d * d);
      }
    }
  }
}

TEST_CASE("square examples") {
  const FieldSpec f = FieldSpec::make(1);
  CHECK(square(circ(f, {1, 1, 0, 0, 0})) == circ(f, {1, 0, 1, 0, 0}));
  const FieldSpec f8 = FieldSpec::make(8);
  CHECK(square(Circulant::identity(f8, 11)) == Circulant::identity(f8, 11));
  CHECK_THROWS_AS(square(Circulant::identity(f8, 4)), Error);
}

TEST_CASE("square is mul(A, A) and pow is additive in the exponent") {
  Entropy rng(3);
  for (unsigned n : {1u, 3u, 8u, 64u}) {
    const FieldSpec f = FieldSpec::make(n);
    for (unsigned d : {3u, 5u, 11u, 13u}) {
      for (int i = 0; i < 200; ++i) {
        const Circulant a = Circulant::random(f, d, rng);
        OpCounter counter;
        CHECK(square(a, &counter) == mul(a, a));
        CHECK(counter.general_mults == 0);
        CHECK(counter.squarings == 1);
        const Natural m1 = rng.random_bits(40), m2 = rng.random_bits(40);
        CHECK(pow(a, m1 + m2) == mul(pow(a, m1), pow(a, m2)));
      }
    }
  }
}

TEST_CASE("pow operation counts") {
  Entropy rng(4);
  const FieldSpec f = FieldSpec::make(3);
  const Circulant a = Circulant::random(f, 11, rng);
  OpCounter c1;
  CHECK(pow(a, 1, &c1) == a);
  CHECK(c1.general_mults == 0);
  CHECK(c1.field_mults == 0);
  CHECK(c1.squarings == 0);
  CHECK(pow(a, 0).is_identity());
  for (unsigned k = 1; k < 20; ++k) {
    OpCounter c;
    Circulant expect = a;
    for (unsigned i = 0; i < k; ++i) expect = mul(expect, expect);
    CHECK(pow(a, Natural(1) << k, &c) == expect);
    CHECK(c.squarings == k);
    CHECK(c.general_mults == 0);
  }
  OpCounter c7;
  pow(a, 0b1011011, &c7);
  CHECK(c7.squarings == 6);
  CHECK(c7.general_mults == 4);
  CHECK(c7.field_mults == 4 * 121);
}

TEST_CASE("pow matches repeated multiplication") {
  Entropy rng(5);
  const FieldSpec f = FieldSpec::make(3);
  const Circulant a = Circulant::random(f, 7, rng);
  Circulant acc = Circulant::identity(f, 7);
  for (unsigned e = 0; e < 300; ++e) {
    CHECK(pow(a, e) == acc);
    acc = mul(acc, a);
  }
}

TEST_CASE("inverse examples") {
  const FieldSpec f = FieldSpec::make(1);
  CHECK(inverse(circ(f, {0, 1, 0})) == circ(f, {0, 0, 1}));
  CHECK(inverse(Circulant::identity(f, 5)) == Circulant::identity(f, 5));
  CHECK_THROWS_AS(inverse(circ(f, {1, 1, 0})), Error);
  try {
    inverse(circ(f, {1, 1, 0}));
  } catch (const Error& e) {
    CHECK(e.code() == Errc::NotInvertible);
  }
}

TEST_CASE("inverse fails exactly when the expanded matrix is singular") {
  Entropy rng(6);
  for (unsigned n : {1u, 2u, 3u}) {
    const FieldSpec f = FieldSpec::make(n);
    const oracle::SmallField o = small(f);
    for (unsigned d = 2; d <= 13; ++d) {
      for (int i = 0; i < 150; ++i) {
        const Circulant a = Circulant::random(f, d, rng);
        const bool singular = oracle::det(o, oracle::circulant_matrix(raw(a))) == 0;
        bool threw = false;
        try {
          const Circulant inv = inverse(a);
          CHECK(mul(a, inv).is_identity());
        } catch (const Error& e) {
          CHECK(e.code() == Errc::NotInvertible);
          threw = true;
        }
        CHECK_MESSAGE(threw == singular, "n=" << n << " d=" << d);
      }
    }
  }
}

TEST_CASE("matvec examples") {
  const FieldSpec f = FieldSpec::make(3);
  const std::vector<FieldElement> v{fe(1), fe(2), fe(3)};
  CHECK(matvec(Circulant::identity(f, 3), v) == v);
  CHECK(matvec(circ(f, {0, 1, 0}), v) == std::vector<FieldElement>{fe(2), fe(3), fe(1)});

  Entropy rng(7);
  const FieldSpec f8 = FieldSpec::make(8);
  const oracle::SmallField o = small(f8);
  for (int i = 0; i < 200; ++i) {
    const Circulant a = Circulant::random(f8, 11, rng), b = Circulant::random(f8, 11, rng);
    std::vector<FieldElement> w(11);
    for (auto& x : w) x = f8.random(rng);
    CHECK(matvec(mul(a, b), w) == matvec(a, matvec(b, w)));
    // Against the expanded matrix.
    const oracle::Matrix m = oracle::circulant_matrix(raw(a));
    const auto got = matvec(a, w);
    for (std::size_t r = 0; r < 11; ++r) {
      std::uint64_t acc = 0;
      for (std::size_t c = 0; c < 11; ++c) acc ^= o.mul(m[r][c], static_cast<std::uint64_t>(w[c].bits));
      CHECK(static_cast<std::uint64_t>(got[r].bits) == acc);
    }
  }
}

TEST_CASE("row_sum and det examples") {
  const FieldSpec f = FieldSpec::make(1);
  CHECK(row_sum(circ(f, {1, 1, 0})).is_zero());
  CHECK(row_sum(Circulant::identity(f, 7)) == f.one());
  CHECK(det(Circulant::identity(f, 7)) == f.one());
  CHECK(det(circ(f, {0, 1, 0})) == f.one());
}

TEST_CASE("row_sum and det are multiplicative") {
  Entropy rng(8);
  for (unsigned n : {3u, 8u}) {
    const FieldSpec f = FieldSpec::make(n);
    const oracle::SmallField o = small(f);
    for (unsigned d : {3u, 4u, 5u, 11u}) {
      for (int i = 0; i < 100; ++i) {
        const Circulant a = Circulant::random(f, d, rng), b = Circulant::random(f, d, rng);
        CHECK(det(mul(a, b)) == f.mul(det(a), det(b)));
        CHECK(static_cast<std::uint64_t>(det(a).bits) ==
              oracle::det(o, oracle::circulant_matrix(raw(a))));
        const unsigned m = static_cast<unsigned>(rng.next_u64() % 500);
        CHECK(row_sum(pow(a, m)) == f.pow(row_sum(a), m));
      }
    }
  }
}

TEST_CASE("crt split and join") {
  const FieldSpec f8 = FieldSpec::make(8);
  const CrtPair id = crt_split(Circulant::identity(f8, 11));
  CHECK(id.alpha == f8.one());
  CHECK(id.beta.is_one());

  Entropy rng(9);
  for (unsigned n : {1u, 3u, 8u}) {
    const FieldSpec f = FieldSpec::make(n);
    for (unsigned d : {3u, 5u, 11u}) {
      for (int i = 0; i < 1000; ++i) {
        const Circulant a = Circulant::random(f, d, rng), b = Circulant::random(f, d, rng);
        const CrtPair sa = crt_split(a), sb = crt_split(b);
        CHECK(crt_join(sa) == a);
        CHECK(sa.alpha == row_sum(a));
        const CrtPair sab = crt_split(mul(a, b));
        CHECK(sab.beta == poly_mod_mul(sa.beta, sb.beta, sa.ext));
        CHECK(sab.alpha == f.mul(sa.alpha, sb.alpha));
      }
    }
  }
}

TEST_CASE("char_poly_quotient examples") {
  const FieldSpec f = FieldSpec::make(1);
  // (x - 1)^4 = x^4 + 1 over GF(2)
  const CharPolyQuotient id = char_poly_quotient(Circulant::identity(f, 5));
  CHECK(id.g == Poly(f, {fe(1), fe(0), fe(0), fe(0), fe(1)}));
  CHECK_FALSE(id.irreducible);

  const ExtensionSpec ext = ExtensionSpec::cyclotomic(f, 5);
  const Poly tau(f, {fe(1), fe(1), fe(0), fe(0), fe(1)});  // x^4 + x + 1
  // Find β in F_2[x]/Φ that is a root of tau, then lift with α = 1.
  bool found = false;
  for (unsigned bits = 1; bits < 16 && !found; ++bits) {
    std::vector<FieldElement> c;
    for (int i = 0; i < 4; ++i) c.push_back(fe((bits >> i) & 1));
    const Poly beta(f, c);
    Poly value(f);
    Poly power = ext.one();
    for (int i = 0; i <= 4; ++i) {
      value = poly_add(value, poly_scale(power, tau.coeff(static_cast<std::size_t>(i))));
      power = ext.mul(power, beta);
    }
    if (!ext.reduce(value).is_zero()) continue;
    found = true;
    const Circulant a = crt_join({f.one(), beta, ext});
    const CharPolyQuotient g = char_poly_quotient(a);
    CHECK(g.g == tau);
    CHECK(g.irreducible);
  }
  CHECK(found);

  CHECK_THROWS_AS(char_poly_quotient(Circulant::identity(FieldSpec::make(8), 11)), Error);
}

TEST_CASE("char_poly_quotient coefficients lie in the base field") {
  Entropy rng(10);
  const FieldSpec f = FieldSpec::make(3);
  for (int i = 0; i < 100; ++i) {
    const Circulant a = Circulant::random(f, 11, rng);
    const CharPolyQuotient g = char_poly_quotient(a);
    CHECK(g.g.degree() == 10);
    CHECK(g.g.leading() == f.one());
    // χ_A = (x - α) g(x)
    const Poly lin(f, {row_sum(a), f.one()});
    CHECK(poly_mul(lin, g.g) == characteristic_polynomial(a));
    CHECK(g.irreducible == poly_is_irreducible(g.g));
  }
}

TEST_CASE("Hessenberg characteristic polynomial") {
  Entropy rng(11);
  const FieldSpec f = FieldSpec::make(8);
  for (unsigned d : {2u, 3u, 4u, 6u, 11u}) {
    for (int i = 0; i < 20; ++i) {
      const Circulant a = Circulant::random(f, d, rng);
      const Poly chi = characteristic_polynomial(a);
      CHECK(chi.degree() == static_cast<int>(d));
      // Constant term is det(A) (char 2: sign irrelevant).
      CHECK(chi.coeff(0) == det(a));
      // Cayley–Hamilton on the representer.
      Circulant acc(f, std::vector<FieldElement>(d));
      Circulant power = Circulant::identity(f, d);
      for (int k = 0; k <= chi.degree(); ++k) {
        std::vector<FieldElement> scaled;
        for (auto c : power.row()) scaled.push_back(f.mul(c, chi.coeff(static_cast<std::size_t>(k))));
        std::vector<FieldElement> sum;
        for (unsigned j = 0; j < d; ++j) sum.push_back(f.add(acc[j], scaled[j]));
        acc = Circulant(f, sum);
        power = mul(power, a);
      }
      CHECK(acc == Circulant(f, std::vector<FieldElement>(d)));
    }
  }
}

TEST_CASE("matrix rank") {
  const FieldSpec f = FieldSpec::make(1);
  CHECK(matrix_rank(f, expand(circ(f, {1, 1, 0}))) == 2);
  CHECK(matrix_rank(f, expand(Circulant::identity(f, 6))) == 6);
  CHECK(matrix_det(f, expand(circ(f, {1, 1, 0}))).is_zero());
}

}  // TEST_SUITE
