#include "circelg/circulant.hpp"

#include "circelg/errors.hpp"

namespace circelg {
namespace {

void require_compatible(const Circulant& a, const Circulant& b) {
  if (a.size() != b.size()) throw Error(Errc::DimensionMismatch, "circulants of different sizes");
  if (!(a.field() == b.field())) throw Error(Errc::SpecMismatch, "circulants over different fields");
}

void require_odd(unsigned d) {
  if (d % 2 == 0) throw Error(Errc::EvenD, "operation needs odd d");
}

/// x^d - 1 (= x^d + 1 in characteristic 2).
Poly x_pow_d_minus_one(const FieldSpec& field, unsigned d) {
  std::vector<FieldElement> c(d + 1);
  c[0] = field.one();
  c[d] = field.one();
  return Poly(field, std::move(c));
}

}  // namespace

Circulant::Circulant(FieldSpec field, std::vector<FieldElement> first_row)
    : field_(field), row_(std::move(first_row)) {
  if (row_.empty()) throw Error(Errc::InvalidArgument, "circulant needs d >= 1");
  for (auto c : row_) {
    if (!field_.contains(c)) throw Error(Errc::InvalidArgument, "entry outside the field");
  }
}

Circulant Circulant::identity(const FieldSpec& field, unsigned d) {
  std::vector<FieldElement> row(d);
  if (d > 0) row[0] = field.one();
  return Circulant(field, std::move(row));
}

Circulant Circulant::from_representer(const Poly& p, unsigned d) {
  const auto& F = p.field();
  std::vector<FieldElement> row(d);
  for (std::size_t i = 0; i < p.coeffs().size(); ++i) row[i % d] = F.add(row[i % d], p.coeffs()[i]);
  return Circulant(F, std::move(row));
}

Circulant Circulant::random(const FieldSpec& field, unsigned d, Entropy& rng) {
  std::vector<FieldElement> row(d);
  for (auto& c : row) c = field.random(rng);
  return Circulant(field, std::move(row));
}

bool Circulant::is_identity() const noexcept {
  if (!(row_[0] == field_.one())) return false;
  for (std::size_t i = 1; i < row_.size(); ++i) {
    if (!row_[i].is_zero()) return false;
  }
  return true;
}

Matrix expand(const Circulant& a) {
  const unsigned d = a.size();
  Matrix m(d, std::vector<FieldElement>(d));
  for (unsigned k = 0; k < d; ++k) {
    for (unsigned j = 0; j < d; ++j) m[k][j] = a[(j + d - k) % d];
  }
  return m;
}

Circulant mul(const Circulant& a, const Circulant& b, OpCounter* counter) {
  require_compatible(a, b);
  const auto& F = a.field();
  const unsigned d = a.size();
  std::vector<FieldElement> c(d);
  for (unsigned i = 0; i < d; ++i) {
    for (unsigned j = 0; j < d; ++j) {
      const unsigned k = i + j < d ? i + j : i + j - d;
      c[k] = F.add(c[k], F.mul(a[i], b[j]));
    }
  }
  if (counter != nullptr) {
    counter->general_mults += 1;
    counter->field_mults += std::uint64_t{d} * d;
  }
  return Circulant(F, std::move(c));
}

Circulant square(const Circulant& a, OpCounter* counter) {
  const unsigned d = a.size();
  require_odd(d);
  const auto& F = a.field();
  std::vector<FieldElement> c(d);
  for (unsigned i = 0; i < d; ++i) c[(2 * i) % d] = F.square(a[i]);
  if (counter != nullptr) counter->squarings += 1;
  return Circulant(F, std::move(c));
}

Circulant pow(const Circulant& a, const Natural& m, OpCounter* counter) {
  if (m < 0) throw Error(Errc::InvalidArgument, "negative exponent");
  if (m == 0) return Circulant::identity(a.field(), a.size());
  const bool odd = a.size() % 2 == 1;
  Circulant r = a;
  for (int i = static_cast<int>(bit_length(m)) - 2; i >= 0; --i) {
    r = odd ? square(r, counter) : mul(r, r, counter);
    if (mpz_tstbit(m.get_mpz_t(), static_cast<mp_bitcnt_t>(i))) r = mul(r, a, counter);
  }
  return r;
}

Circulant inverse(const Circulant& a) {
  const Poly f = a.representer();
  if (f.is_zero()) throw Error(Errc::NotInvertible, "zero circulant");
  const Poly m = x_pow_d_minus_one(a.field(), a.size());
  const auto egcd = poly_ext_gcd(f, m);
  if (!egcd.g.is_one()) {
    throw Error(Errc::NotInvertible, "representer shares a factor with x^d - 1");
  }
  return Circulant::from_representer(egcd.u, a.size());
}

std::vector<FieldElement> matvec(const Circulant& a, std::span<const FieldElement> v,
                                 OpCounter* counter) {
  const unsigned d = a.size();
  if (v.size() != d) throw Error(Errc::DimensionMismatch, "vector length differs from d");
  const auto& F = a.field();
  std::vector<FieldElement> w(d);
  for (unsigned k = 0; k < d; ++k) {
    FieldElement acc{};
    for (unsigned j = 0; j < d; ++j) acc = F.add(acc, F.mul(a[(j + d - k) % d], v[j]));
    w[k] = acc;
  }
  if (counter != nullptr) counter->field_mults += std::uint64_t{d} * d;
  return w;
}

FieldElement row_sum(const Circulant& a) {
  FieldElement s{};
  for (auto c : a.row()) s = a.field().add(s, c);
  return s;
}

FieldElement det(const Circulant& a) { return matrix_det(a.field(), expand(a)); }

FieldElement matrix_det(const FieldSpec& field, Matrix m) {
  const std::size_t n = m.size();
  FieldElement result = field.one();
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t pivot = col;
    while (pivot < n && m[pivot][col].is_zero()) ++pivot;
    if (pivot == n) return field.zero();
    // Row swaps flip the sign, which is invisible in characteristic 2.
    std::swap(m[pivot], m[col]);
    const FieldElement p = m[col][col];
    result = field.mul(result, p);
    const FieldElement p_inv = field.inv(p);
    for (std::size_t r = col + 1; r < n; ++r) {
      if (m[r][col].is_zero()) continue;
      const FieldElement factor = field.mul(m[r][col], p_inv);
      for (std::size_t c = col; c < n; ++c) m[r][c] = field.add(m[r][c], field.mul(factor, m[col][c]));
    }
  }
  return result;
}

std::size_t matrix_rank(const FieldSpec& field, Matrix m) {
  const std::size_t rows = m.size();
  if (rows == 0) return 0;
  const std::size_t cols = m[0].size();
  std::size_t rank = 0;
  for (std::size_t col = 0; col < cols && rank < rows; ++col) {
    std::size_t pivot = rank;
    while (pivot < rows && m[pivot][col].is_zero()) ++pivot;
    if (pivot == rows) continue;
    std::swap(m[pivot], m[rank]);
    const FieldElement p_inv = field.inv(m[rank][col]);
    for (std::size_t r = rank + 1; r < rows; ++r) {
      if (m[r][col].is_zero()) continue;
      const FieldElement factor = field.mul(m[r][col], p_inv);
      for (std::size_t c = col; c < cols; ++c) m[r][c] = field.add(m[r][c], field.mul(factor, m[rank][c]));
    }
    ++rank;
  }
  return rank;
}

Poly matrix_charpoly(const FieldSpec& F, Matrix h) {
  const std::size_t n = h.size();
  // Reduce to upper Hessenberg form by elementary similarity transforms.
  for (std::size_t c = 0; c + 2 < n; ++c) {
    std::size_t p = c + 1;
    while (p < n && h[p][c].is_zero()) ++p;
    if (p == n) continue;
    if (p != c + 1) {
      std::swap(h[p], h[c + 1]);
      for (auto& row : h) std::swap(row[p], row[c + 1]);
    }
    const FieldElement pivot_inv = F.inv(h[c + 1][c]);
    for (std::size_t r = c + 2; r < n; ++r) {
      if (h[r][c].is_zero()) continue;
      const FieldElement u = F.mul(h[r][c], pivot_inv);
      for (std::size_t k = 0; k < n; ++k) h[r][k] = F.add(h[r][k], F.mul(u, h[c + 1][k]));
      for (std::size_t k = 0; k < n; ++k) h[k][c + 1] = F.add(h[k][c + 1], F.mul(u, h[k][r]));
    }
  }
  // p_k = (x - h[k-1][k-1]) p_{k-1} - sum_i h[k-1-i][k-1] (prod_{j=k-i}^{k-1} h[j][j-1]) p_{k-1-i}
  std::vector<Poly> p;
  p.reserve(n + 1);
  p.push_back(Poly::constant(F, F.one()));
  const Poly x = Poly::x(F);
  for (std::size_t k = 1; k <= n; ++k) {
    Poly next = poly_mul(poly_add(x, Poly::constant(F, h[k - 1][k - 1])), p[k - 1]);
    FieldElement subdiag_product = F.one();
    for (std::size_t i = 1; i < k; ++i) {
      subdiag_product = F.mul(subdiag_product, h[k - i][k - i - 1]);
      const FieldElement coef = F.mul(h[k - 1 - i][k - 1], subdiag_product);
      if (!coef.is_zero()) next = poly_add(next, poly_scale(p[k - 1 - i], coef));
    }
    p.push_back(std::move(next));
  }
  return p[n];
}

Poly characteristic_polynomial(const Circulant& a) { return matrix_charpoly(a.field(), expand(a)); }

CrtPair crt_split(const Circulant& a) {
  const unsigned d = a.size();
  require_odd(d);
  if (d < 3) throw Error(Errc::InvalidArgument, "CRT split needs d >= 3");
  ExtensionSpec ext = ExtensionSpec::cyclotomic(a.field(), d);
  Poly beta = ext.reduce(a.representer());
  return {row_sum(a), std::move(beta), std::move(ext)};
}

Circulant crt_join(const CrtPair& pair) {
  const unsigned d = pair.ext.d();
  require_odd(d);
  const FieldSpec& F = pair.ext.base();
  const Poly x_minus_one = Poly(F, {F.one(), F.one()});
  const Poly psi = poly_crt(Poly::constant(F, pair.alpha), x_minus_one, pair.ext.reduce(pair.beta),
                            pair.ext.modulus());
  return Circulant::from_representer(psi, d);
}

CharPolyQuotient char_poly_quotient(const Circulant& a) {
  const CrtPair split = crt_split(a);
  const ExtensionSpec& ext = split.ext;
  if (!ext.is_field()) throw Error(Errc::PhiReducible, "Φ(x) is reducible over F_q");
  const FieldSpec& F = a.field();
  const unsigned k = ext.degree();

  std::vector<Poly> conjugates{split.beta};
  for (unsigned i = 1; i < k; ++i) conjugates.push_back(ext.frobenius(conjugates.back()));
  bool distinct = true;
  for (unsigned i = 0; i < k && distinct; ++i) {
    for (unsigned j = i + 1; j < k; ++j) {
      if (conjugates[i] == conjugates[j]) {
        distinct = false;
        break;
      }
    }
  }

  // Product of (x + c) with coefficients in the extension.
  std::vector<Poly> coeffs{ext.one()};
  for (const Poly& c : conjugates) {
    std::vector<Poly> next(coeffs.size() + 1, Poly(F));
    for (std::size_t j = 0; j < coeffs.size(); ++j) {
      next[j + 1] = poly_add(next[j + 1], coeffs[j]);
      next[j] = poly_add(next[j], ext.mul(coeffs[j], c));
    }
    coeffs = std::move(next);
  }
  std::vector<FieldElement> base_coeffs;
  base_coeffs.reserve(coeffs.size());
  for (const Poly& c : coeffs) {
    if (c.degree() > 0) {
      throw Error(Errc::InvalidArgument, "conjugate product has a coefficient outside F_q");
    }
    base_coeffs.push_back(c.coeff(0));
  }
  return {Poly(F, std::move(base_coeffs)), distinct};
}

}  // namespace circelg
