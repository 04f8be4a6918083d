#include "circelg/security.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <mutex>
#include <set>
#include <sstream>
#include <thread>

#include "circelg/errors.hpp"

namespace circelg {
namespace {

std::vector<unsigned> primes_between(unsigned lo, unsigned hi) {
  std::vector<unsigned> out;
  for (unsigned d = std::max(lo, 2u); d <= hi; ++d) {
    if (is_prime(Natural(d))) out.push_back(d);
  }
  return out;
}

std::string format_bits(double bits) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", bits);
  return buf;
}

std::ifstream open_fixture(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(Errc::IoError, "cannot open " + path);
  std::string header;
  std::getline(in, header);
  return in;
}

struct QuotedPrime {
  unsigned n, d;
  const char* digits;
  double log2;
  double tolerance;
  bool lower_bound;
};

constexpr QuotedPrime kQuotedPrimes[] = {
    {89, 13, "7993364465170792998716337691033251350895453313", 152.5, 0.1, false},
    {39, 29, "3194753987813988499397428643895659569", 120.0, 0.5, false},
    {45, 29, "15169173997557864184867895400813639018421", 120.0, 0.0, true},
    {97, 11, "5099684339280531431303325210885366883096347229374376914106957559915561", 231.0, 0.5,
     false},
    {43, 29, "15971330269144846039246876225999124906492824909441141855981389550399714935349", 253.0,
     0.5, false},
    {29, 37, "328017025014102923449988663752960080886511412965881", 167.0, 0.5, false},
};

}  // namespace

std::uint64_t index_calculus_bits(unsigned n, unsigned d) {
  if (d < 1) throw Error(Errc::InvalidArgument, "d must be positive");
  return std::uint64_t{n} * (d - 1);
}

double generic_bits(const Natural& p) {
  if (p < 2) throw Error(Errc::InvalidArgument, "p must be at least 2");
  return log2_of(p) / 2.0;
}

bool regime_check(unsigned n, unsigned d) { return std::uint64_t{d} > std::uint64_t{n} * n; }

bool cell_primitive(unsigned n, unsigned d) {
  if (d < 3 || !is_prime(Natural(d))) return false;
  return is_primitive_mod(Natural(1) << n, Natural(d));
}

SecurityReport estimate(unsigned n, unsigned d, std::uint64_t budget) {
  if (n < 1 || d < 3) throw Error(Errc::InvalidArgument, "need n >= 1 and d >= 3");
  SecurityReport r;
  r.n = n;
  r.d = d;
  r.primitive = cell_primitive(n, d);
  r.index_calculus_bits = index_calculus_bits(n, d);
  r.regime_exponential = regime_check(n, d);
  const Factorization f = factor_two_power_minus_one(static_cast<unsigned>(r.index_calculus_bits), budget);
  r.largest_prime = f.largest_prime();
  r.largest_prime_exact = f.complete;
  r.generic_bits = r.largest_prime >= 2 ? generic_bits(r.largest_prime) : 0.0;
  return r;
}

std::vector<Cell> table1_generate(unsigned n_lo, unsigned n_hi, unsigned d_lo, unsigned d_hi) {
  if (n_lo > n_hi || d_lo > d_hi || n_lo < 1) throw Error(Errc::InvalidArgument, "empty range");
  const auto ds = primes_between(d_lo, d_hi);
  std::vector<Cell> out;
  for (unsigned n = n_lo; n <= n_hi; ++n) {
    for (unsigned d : ds) {
      if (cell_primitive(n, d)) out.emplace_back(n, d);
    }
  }
  return out;
}

std::vector<SecurityReport> table2_generate(unsigned n_lo, unsigned n_hi, unsigned d_lo, unsigned d_hi,
                                            std::uint64_t budget, unsigned threads) {
  const std::vector<Cell> cells = table1_generate(n_lo, n_hi, d_lo, d_hi);
  std::vector<SecurityReport> out(cells.size());
  if (threads == 0) threads = std::max(1u, std::thread::hardware_concurrency());
  threads = std::min<unsigned>(threads, static_cast<unsigned>(std::max<std::size_t>(cells.size(), 1)));

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&] {
    for (std::size_t i = next++; i < cells.size(); i = next++) {
      try {
        out[i] = estimate(cells[i].first, cells[i].second, budget);
      } catch (...) {
        std::lock_guard lock(failure_mutex);
        if (!failure) failure = std::current_exception();
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned t = 1; t < threads; ++t) pool.emplace_back(work);
  work();
  for (auto& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);
  return out;
}

std::string tsv_row(const SecurityReport& r) {
  std::ostringstream os;
  os << r.n << '\t' << r.d << '\t' << (r.primitive ? 1 : 0) << '\t' << r.index_calculus_bits << '\t'
     << r.largest_prime.get_str() << '\t' << (r.largest_prime_exact ? 1 : 0) << '\t'
     << format_bits(r.generic_bits);
  return os.str();
}

std::string tsv_row(const Cell& cell) {
  std::ostringstream os;
  os << cell.first << '\t' << cell.second << '\t' << (cell_primitive(cell.first, cell.second) ? 1 : 0)
     << '\t' << index_calculus_bits(cell.first, cell.second) << "\t-\t-\t-";
  return os.str();
}

std::vector<Cell> read_table1_reference(const std::string& path) {
  std::ifstream in = open_fixture(path);
  std::vector<Cell> out;
  for (std::string line; std::getline(in, line);) {
    if (line.empty()) continue;
    std::istringstream is(line);
    Cell c;
    if (!(is >> c.first >> c.second)) throw Error(Errc::ParseError, "bad row in " + path + ": " + line);
    out.push_back(c);
  }
  return out;
}

std::vector<ReferenceRow2> read_table2_reference(const std::string& path) {
  std::ifstream in = open_fixture(path);
  std::vector<ReferenceRow2> out;
  for (std::string line; std::getline(in, line);) {
    if (line.empty()) continue;
    std::istringstream is(line);
    ReferenceRow2 r;
    if (!(is >> r.n >> r.d >> r.log2_largest_prime >> r.index_bits)) {
      throw Error(Errc::ParseError, "bad row in " + path + ": " + line);
    }
    out.push_back(r);
  }
  return out;
}

Table1Comparison compare_table1(const std::vector<Cell>& reference, unsigned d_lo, unsigned d_hi) {
  Table1Comparison cmp;
  const std::set<Cell> listed(reference.begin(), reference.end());
  std::set<unsigned> ns;
  for (const auto& c : reference) {
    ns.insert(c.first);
    if (!cell_primitive(c.first, c.second)) cmp.listed_not_primitive.push_back(c);
  }
  const auto ds = primes_between(d_lo, d_hi);
  for (unsigned n : ns) {
    for (unsigned d : ds) {
      if (cell_primitive(n, d) && !listed.contains({n, d})) cmp.primitive_not_listed.emplace_back(n, d);
    }
  }
  return cmp;
}

Table2Comparison compare_table2(const std::vector<ReferenceRow2>& reference, unsigned n_lo, unsigned n_hi,
                                unsigned d_lo, unsigned d_hi) {
  Table2Comparison cmp;
  cmp.rows = reference.size();
  std::set<Cell> listed;
  for (const auto& r : reference) {
    listed.insert({r.n, r.d});
    if (index_calculus_bits(r.n, r.d) != r.index_bits) cmp.index_bits_mismatch.push_back(r);
    if (!cell_primitive(r.n, r.d)) cmp.not_primitive.push_back(r);
  }
  for (const auto& c : table1_generate(n_lo, n_hi, d_lo, d_hi)) {
    if (!listed.contains(c)) cmp.primitive_not_listed.push_back(c);
  }
  return cmp;
}

std::vector<PrimeCheck> verify_quoted_primes() {
  std::vector<PrimeCheck> out;
  Entropy rng(0x7072696d6573ULL);
  for (const auto& q : kQuotedPrimes) {
    PrimeCheck c;
    c.n = q.n;
    c.d = q.d;
    c.p = Natural(q.digits);
    c.quoted_log2 = q.log2;
    c.tolerance = q.tolerance;
    c.lower_bound = q.lower_bound;
    try {
      c.prime = is_prime(c.p, rng);
      c.divides = mod_pow(2, Natural(std::uint64_t{q.n} * (q.d - 1)), c.p) == 1;
      c.log2 = log2_of(c.p);
      c.log2_ok = q.lower_bound ? c.log2 > q.log2 : std::fabs(c.log2 - q.log2) <= q.tolerance;
      c.q_primitive = cell_primitive(q.n, q.d);
    } catch (const Error&) {
      // leave the remaining flags false
    }
    c.ok = c.prime && c.divides && c.log2_ok && c.q_primitive;
    out.push_back(std::move(c));
  }
  return out;
}

}  // namespace circelg
