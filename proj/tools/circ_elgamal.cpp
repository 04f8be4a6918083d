// circ-elgamal: command-line front end over the C API.
//
// Exit codes: 0 success, 1 usage, 2 validation failure, 3 attack or
// verification failure. Results go to stdout as key=value lines (or TSV for
// tables); diagnostics go to stderr.

#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "circelg/circelg.h"

namespace {

constexpr int kUsage = 1;
constexpr int kValidation = 2;
constexpr int kAttack = 3;
constexpr std::uint64_t kDefaultBudget = std::uint64_t{1} << 26;

struct Failure {
  int code;
};

void check(circelg_status st, const char* what, int code = kValidation) {
  if (st == CIRCELG_OK) return;
  std::cerr << "error: " << what << ": " << circelg_status_name(st) << ": " << circelg_last_error() << '\n';
  throw Failure{code};
}

/// Owns a malloc'd string from the library.
struct Text {
  char* ptr = nullptr;
  ~Text() { circelg_free(ptr); }
  std::string str() const { return ptr ? ptr : ""; }
};

template <class T, void (*Free)(T*)>
struct Handle {
  T* ptr = nullptr;
  ~Handle() { Free(ptr); }
};

using Params = Handle<circelg_params, circelg_params_free>;
using PrivKey = Handle<circelg_private_key, circelg_private_key_free>;
using PubKey = Handle<circelg_public_key, circelg_public_key_free>;
using CipherText = Handle<circelg_ciphertext, circelg_ciphertext_free>;

std::uint64_t resolve_seed(const std::optional<std::uint64_t>& seed) {
  if (seed) return *seed;
  if (const char* env = std::getenv("CIRC_ELGAMAL_SEED"); env != nullptr && *env != '\0') {
    char* end = nullptr;
    const unsigned long long v = std::strtoull(env, &end, 0);
    if (*end != '\0') {
      std::cerr << "error: CIRC_ELGAMAL_SEED is not an integer\n";
      throw Failure{kUsage};
    }
    return v;
  }
  std::random_device rd;
  return (std::uint64_t{rd()} << 32) ^ rd();
}

std::vector<std::uint8_t> read_bytes(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    std::cerr << "error: cannot open " << path << '\n';
    throw Failure{kValidation};
  }
  return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

void write_bytes(const std::string& path, const std::uint8_t* data, std::size_t len) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  out.write(reinterpret_cast<const char*>(data), static_cast<std::streamsize>(len));
  if (!out) {
    std::cerr << "error: cannot write " << path << '\n';
    throw Failure{kValidation};
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"ElGamal over special circulant matrices with q = 2^n"};
  app.require_subcommand(1);

  std::optional<std::uint64_t> seed;
  std::uint64_t budget = kDefaultBudget;
  auto add_seed = [&](CLI::App* sub) {
    sub->add_option("--seed", seed, "64-bit seed (falls back to CIRC_ELGAMAL_SEED)");
  };
  auto add_budget = [&](CLI::App* sub) {
    sub->add_option("--factor-budget", budget, "Pollard rho iteration budget")->check(CLI::PositiveNumber);
  };

  // params
  auto* params = app.add_subcommand("params", "generate or check parameter sets");
  params->require_subcommand(1);
  unsigned gen_n = 0, gen_d = 0;
  std::string gen_out;
  auto* pgen = params->add_subcommand("gen", "run the construction and write a parameter file");
  pgen->add_option("--n", gen_n, "field degree")->required();
  pgen->add_option("--d", gen_d, "matrix size (odd prime)")->required();
  pgen->add_option("--out", gen_out, "output file")->required();
  add_seed(pgen);
  add_budget(pgen);
  std::string check_file;
  auto* pcheck = params->add_subcommand("check", "report the five conditions");
  pcheck->add_option("file", check_file, "parameter file")->required();

  // keygen
  std::string kg_params, kg_priv, kg_pub;
  auto* kg = app.add_subcommand("keygen", "draw a key pair");
  kg->add_option("--params", kg_params)->required();
  kg->add_option("--out-priv", kg_priv)->required();
  kg->add_option("--out-pub", kg_pub)->required();
  add_seed(kg);
  add_budget(kg);

  // encrypt / decrypt
  std::string enc_pub, enc_hex, enc_file, enc_out;
  auto* enc = app.add_subcommand("encrypt", "encrypt one block or a file");
  enc->add_option("--pub", enc_pub)->required();
  auto* in_hex = enc->add_option("--in", enc_hex, "one block: d comma-separated hex elements");
  auto* in_file = enc->add_option("--infile", enc_file, "file to encrypt");
  in_hex->excludes(in_file);
  enc->add_option("--out", enc_out)->required();
  add_seed(enc);

  std::string dec_priv, dec_in, dec_out;
  auto* dec = app.add_subcommand("decrypt", "decrypt a ciphertext file");
  dec->add_option("--priv", dec_priv)->required();
  dec->add_option("--in", dec_in)->required();
  dec->add_option("--out", dec_out)->required();

  // attack
  auto* attack = app.add_subcommand("attack", "discrete-logarithm attacks");
  attack->require_subcommand(1);
  std::string atk_params, atk_pub;
  auto* dlp = attack->add_subcommand("dlp", "recover the private exponent (small parameters)");
  dlp->add_option("--params", atk_params)->required();
  dlp->add_option("--pub", atk_pub)->required();
  add_budget(dlp);

  // security
  auto* security = app.add_subcommand("security", "security estimates and tables");
  security->require_subcommand(1);
  unsigned est_n = 0, est_d = 0;
  auto* est = security->add_subcommand("estimate", "estimate one (n, d) cell");
  est->add_option("--n", est_n)->required();
  est->add_option("--d", est_d)->required();
  add_budget(est);
  int which = 1;
  std::optional<unsigned> n_lo, n_hi, d_lo, d_hi;
  std::string reference;
  auto* tables = security->add_subcommand("tables", "primitivity (1) or security (2) table as TSV");
  tables->add_option("--which", which)->required()->check(CLI::IsMember({1, 2}));
  tables->add_option("--n-lo", n_lo);
  tables->add_option("--n-hi", n_hi);
  tables->add_option("--d-lo", d_lo);
  tables->add_option("--d-hi", d_hi);
  tables->add_option("--reference", reference, "TSV fixture to diff against instead of printing the table");
  add_budget(tables);
  auto* verify = security->add_subcommand("verify-paper", "check the six published order primes");

  // bench
  auto* bench = app.add_subcommand("bench", "operation-count benchmarks");
  bench->require_subcommand(1);
  unsigned b_n = 0, b_d = 0, b_bits = 0, b_trials = 0;
  auto* bpow = bench->add_subcommand("pow", "mean multiplication counts of A^m");
  bpow->add_option("--n", b_n)->required();
  bpow->add_option("--d", b_d)->required();
  bpow->add_option("--bits", b_bits)->required();
  bpow->add_option("--trials", b_trials)->required();
  add_seed(bpow);

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsage;
  }

  try {
    if (pgen->parsed()) {
      const std::uint64_t s = resolve_seed(seed);
      Params p;
      check(circelg_params_generate(gen_n, gen_d, s, budget, &p.ptr), "params gen");
      check(circelg_params_write(p.ptr, gen_out.c_str()), "write params");
      Text t;
      check(circelg_params_describe(p.ptr, &t.ptr), "describe params");
      std::cout << "seed=" << s << '\n' << t.str();
    } else if (pcheck->parsed()) {
      Params p;
      check(circelg_params_read(check_file.c_str(), &p.ptr), "read params");
      circelg_conditions r{};
      check(circelg_params_check(p.ptr, &r), "check params");
      std::cout << "det_one=" << r.det_one << '\n'
                << "row_sum_one=" << r.row_sum_one << '\n'
                << "d_prime=" << r.d_prime << '\n'
                << "quotient_irreducible=" << r.quotient_irreducible << '\n'
                << "q_primitive=" << r.q_primitive << '\n'
                << "all=" << r.all << '\n';
      return r.all ? 0 : kValidation;
    } else if (kg->parsed()) {
      const std::uint64_t s = resolve_seed(seed);
      Params p;
      check(circelg_params_read(kg_params.c_str(), &p.ptr), "read params");
      PrivKey priv;
      PubKey pub;
      check(circelg_keygen(p.ptr, s, budget, &priv.ptr, &pub.ptr), "keygen");
      check(circelg_private_key_write(priv.ptr, kg_priv.c_str()), "write private key");
      check(circelg_public_key_write(pub.ptr, kg_pub.c_str()), "write public key");
      Text order;
      int exact = 0;
      check(circelg_params_order(p.ptr, budget, &order.ptr, &exact), "order");
      std::cout << "seed=" << s << '\n' << "order=" << order.str() << '\n' << "order_exact=" << exact << '\n';
    } else if (enc->parsed()) {
      if (enc_hex.empty() == enc_file.empty()) {
        std::cerr << "error: encrypt needs exactly one of --in or --infile\n";
        return kUsage;
      }
      const std::uint64_t s = resolve_seed(seed);
      PubKey pub;
      check(circelg_public_key_read(enc_pub.c_str(), &pub.ptr), "read public key");
      CipherText ct;
      if (!enc_hex.empty()) {
        check(circelg_encrypt_block(pub.ptr, enc_hex.c_str(), s, &ct.ptr), "encrypt");
      } else {
        const auto data = read_bytes(enc_file);
        check(circelg_encrypt_bytes(pub.ptr, data.data(), data.size(), s, &ct.ptr), "encrypt");
      }
      check(circelg_ciphertext_write(ct.ptr, enc_out.c_str()), "write ciphertext");
      std::cout << "seed=" << s << '\n';
    } else if (dec->parsed()) {
      PrivKey priv;
      check(circelg_private_key_read(dec_priv.c_str(), &priv.ptr), "read private key");
      CipherText ct;
      check(circelg_ciphertext_read(dec_in.c_str(), &ct.ptr), "read ciphertext");
      std::uint8_t* data = nullptr;
      std::size_t len = 0;
      check(circelg_decrypt(priv.ptr, ct.ptr, &data, &len), "decrypt");
      struct Release {
        std::uint8_t* p;
        ~Release() { circelg_free(p); }
      } release{data};
      write_bytes(dec_out, data, len);
      std::cout << "bytes=" << len << '\n';
    } else if (dlp->parsed()) {
      Params p;
      check(circelg_params_read(atk_params.c_str(), &p.ptr), "read params");
      PubKey pub;
      check(circelg_public_key_read(atk_pub.c_str(), &pub.ptr), "read public key");
      Text m;
      check(circelg_attack_dlp(p.ptr, pub.ptr, budget, &m.ptr), "attack dlp", kAttack);
      std::cout << "m=" << m.str() << '\n';
    } else if (est->parsed()) {
      Text t;
      check(circelg_security_estimate(est_n, est_d, budget, &t.ptr), "security estimate");
      std::cout << t.str();
    } else if (tables->parsed()) {
      const bool first = which == 1;
      const unsigned nl = n_lo.value_or(first ? 40 : 45), nh = n_hi.value_or(first ? 100 : 90);
      const unsigned dl = d_lo.value_or(first ? 11 : 10), dh = d_hi.value_or(first ? 50 : 20);
      Text t;
      if (!reference.empty()) {
        std::size_t flagged = 0;
        check(circelg_security_compare(which, reference.c_str(), nl, nh, dl, dh, &t.ptr, &flagged),
              "compare table");
        std::cout << t.str() << "discrepancies=" << flagged << '\n';
      } else {
        check(circelg_security_table(which, nl, nh, dl, dh, budget, &t.ptr), "security tables");
        std::cout << t.str();
      }
    } else if (verify->parsed()) {
      Text t;
      int ok = 0;
      check(circelg_verify_quoted_primes(&t.ptr, &ok), "verify primes", kAttack);
      std::cout << t.str();
      return ok ? 0 : kAttack;
    } else if (bpow->parsed()) {
      const std::uint64_t s = resolve_seed(seed);
      circelg_bench_result r{};
      check(circelg_bench_pow(b_n, b_d, b_bits, b_trials, s, &r), "bench pow");
      std::printf("seed=%llu\nmean_general_mults=%.4f\nmean_field_mults=%.4f\nmean_squarings=%.4f\n"
                  "predicted_field_mults=%.4f\nratio=%.6f\nsquarings_exact=%d\n",
                  static_cast<unsigned long long>(s), r.mean_general_mults, r.mean_field_mults,
                  r.mean_squarings, r.predicted_field_mults, r.mean_field_mults / r.predicted_field_mults,
                  r.squarings_exact);
    }
  } catch (const Failure& f) {
    return f.code;
  }
  return 0;
}
