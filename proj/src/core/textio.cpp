#include "circelg/textio.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <map>
#include <sstream>

#include "circelg/errors.hpp"

namespace circelg {
namespace {

std::string_view trim(std::string_view s) {
  const auto is_space = [](char c) { return c == ' ' || c == '\t' || c == '\r'; };
  while (!s.empty() && is_space(s.front())) s.remove_prefix(1);
  while (!s.empty() && is_space(s.back())) s.remove_suffix(1);
  return s;
}

template <class T>
T parse_number(std::string_view text, std::string_view what) {
  T value{};
  const auto [ptr, ec] = std::from_chars(text.data(), text.data() + text.size(), value);
  if (ec != std::errc{} || ptr != text.data() + text.size()) {
    throw Error(Errc::ParseError, std::string(what) + ": not a number: '" + std::string(text) + "'");
  }
  return value;
}

/// Splits entries into keys that must appear once and keys that may repeat.
class Sections {
 public:
  Sections(const KeyValues& kv, std::initializer_list<std::string_view> once,
           std::initializer_list<std::string_view> repeatable = {}) {
    for (const auto& [key, value] : kv.entries) {
      if (std::find(once.begin(), once.end(), key) != once.end()) {
        if (!single_.emplace(key, value).second) throw Error(Errc::ParseError, "duplicate key '" + key + "'");
      } else if (std::find(repeatable.begin(), repeatable.end(), key) != repeatable.end()) {
        repeated_.emplace_back(key, value);
      } else {
        throw Error(Errc::ParseError, "unknown key '" + key + "'");
      }
    }
  }

  const std::string& get(const std::string& key) const {
    auto it = single_.find(key);
    if (it == single_.end()) throw Error(Errc::ParseError, "missing key '" + key + "'");
    return it->second;
  }
  const std::vector<std::pair<std::string, std::string>>& repeated() const { return repeated_; }

 private:
  std::map<std::string, std::string> single_;
  std::vector<std::pair<std::string, std::string>> repeated_;
};

struct Header {
  FieldSpec field;
  unsigned d;
};

Header read_header(const Sections& s) {
  if (s.get("version") != "1") throw Error(Errc::ParseError, "unsupported version " + s.get("version"));
  const auto n = parse_number<unsigned>(s.get("n"), "n");
  const auto d = parse_number<unsigned>(s.get("d"), "d");
  if (d < 1) throw Error(Errc::ParseError, "d must be positive");
  return {parse_field_poly(n, s.get("field_poly")), d};
}

void write_header(std::ostringstream& os, const FieldSpec& field, unsigned d) {
  os << "version = 1\n"
     << "n = " << field.degree() << '\n'
     << "d = " << d << '\n'
     << "field_poly = " << format_field_poly(field) << '\n';
}

Circulant parse_circulant(const Header& h, std::string_view text) {
  return Circulant(h.field, parse_row(h.field, text, h.d));
}

}  // namespace

KeyValues parse_key_values(std::string_view text) {
  KeyValues kv;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const std::size_t end = text.find('\n');
    std::string_view line = trim(text.substr(0, end));
    text.remove_prefix(end == std::string_view::npos ? text.size() : end + 1);
    ++line_no;
    if (line.empty() || line.front() == '#') continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string_view::npos) {
      throw Error(Errc::ParseError, "line " + std::to_string(line_no) + ": expected 'key = value'");
    }
    const std::string_view key = trim(line.substr(0, eq));
    if (key.empty()) throw Error(Errc::ParseError, "line " + std::to_string(line_no) + ": empty key");
    kv.entries.emplace_back(std::string(key), std::string(trim(line.substr(eq + 1))));
  }
  return kv;
}

std::string format_row(std::span<const FieldElement> row) {
  std::string out;
  for (std::size_t i = 0; i < row.size(); ++i) {
    if (i > 0) out += ',';
    out += to_hex(row[i]);
  }
  return out;
}

Block parse_row(const FieldSpec& field, std::string_view text, unsigned d) {
  Block out;
  while (true) {
    const std::size_t comma = text.find(',');
    out.push_back(parse_field_hex(field, trim(text.substr(0, comma))));
    if (comma == std::string_view::npos) break;
    text.remove_prefix(comma + 1);
  }
  if (out.size() != d) {
    throw Error(Errc::ParseError, "expected " + std::to_string(d) + " entries, found " +
                                      std::to_string(out.size()));
  }
  return out;
}

std::string format_field_poly(const FieldSpec& field) { return to_hex(field.modulus()); }

FieldSpec parse_field_poly(unsigned n, std::string_view text) {
  if (n < 1 || n > kMaxFieldDegree) throw Error(Errc::ParseError, "n must be in [1, 128]");
  const Natural full = parse_natural_hex(trim(text));
  if (bit_length(full) != n + 1) {
    throw Error(Errc::ParseError, "field_poly degree does not match n = " + std::to_string(n));
  }
  const Natural low_part = full - (Natural(1) << n);
  std::uint64_t limbs[2] = {0, 0};
  mpz_export(limbs, nullptr, -1, sizeof(std::uint64_t), 0, 0, low_part.get_mpz_t());
  const Word low = (Word{limbs[1]} << 64) | limbs[0];
  try {
    return FieldSpec::with_modulus(n, low);
  } catch (const Error& e) {
    throw Error(Errc::ParseError, std::string("field_poly: ") + e.what());
  }
}

std::string format_params(const Circulant& a) {
  std::ostringstream os;
  write_header(os, a.field(), a.size());
  os << "A = " << format_row(a.row()) << '\n';
  return os.str();
}

Circulant parse_params(std::string_view text) {
  const Sections s(parse_key_values(text), {"version", "n", "d", "field_poly", "A"});
  return parse_circulant(read_header(s), s.get("A"));
}

std::string format_private_key(const PrivateKey& key) {
  std::ostringstream os;
  write_header(os, key.A.field(), key.A.size());
  os << "A = " << format_row(key.A.row()) << '\n' << "m = " << key.m.get_str() << '\n';
  return os.str();
}

PrivateKey parse_private_key(std::string_view text) {
  const Sections s(parse_key_values(text), {"version", "n", "d", "field_poly", "A", "m"});
  const Header h = read_header(s);
  Natural m;
  if (s.get("m").empty() || m.set_str(s.get("m"), 10) != 0 || m < 0) {
    throw Error(Errc::ParseError, "m must be a non-negative decimal integer");
  }
  return {std::move(m), parse_circulant(h, s.get("A"))};
}

std::string format_public_key(const PublicKey& key) {
  std::ostringstream os;
  write_header(os, key.A.field(), key.A.size());
  os << "A = " << format_row(key.A.row()) << '\n' << "Am = " << format_row(key.Am.row()) << '\n';
  return os.str();
}

PublicKey parse_public_key(std::string_view text) {
  const Sections s(parse_key_values(text), {"version", "n", "d", "field_poly", "A", "Am"});
  const Header h = read_header(s);
  return {parse_circulant(h, s.get("A")), parse_circulant(h, s.get("Am"))};
}

std::string format_ciphertext(const CiphertextFile& ct) {
  std::ostringstream os;
  write_header(os, ct.field, ct.d);
  os << "encoding = " << (ct.encoding == PayloadEncoding::Bytes ? "bytes" : "block") << '\n'
     << "length = " << ct.length << '\n'
     << "blocks = " << ct.blocks.size() << '\n';
  for (const auto& b : ct.blocks) {
    os << "Ar = " << format_row(b.Ar.row()) << '\n' << "w = " << format_row(b.w) << '\n';
  }
  return os.str();
}

CiphertextFile parse_ciphertext(std::string_view text) {
  const Sections s(parse_key_values(text),
                   {"version", "n", "d", "field_poly", "encoding", "length", "blocks"}, {"Ar", "w"});
  const Header h = read_header(s);
  PayloadEncoding encoding;
  if (s.get("encoding") == "bytes") {
    encoding = PayloadEncoding::Bytes;
  } else if (s.get("encoding") == "block") {
    encoding = PayloadEncoding::Block;
  } else {
    throw Error(Errc::ParseError, "encoding must be 'bytes' or 'block'");
  }
  const auto length = parse_number<std::size_t>(s.get("length"), "length");
  const auto count = parse_number<std::size_t>(s.get("blocks"), "blocks");
  const auto& rep = s.repeated();
  if (rep.size() != 2 * count) throw Error(Errc::ParseError, "block count does not match Ar/w lines");

  std::vector<Ciphertext> blocks;
  blocks.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const auto& [k1, v1] = rep[2 * i];
    const auto& [k2, v2] = rep[2 * i + 1];
    if (k1 != "Ar" || k2 != "w") throw Error(Errc::ParseError, "expected alternating Ar and w lines");
    blocks.push_back({parse_circulant(h, v1), parse_row(h.field, v2, h.d)});
  }
  const std::size_t capacity = count * h.d;
  const bool fits = encoding == PayloadEncoding::Block
                        ? length == capacity
                        : length * 8 <= capacity * h.field.degree() &&
                              (count == 0 || (length * 8 > (count - 1) * h.d * h.field.degree()));
  if (!fits) throw Error(Errc::ParseError, "length is inconsistent with the block count");
  return {h.field, h.d, encoding, length, std::move(blocks)};
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(Errc::IoError, "cannot open " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_text_file(const std::string& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw Error(Errc::IoError, "cannot write " + path);
  out.write(text.data(), static_cast<std::streamsize>(text.size()));
  if (!out) throw Error(Errc::IoError, "write failed for " + path);
}

}  // namespace circelg
