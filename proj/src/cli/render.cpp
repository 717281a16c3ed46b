#include <openssl/evp.h>

#include <charconv>
#include <memory>
#include <stdexcept>
#include <string>

#include "quadseq/cli.hpp"

namespace quadseq::cli {

namespace {

std::string join_factors(std::span<const PrimeFactor> factors, std::string_view times) {
  std::string out;
  for (std::size_t i = 0; i < factors.size(); ++i) {
    if (i) out += times;
    out += std::to_string(factors[i].prime);
    if (factors[i].exponent > 1) out += "^" + std::to_string(factors[i].exponent);
  }
  return out;
}

void append_number(std::string& out, u64 v) {
  char buf[24];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  out.append(buf, res.ptr);
}

}  // namespace

std::string dot_notation(u64 value, std::span<const PrimeFactor> factors) {
  if (factors.size() == 1 && factors.front().exponent == 1) return std::to_string(value);
  return std::to_string(value) + "=" + join_factors(factors, "·");
}

std::string ascii_factorization(std::span<const PrimeFactor> factors) {
  return join_factors(factors, "*");
}

std::string term_json(const TermRef& term) {
  std::string out;
  out.reserve(96);
  out += R"({"type":"term","n":)";
  append_number(out, term.n);
  out += R"(,"value":)";
  append_number(out, term.value);
  out += term.is_prime() ? R"(,"prime":true)" : R"(,"prime":false)";
  out += R"(,"factors":[)";
  for (std::size_t i = 0; i < term.factors.size(); ++i) {
    if (i) out += ',';
    out += '[';
    append_number(out, term.factors[i].prime);
    out += ',';
    append_number(out, term.factors[i].exponent);
    out += ']';
  }
  out += "]}\n";
  return out;
}

std::string terms_digest(u64 from, u64 to, const SieveOptions& options) {
  const std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(),
                                                                   &EVP_MD_CTX_free);
  if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1) {
    throw std::runtime_error("cannot initialise SHA-256");
  }
  std::string buffer;
  sieve_range(from, to, options, [&](const TermRef& t) {
    buffer += term_json(t);
    if (buffer.size() > (1u << 16)) {
      EVP_DigestUpdate(ctx.get(), buffer.data(), buffer.size());
      buffer.clear();
    }
  });
  EVP_DigestUpdate(ctx.get(), buffer.data(), buffer.size());

  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int length = 0;
  EVP_DigestFinal_ex(ctx.get(), digest, &length);
  static constexpr char kHex[] = "0123456789abcdef";
  std::string hex;
  for (unsigned i = 0; i < length; ++i) {
    hex += kHex[digest[i] >> 4];
    hex += kHex[digest[i] & 15];
  }
  return hex;
}

u64 parse_index(std::string_view text) {
  const auto bad = [&] {
    return std::invalid_argument("cannot read '" + std::string(text) + "' as an index");
  };
  const auto number = [&](std::string_view part) {
    u64 v = 0;
    const auto res = std::from_chars(part.data(), part.data() + part.size(), v);
    if (res.ec != std::errc() || res.ptr != part.data() + part.size() || part.empty()) throw bad();
    return v;
  };
  u64 base = 0;
  u64 exponent = 0;
  if (const auto caret = text.find('^'); caret != std::string_view::npos) {
    base = number(text.substr(0, caret));
    exponent = number(text.substr(caret + 1));
  } else if (const auto e = text.find_first_of("eE"); e != std::string_view::npos) {
    const u64 mantissa = number(text.substr(0, e));
    exponent = number(text.substr(e + 1));
    u64 v = mantissa;
    for (u64 i = 0; i < exponent && v != 0; ++i) v = checked_mul(v, 10);
    return v;
  } else {
    return number(text);
  }
  if (base <= 1) return exponent == 0 ? 1 : base;
  u64 v = 1;
  for (u64 i = 0; i < exponent; ++i) v = checked_mul(v, base);
  return v;
}

std::optional<Format> parse_format(std::string_view text) {
  if (text == "json-lines" || text == "json") return Format::json_lines;
  if (text == "csv") return Format::csv;
  if (text == "table") return Format::table;
  return std::nullopt;
}

}  // namespace quadseq::cli
