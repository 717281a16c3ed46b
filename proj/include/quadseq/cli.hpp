#pragma once

// Command implementations behind the `quadseq` executable. Each command writes
// records to `out`, diagnostics to `err`, and returns the process exit code.

#include <cstddef>
#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "quadseq/census.hpp"
#include "quadseq/roots.hpp"
#include "quadseq/sieve.hpp"

namespace quadseq::cli {

enum class Format { json_lines, csv, table };

enum ExitCode : int {
  kSuccess = 0,
  kCheckFailed = 1,  // verification failure or oracle mismatch
  kInputError = 2,   // bad arguments, range or overflow errors
};

struct Options {
  Format format = Format::json_lines;
  bool oracle = false;
  u64 segment_size = 65536;
  unsigned workers = 1;
};

/// "65=5·13", "325=5^2·13"; a prime renders as itself.
std::string dot_notation(u64 value, std::span<const PrimeFactor> factors);
/// "5^2*13"
std::string ascii_factorization(std::span<const PrimeFactor> factors);

/// One json-lines term record, including the trailing newline.
std::string term_json(const TermRef& term);

/// SHA-256 (hex) of the json-lines rendering of terms [from, to].
std::string terms_digest(u64 from, u64 to, const SieveOptions& options);

/// Accepts "12345", "10^6" and "1e6".
u64 parse_index(std::string_view text);
std::optional<Format> parse_format(std::string_view text);

int cmd_terms(u64 from, u64 to, const Options& opts, std::ostream& out, std::ostream& err);
int cmd_primes(u64 limit, const Options& opts, std::ostream& out, std::ostream& err);
int cmd_roots(u64 m, bool all, const Options& opts, std::ostream& out, std::ostream& err);

struct CensusArgs {
  std::optional<std::size_t> k;
  std::vector<u64> primes;
  std::optional<u64> horizon;
};
int cmd_census(const CensusArgs& args, const Options& opts, std::ostream& out, std::ostream& err);

/// `suite` is a suite name or "all"; limit defaults per suite.
int cmd_verify(const std::string& suite, std::optional<u64> limit, const Options& opts,
               std::ostream& out, std::ostream& err);

struct BenchArgs {
  u64 limit = 1'000'000;
  bool reference = false;  // also digest a workers=1, default-segment run and compare
};
int cmd_bench(const BenchArgs& args, const Options& opts, std::ostream& out, std::ostream& err);

/// Parses argv and dispatches.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace quadseq::cli
