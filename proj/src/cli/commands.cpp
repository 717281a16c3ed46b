#include <CLI11.hpp>
#include <json.hpp>

#include <chrono>
#include <iomanip>
#include <iostream>
#include <sstream>

#include "quadseq/cli.hpp"
#include "quadseq/oracle.hpp"
#include "quadseq/verify.hpp"

namespace quadseq::cli {

namespace {

using Record = nlohmann::ordered_json;

constexpr u64 kRootScanOracleCap = 10'000'000;

void write_record(std::ostream& out, const Record& r) { out << r.dump() << '\n'; }

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) out += (c == '"') ? std::string("\"\"") : std::string(1, c);
  return out + "\"";
}

std::string joined(const std::vector<u64>& v, char sep) {
  std::string out;
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) out += sep;
    out += std::to_string(v[i]);
  }
  return out;
}

// Runs `body`, mapping input and range errors to exit code 2.
template <class Body>
int guarded(std::ostream& err, Body&& body) {
  try {
    return body();
  } catch (const OracleCapExceeded& e) {
    err << "error: " << e.what() << '\n';
  } catch (const RangeError& e) {
    err << "error: range: " << e.what() << '\n';
  } catch (const NoRootsError& e) {
    err << "error: " << e.what() << '\n';
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
  } catch (const std::bad_alloc&) {
    err << "error: out of memory\n";
  }
  return kInputError;
}

}  // namespace

// ---------------------------------------------------------------------------

int cmd_terms(u64 from, u64 to, const Options& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (from < 1 || to < from) throw std::invalid_argument("terms needs 1 <= from <= to");
    if (opts.format == Format::csv) out << "n,value,prime,factorization\n";
    if (opts.format == Format::table) out << std::setw(10) << "n" << "  term\n";

    u64 mismatches = 0;
    const SieveOptions sieve{opts.segment_size, opts.workers, nullptr};
    sieve_range(from, to, sieve, [&](const TermRef& t) {
      switch (opts.format) {
        case Format::json_lines:
          out << term_json(t);
          break;
        case Format::csv:
          out << t.n << ',' << t.value << ',' << (t.is_prime() ? 1 : 0) << ','
              << ascii_factorization(t.factors) << '\n';
          break;
        case Format::table:
          out << std::setw(10) << t.n << "  " << dot_notation(t.value, t.factors) << '\n';
          break;
      }
      if (opts.oracle) {
        const auto expected = oracle::naive_factor(t.value);
        if (!std::equal(expected.begin(), expected.end(), t.factors.begin(), t.factors.end())) {
          ++mismatches;
          err << "oracle mismatch at n=" << t.n << ": sieve " << ascii_factorization(t.factors)
              << ", trial division " << ascii_factorization(expected) << '\n';
        }
      }
    });
    return mismatches == 0 ? kSuccess : kCheckFailed;
  });
}

int cmd_primes(u64 limit, const Options& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (limit < 1) throw std::invalid_argument("primes needs limit >= 1");
    if (opts.format == Format::csv) out << "n,value\n";
    u64 count = 0;
    u64 mismatches = 0;
    const SieveOptions sieve{opts.segment_size, opts.workers, nullptr};
    sieve_range(1, limit, sieve, [&](const TermRef& t) {
      if (opts.oracle && t.is_prime() != is_prime(t.value)) {
        ++mismatches;
        err << "oracle mismatch at n=" << t.n << ": sieve says "
            << (t.is_prime() ? "prime" : "composite") << '\n';
      }
      if (!t.is_prime()) return;
      ++count;
      switch (opts.format) {
        case Format::json_lines:
          write_record(out, Record{{"type", "prime"}, {"n", t.n}, {"value", t.value}});
          break;
        case Format::csv:
          out << t.n << ',' << t.value << '\n';
          break;
        case Format::table:
          out << std::setw(10) << t.n << "  " << t.value << '\n';
          break;
      }
    });
    switch (opts.format) {
      case Format::json_lines:
        write_record(out, Record{{"type", "summary"}, {"limit", limit}, {"count", count}});
        break;
      case Format::csv:
        out << "total," << count << '\n';
        break;
      case Format::table:
        out << count << " prime terms with n <= " << limit << '\n';
        break;
    }
    return mismatches == 0 ? kSuccess : kCheckFailed;
  });
}

int cmd_roots(u64 m, bool all, const Options& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (m < 3) throw std::invalid_argument("roots needs m >= 3");
    if (m % 2 == 0) throw NoRootsError(m, 2);
    const auto factors = factorize(m);
    const RootSet set = all_roots(m, factors);

    int status = kSuccess;
    if (opts.oracle && m <= kRootScanOracleCap && oracle::naive_root_scan(m) != set.roots) {
      err << "oracle mismatch: root scan of " << m << " differs\n";
      status = kCheckFailed;
    }

    if (all) {
      switch (opts.format) {
        case Format::json_lines:
          write_record(out, Record{{"type", "root_set"}, {"m", m}, {"nu", set.nu},
                                   {"roots", set.roots}});
          break;
        case Format::csv:
          out << "m,nu,roots\n" << m << ',' << set.nu << ',' << joined(set.roots, ';') << '\n';
          break;
        case Format::table:
          out << "m = " << m << ", nu = " << set.nu << ", roots: " << joined(set.roots, ' ')
              << '\n';
          break;
      }
      return status;
    }

    const RootSummary s = root_summary(m, factors);
    switch (opts.format) {
      case Format::json_lines:
        write_record(out, Record{{"type", "roots"}, {"m", m}, {"r", s.r}, {"x", s.x}});
        break;
      case Format::csv:
        out << "m,r,x\n" << m << ',' << s.r << ',' << s.x << '\n';
        break;
      case Format::table:
        out << "m = " << m << ", r = " << s.r << ", x = " << s.x << '\n';
        break;
    }
    return status;
  });
}

int cmd_census(const CensusArgs& args, const Options& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (args.k.has_value() == !args.primes.empty()) {
      throw std::invalid_argument("census needs exactly one of --k or --primes");
    }
    if (args.k && *args.k == 0) throw std::invalid_argument("--k must be >= 1");
    const PrimeBasis basis = args.k ? first_k_basis(*args.k) : basis_from_primes(args.primes);
    const CensusReport report = census(basis, args.horizon);

    std::optional<u64> naive;
    if (opts.oracle) naive = oracle::naive_coprime_count(basis.primes(), report.horizon);

    const bool at_modulus = report.horizon == report.modulus;
    bool ok = report.ie_matches_exact() && (!at_modulus || report.identity_holds());
    if (naive && *naive != report.exact_count) ok = false;

    switch (opts.format) {
      case Format::json_lines: {
        Record r{{"type", "census"},          {"primes", basis.primes()},
                 {"N", report.modulus},       {"horizon", report.horizon},
                 {"ie_count", report.ie_count}, {"exact_count", report.exact_count},
                 {"product_value", report.product_value},
                 {"ie_equals_exact", report.ie_matches_exact()}};
        r["identity_holds"] = at_modulus ? Record(report.identity_holds()) : Record(nullptr);
        if (naive) r["naive_count"] = *naive;
        Record table = Record::array();
        for (const auto& t : report.nu_table) {
          table.push_back(Record{{"d", t.d}, {"nu", t.nu}, {"roots", t.roots}, {"struck", t.struck}});
        }
        r["nu_table"] = std::move(table);
        write_record(out, r);
        break;
      }
      case Format::csv:
        out << "primes,N,horizon,ie_count,exact_count,product_value,ie_equals_exact,"
               "identity_holds\n";
        out << joined(basis.primes(), ';') << ',' << report.modulus << ',' << report.horizon
            << ',' << report.ie_count << ',' << report.exact_count << ','
            << report.product_value << ',' << (report.ie_matches_exact() ? "true" : "false")
            << ',' << (at_modulus ? (report.identity_holds() ? "true" : "false") : "") << '\n';
        break;
      case Format::table:
        out << "basis          " << joined(basis.primes(), ' ') << '\n'
            << "N              " << report.modulus << '\n'
            << "horizon        " << report.horizon << '\n'
            << "ie_count       " << report.ie_count << '\n'
            << "exact_count    " << report.exact_count << '\n'
            << "product_value  " << report.product_value << '\n';
        if (naive) out << "naive_count    " << *naive << '\n';
        out << (ok ? "consistent" : "INCONSISTENT") << '\n';
        break;
    }
    if (!ok) err << "census: counts disagree\n";
    return ok ? kSuccess : kCheckFailed;
  });
}

int cmd_verify(const std::string& suite, std::optional<u64> limit, const Options& opts,
               std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    std::vector<std::string> names;
    if (suite == "all") {
      names = suite_names();
    } else {
      (void)default_suite_limit(suite);  // rejects unknown names
      names = {suite};
    }
    if (opts.format == Format::csv) out << "suite,limit,cases,failures\n";

    u64 total_failures = 0;
    for (const auto& name : names) {
      const SuiteResult r = run_suite(name, limit.value_or(default_suite_limit(name)));
      total_failures += r.failures;
      for (const auto& c : r.counterexamples) {
        err << "FAIL " << r.suite << ": " << c << '\n';
        if (opts.format == Format::json_lines) {
          write_record(out, Record{{"type", "failure"}, {"suite", r.suite}, {"detail", c}});
        }
      }
      switch (opts.format) {
        case Format::json_lines:
          write_record(out, Record{{"type", "verify"}, {"suite", r.suite}, {"limit", r.limit},
                                   {"cases", r.cases}, {"failures", r.failures}});
          break;
        case Format::csv:
          out << csv_escape(r.suite) << ',' << r.limit << ',' << r.cases << ',' << r.failures
              << '\n';
          break;
        case Format::table:
          out << std::left << std::setw(15) << r.suite << std::right << " limit "
              << std::setw(8) << r.limit << "  cases " << std::setw(8) << r.cases
              << "  failures " << r.failures << '\n';
          break;
      }
    }
    return total_failures == 0 ? kSuccess : kCheckFailed;
  });
}

int cmd_bench(const BenchArgs& args, const Options& opts, std::ostream& out, std::ostream& err) {
  return guarded(err, [&] {
    if (args.limit < 1) throw std::invalid_argument("bench needs limit >= 1");
    SieveStats stats;
    const SieveOptions sieve{opts.segment_size, opts.workers, &stats};
    const auto start = std::chrono::steady_clock::now();
    const std::string digest = terms_digest(1, args.limit, sieve);
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();

    std::optional<std::string> reference;
    if (args.reference) reference = terms_digest(1, args.limit, SieveOptions{});
    const bool match = !reference || *reference == digest;

    const double rate = seconds > 0 ? static_cast<double>(args.limit) / seconds : 0.0;
    switch (opts.format) {
      case Format::json_lines: {
        Record r{{"type", "bench"},
                 {"limit", args.limit},
                 {"segment_size", opts.segment_size},
                 {"workers", opts.workers},
                 {"wall_seconds", seconds},
                 {"terms_per_second", rate},
                 {"segments", stats.segments},
                 {"peak_segment_bytes", stats.peak_segment_bytes},
                 {"digest", digest}};
        if (reference) {
          r["reference_digest"] = *reference;
          r["digest_match"] = match;
        }
        write_record(out, r);
        break;
      }
      case Format::csv:
        out << "limit,segment_size,workers,wall_seconds,terms_per_second,segments,"
               "peak_segment_bytes,digest,digest_match\n"
            << args.limit << ',' << opts.segment_size << ',' << opts.workers << ',' << seconds
            << ',' << rate << ',' << stats.segments << ',' << stats.peak_segment_bytes << ','
            << digest << ',' << (reference ? (match ? "true" : "false") : "") << '\n';
        break;
      case Format::table:
        out << "limit               " << args.limit << '\n'
            << "segment size        " << opts.segment_size << '\n'
            << "workers             " << opts.workers << '\n'
            << "wall seconds        " << seconds << '\n'
            << "terms/second        " << static_cast<u64>(rate) << '\n'
            << "segments            " << stats.segments << '\n'
            << "peak segment bytes  " << stats.peak_segment_bytes << '\n'
            << "digest              " << digest << '\n';
        if (reference) out << "reference match     " << (match ? "yes" : "NO") << '\n';
        break;
    }
    if (!match) err << "bench: digest differs from the single-worker reference\n";
    return match ? kSuccess : kCheckFailed;
  });
}

// ---------------------------------------------------------------------------

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Factor, enumerate and count terms of S_n = 4n^2+1. All limits are indices n."};
  app.require_subcommand(1);

  std::string format = "json-lines";
  Options opts;
  std::string segment_text = "65536";
  app.add_option("--format", format, "json-lines | csv | table")->capture_default_str();
  app.add_flag("--oracle", opts.oracle, "cross-check against slow reference implementations");
  app.add_option("--segment-size", segment_text, "indices per sieve segment")
      ->capture_default_str();
  app.add_option("--workers", opts.workers, "sieve worker threads")->capture_default_str();

  std::string from_text = "1", to_text, range_text;
  auto* terms = app.add_subcommand("terms", "factored terms for n in [from, to]");
  terms->add_option("range", range_text, "A..B (alternative to --from/--to)");
  terms->add_option("--from", from_text, "first index");
  terms->add_option("--to", to_text, "last index");

  std::string limit_text;
  auto* primes = app.add_subcommand("primes", "indices n <= limit with S_n prime");
  primes->add_option("limit", limit_text, "largest index")->required();

  std::string modulus_text;
  bool all_roots_flag = false;
  auto* roots = app.add_subcommand("roots", "least root r(m) and x(m), or every root with --all");
  roots->add_option("m", modulus_text, "modulus")->required();
  roots->add_flag("--all", all_roots_flag, "print the full root set");

  std::optional<std::size_t> census_k;
  std::string census_primes, horizon_text;
  auto* census_cmd = app.add_subcommand("census", "coprime counts against a prime basis");
  auto* k_opt = census_cmd->add_option("--k", census_k, "first k basis primes of S");
  auto* primes_opt = census_cmd->add_option("--primes", census_primes, "comma-separated primes");
  k_opt->excludes(primes_opt);
  census_cmd->add_option("--horizon", horizon_text, "last index (default N)");

  std::string suite = "all", verify_limit_text;
  auto* verify = app.add_subcommand("verify", "run verification suites");
  verify->add_option("--suite", suite, "suite name or 'all'")->capture_default_str();
  verify->add_option("--limit", verify_limit_text, "suite limit (default per suite)");

  std::string bench_limit_text = "1000000";
  bool bench_reference = false;
  auto* bench = app.add_subcommand("bench", "time the sieve and digest its output");
  bench->add_option("--limit", bench_limit_text, "last index")->capture_default_str();
  bench->add_flag("--reference", bench_reference,
                  "compare against a single-worker, default-segment digest");

  for (auto* sub : {terms, primes, roots, census_cmd, verify, bench}) sub->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kSuccess;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }

  return guarded(err, [&]() -> int {
    const auto parsed_format = parse_format(format);
    if (!parsed_format) throw std::invalid_argument("unknown format '" + format + "'");
    opts.format = *parsed_format;
    opts.segment_size = parse_index(segment_text);
    if (opts.segment_size == 0) throw std::invalid_argument("--segment-size must be >= 1");
    if (opts.workers == 0) throw std::invalid_argument("--workers must be >= 1");

    if (*terms) {
      u64 from = parse_index(from_text);
      u64 to = 0;
      if (!range_text.empty()) {
        const auto dots = range_text.find("..");
        if (dots == std::string::npos) {
          from = to = parse_index(range_text);
        } else {
          from = parse_index(range_text.substr(0, dots));
          to = parse_index(range_text.substr(dots + 2));
        }
      } else {
        if (to_text.empty()) throw std::invalid_argument("terms needs --to or a range A..B");
        to = parse_index(to_text);
      }
      return cmd_terms(from, to, opts, out, err);
    }
    if (*primes) return cmd_primes(parse_index(limit_text), opts, out, err);
    if (*roots) return cmd_roots(parse_index(modulus_text), all_roots_flag, opts, out, err);
    if (*census_cmd) {
      CensusArgs args;
      args.k = census_k;
      std::stringstream ss(census_primes);
      for (std::string item; std::getline(ss, item, ',');) {
        if (!item.empty()) args.primes.push_back(parse_index(item));
      }
      if (!horizon_text.empty()) args.horizon = parse_index(horizon_text);
      return cmd_census(args, opts, out, err);
    }
    if (*verify) {
      std::optional<u64> limit;
      if (!verify_limit_text.empty()) limit = parse_index(verify_limit_text);
      return cmd_verify(suite, limit, opts, out, err);
    }
    return cmd_bench(BenchArgs{parse_index(bench_limit_text), bench_reference}, opts, out, err);
  });
}

}  // namespace quadseq::cli
