#include "quadseq/verify.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>

#include "quadseq/census.hpp"
#include "quadseq/oracle.hpp"
#include "quadseq/roots.hpp"
#include "quadseq/sieve.hpp"

namespace quadseq {

namespace {

constexpr std::size_t kMaxCounterexamples = 20;
constexpr std::size_t kLemma3BasisSize = 25;
constexpr std::size_t kEq1Cases = 200;
constexpr std::size_t kEq1BasisPool = 8;
constexpr std::uint64_t kEq1Seed = 0x5eed0001;

class Recorder {
 public:
  Recorder(std::string_view suite, u64 limit) { result_ = {std::string(suite), limit, 0, 0, {}}; }

  void check(bool ok, const std::function<std::string()>& describe) {
    ++result_.cases;
    if (ok) return;
    ++result_.failures;
    if (result_.counterexamples.size() < kMaxCounterexamples) {
      result_.counterexamples.push_back(describe());
    }
  }

  SuiteResult take() { return std::move(result_); }

 private:
  SuiteResult result_;
};

std::string list(const std::vector<u64>& v) {
  std::ostringstream os;
  os << '{';
  for (std::size_t i = 0; i < v.size(); ++i) os << (i ? "," : "") << v[i];
  os << '}';
  return os.str();
}

bool all_1_mod_4(const std::vector<PrimeFactor>& factors) {
  return std::all_of(factors.begin(), factors.end(),
                     [](const PrimeFactor& f) { return f.prime % 4 == 1; });
}

SuiteResult lemma1(u64 limit) {
  Recorder rec("lemma1", limit);
  if (limit >= 1) sieve_range(1, limit, {}, [&](const TermRef& t) {
    const bool ok = std::all_of(t.factors.begin(), t.factors.end(),
                                [](const PrimeFactor& f) { return f.prime % 4 == 1; });
    rec.check(ok, [&] { return "S_" + std::to_string(t.n) + " = " + std::to_string(t.value) +
                               " has a prime factor not 1 mod 4"; });
  });
  for (u64 m = 3; m <= limit; m += 2) {
    const bool has_roots = !oracle::naive_root_scan(m).empty();
    const bool in_pp = all_1_mod_4(factorize(m));
    rec.check(has_roots == in_pp, [&] {
      return "m = " + std::to_string(m) + ": root scan " + (has_roots ? "nonempty" : "empty") +
             " but prime factors " + (in_pp ? "all" : "not all") + " 1 mod 4";
    });
  }
  return rec.take();
}

SuiteResult lemma2(u64 limit) {
  Recorder rec("lemma2", limit);
  for (u64 n = 2; n <= limit; ++n) {
    rec.check(lemma2_witness(n), [&] {
      return "S_" + std::to_string(n) + " = " + std::to_string(term_value(n)) +
             " is coprime to all earlier terms but composite";
    });
  }
  return rec.take();
}

SuiteResult lemma3(u64 limit) {
  Recorder rec("lemma3", limit);
  for (const auto& e : first_k_basis(kLemma3BasisSize).entries) {
    std::vector<u64> scan;
    for (u64 n = 1; n <= limit; ++n) {
      if (term_value(n) % e.p == 0) scan.push_back(n);
    }
    const auto positions = divisor_positions(e.p, limit);
    rec.check(positions == scan, [&] {
      return "p = " + std::to_string(e.p) + ": progressions " + std::to_string(positions.size()) +
             " positions, direct scan " + std::to_string(scan.size());
    });
  }
  return rec.take();
}

SuiteResult lemma4(u64 limit) {
  Recorder rec("lemma4", limit);
  for (u64 m = 5; m <= limit; m += 2) {
    const auto factors = factorize(m);
    if (!all_1_mod_4(factors)) continue;
    std::string problem;
    try {
      const RootSummary s = root_summary(m, factors);
      const u128 four_r2_plus_1 = static_cast<u128>(s.r) * s.r * 4 + 1;
      if (four_r2_plus_1 < m) problem = "r below sqrt(m-1)/2";
      if (s.r < first_entry_lower_bound(m)) problem = "r below ceil(sqrt(m-1)/2)";
      if (s.r > (m - 1) / 2) problem = "r above (m-1)/2";
      if (s.x > m - 2) problem = "x above m-2";
      if (static_cast<u128>(s.x) * m != four_r2_plus_1) problem = "m*x != 4r^2+1";
      if (!problem.empty()) {
        problem += " (r=" + std::to_string(s.r) + ", x=" + std::to_string(s.x) + ")";
      }
    } catch (const std::logic_error& e) {
      problem = e.what();
    }
    rec.check(problem.empty(), [&] { return "m = " + std::to_string(m) + ": " + problem; });
  }
  return rec.take();
}

SuiteResult lemma5(u64 limit) {
  Recorder rec("lemma5", limit);
  for (u64 p : primes_1_mod_4(limit)) {
    rec.check(verify_first_degree(p), [&] {
      return "p = " + std::to_string(p) + ": r(p) = " + std::to_string(root_summary(p).r) +
             " is not below r(p^2) = " + std::to_string(root_summary(p * p).r);
    });
  }
  return rec.take();
}

SuiteResult eq1(u64 limit) {
  Recorder rec("eq1", limit);
  const auto pool = first_k_basis(kEq1BasisPool).primes();
  std::mt19937_64 rng(kEq1Seed);
  for (std::size_t c = 0; c < kEq1Cases; ++c) {
    std::vector<u64> chosen = pool;
    std::shuffle(chosen.begin(), chosen.end(), rng);
    chosen.resize(std::uniform_int_distribution<std::size_t>(1, 4)(rng));
    const u64 horizon = std::uniform_int_distribution<u64>(0, limit)(rng);
    const PrimeBasis basis = basis_from_primes(chosen);
    const u64 ie = inclusion_exclusion_count(basis, horizon);
    const u64 exact = exact_coprime_count(basis, horizon);
    const u64 naive = oracle::naive_coprime_count(chosen, horizon);
    rec.check(ie == exact && exact == naive, [&] {
      return "basis " + list(chosen) + ", horizon " + std::to_string(horizon) +
             ": inclusion-exclusion " + std::to_string(ie) + ", marked " +
             std::to_string(exact) + ", gcd scan " + std::to_string(naive);
    });
  }
  return rec.take();
}

SuiteResult main_identity(u64 limit) {
  Recorder rec("main-identity", limit);
  for (u64 k = 1; k <= limit; ++k) {
    const CensusReport r = verify_main_identity(k);
    rec.check(r.identity_holds(), [&] {
      return "k = " + std::to_string(k) + ", N = " + std::to_string(r.modulus) +
             ": inclusion-exclusion " + std::to_string(r.ie_count) + ", marked " +
             std::to_string(r.exact_count) + ", product " + std::to_string(r.product_value);
    });
  }
  return rec.take();
}

SuiteResult second_proof(u64 limit) {
  Recorder rec("second-proof", limit);
  for (u64 k = 1; k <= limit; ++k) {
    const SecondProofWitness w = second_proof_witness(k);
    u128 product = 1;
    bool factors_ok = true;
    for (const auto& f : w.factors) {
      for (unsigned e = 0; e < f.exponent; ++e) product *= f.prime;
      factors_ok = factors_ok && f.prime % 4 == 1 && is_prime(f.prime) &&
                   std::none_of(w.basis.entries.begin(), w.basis.entries.end(),
                                [&](const BasisPrime& b) { return b.p == f.prime; });
    }
    rec.check(w.coprime_to_basis() && factors_ok && product == w.m, [&] {
      return "k = " + std::to_string(k) + ", M = " + std::to_string(w.m) + ": gcds " +
             list(w.gcds) + (factors_ok ? "" : ", bad factorization");
    });
  }
  return rec.take();
}

}  // namespace

const std::vector<std::string>& suite_names() {
  static const std::vector<std::string> names = {"lemma1", "lemma2",        "lemma3",
                                                 "lemma4", "lemma5",        "eq1",
                                                 "main-identity", "second-proof"};
  return names;
}

u64 default_suite_limit(std::string_view suite) {
  if (suite == "lemma1" || suite == "lemma3" || suite == "lemma4") return 100'000;
  if (suite == "lemma2" || suite == "eq1") return 10'000;
  if (suite == "lemma5") return 1000;
  if (suite == "main-identity" || suite == "second-proof") return 4;
  throw std::invalid_argument("unknown suite '" + std::string(suite) + "'");
}

SuiteResult run_suite(std::string_view suite, u64 limit) {
  if (suite == "lemma1") return lemma1(limit);
  if (suite == "lemma2") return lemma2(limit);
  if (suite == "lemma3") return lemma3(limit);
  if (suite == "lemma4") return lemma4(limit);
  if (suite == "lemma5") return lemma5(limit);
  if (suite == "eq1") return eq1(limit);
  if (suite == "main-identity") return main_identity(limit);
  if (suite == "second-proof") return second_proof(limit);
  throw std::invalid_argument("unknown suite '" + std::string(suite) + "'");
}

}  // namespace quadseq
