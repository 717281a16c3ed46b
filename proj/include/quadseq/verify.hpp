#pragma once

// Named verification suites, one per checked statement about S_n = 4n^2+1.
//
//   lemma1         prime factors of S_n are 1 (mod 4); odd m has roots iff all
//                  its prime factors are 1 (mod 4)          limit: n and m
//   lemma2         S_n coprime to all earlier terms => prime  limit: n
//   lemma3         divisor_positions of the first 25 basis
//                  primes match a direct scan                 limit: n
//   lemma4         first-entry bounds on r(m), x(m)           limit: m
//   lemma5         r(p) < r(p^2)                              limit: p
//   eq1            inclusion-exclusion = marked = gcd scan,
//                  200 seeded random cases                    limit: horizon
//   main-identity  census at n = N equals prod(p_i - 2)       limit: k
//   second-proof   4N^2+1 is coprime to the basis             limit: k

#include <string>
#include <string_view>
#include <vector>

#include "quadseq/modarith.hpp"

namespace quadseq {

struct SuiteResult {
  std::string suite;
  u64 limit = 0;
  u64 cases = 0;
  u64 failures = 0;
  std::vector<std::string> counterexamples;  // first few, fully described
};

const std::vector<std::string>& suite_names();
u64 default_suite_limit(std::string_view suite);

/// Throws std::invalid_argument for an unknown suite name.
SuiteResult run_suite(std::string_view suite, u64 limit);

}  // namespace quadseq
