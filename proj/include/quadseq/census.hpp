#pragma once

// Counting terms S_1..S_n coprime to N = p_1...p_k, three ways: inclusion-
// exclusion over the root sets of every divisor of N, a direct mark-and-count,
// and (at n = N) the closed form prod(p_i - 2).

#include <cstddef>
#include <optional>
#include <vector>

#include "quadseq/sieve.hpp"

namespace quadseq {

/// One divisor term of the inclusion-exclusion sum.
struct DivisorTerm {
  u64 d = 1;
  unsigned nu = 0;        // distinct primes of d
  std::size_t roots = 1;  // 2^nu; d = 1 uses the single root 0
  u64 struck = 0;         // sum over roots of floor((n + r)/d)
};

struct CensusReport {
  PrimeBasis basis;
  u64 modulus = 1;  // N
  u64 horizon = 0;
  u64 ie_count = 0;
  u64 exact_count = 0;
  u64 product_value = 0;
  std::vector<DivisorTerm> nu_table;  // divisors in subset-mask order

  bool ie_matches_exact() const { return ie_count == exact_count; }
  /// Only meaningful when horizon == N.
  bool identity_holds() const {
    return horizon == modulus && ie_count == exact_count && exact_count == product_value;
  }
};

/// sum over d | N of (-1)^nu(d) * sum_i floor((n + r_i(d)) / d).
u64 inclusion_exclusion_count(const PrimeBasis& basis, u64 horizon,
                              std::vector<DivisorTerm>* table = nullptr);

/// |{ n <= horizon : gcd(S_n, N) = 1 }| by striking n = +-r(p) (mod p).
u64 exact_coprime_count(const PrimeBasis& basis, u64 horizon);

/// prod(p_i - 2).
u64 product_formula(const PrimeBasis& basis);

/// All three counts; horizon defaults to N.
CensusReport census(const PrimeBasis& basis, std::optional<u64> horizon = std::nullopt);

/// Horizons above this are refused by the full-scan census paths.
inline constexpr u64 kMaxCensusHorizon = 2'000'000'000;

/// census(first_k_basis(k)) at horizon N.
CensusReport verify_main_identity(std::size_t k);

struct SecondProofWitness {
  PrimeBasis basis;
  u64 modulus = 1;  // N
  u64 m = 0;        // 4N^2 + 1
  std::vector<u64> gcds;             // gcd(M, p_i), in basis order
  std::vector<PrimeFactor> factors;  // of M, by trial division
  bool m_is_prime = false;

  bool coprime_to_basis() const;
};

SecondProofWitness second_proof_witness(std::size_t k);

}  // namespace quadseq
