#pragma once

// Slow reference implementations. They share no code path with the sieve,
// the root constructions or the inclusion-exclusion count, and serve as
// ground truth in tests and behind the CLI's --oracle flag.

#include <span>
#include <vector>

#include "quadseq/modarith.hpp"

namespace quadseq::oracle {

/// Trial division by every odd integer up to sqrt(v). v odd, v >= 3.
std::vector<PrimeFactor> naive_factor(u64 v);

/// Every z in [1, m-1] with 4z^2+1 = 0 (mod m); possibly empty. m odd, m >= 3.
std::vector<u64> naive_root_scan(u64 m);

inline constexpr u64 kCoprimeScanCap = 1'000'000;

/// Term-by-term gcd(4n^2+1, N) == 1 count over n in [1, horizon].
/// Throws OracleCapExceeded past kCoprimeScanCap.
u64 naive_coprime_count(std::span<const u64> primes, u64 horizon);

}  // namespace quadseq::oracle
