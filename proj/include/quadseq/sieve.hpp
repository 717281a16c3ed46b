#pragma once

// Factor sieve over indices of S_n = 4n^2+1.
//
// A prime p divides S_n exactly when n = +-r(p) (mod p), so each prime
// p = 1 (mod 4) up to 2*n_max contributes two arithmetic progressions of
// indices. Whatever remains after dividing those out is 1 or a single prime.

#include <cstddef>
#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "quadseq/modarith.hpp"

namespace quadseq {

/// Largest index whose term fits in 64 bits.
inline constexpr u64 kMaxIndex = 2147483647;  // 2^31 - 1

struct Term {
  u64 n = 0;
  u64 value = 0;
  std::vector<PrimeFactor> factors;

  bool is_prime() const { return factors.size() == 1 && factors.front().exponent == 1; }
};

/// Non-owning view of a term inside a finished SieveSegment.
struct TermRef {
  u64 n = 0;
  u64 value = 0;
  std::span<const PrimeFactor> factors;

  bool is_prime() const { return factors.size() == 1 && factors.front().exponent == 1; }
  Term to_term() const { return Term{n, value, {factors.begin(), factors.end()}}; }
};

/// Primes p <= limit with p = 1 (mod 4), ascending. Segmented Eratosthenes.
std::vector<std::uint32_t> primes_1_mod_4(u64 limit);

/// Per-index factor accumulation over [lo, hi).
class SieveSegment {
 public:
  SieveSegment(u64 lo, u64 hi);

  u64 lo() const noexcept { return lo_; }
  u64 hi() const noexcept { return hi_; }
  std::size_t size() const noexcept { return cofactor_.size(); }

  /// Divides every power of p out of S_n. p must divide S_n.
  void divide_out(u64 n, u64 p);

  /// Moves leftover cofactors (> 1) into the factor lists and sorts them.
  void finish();
  bool finished() const noexcept { return finished_; }

  /// cofactor * product(recorded factors) == 4n^2+1 for every index,
  /// and after finish() every cofactor is 1.
  bool accounts_for_all() const;

  /// Only valid after finish().
  TermRef term(std::size_t i) const;

  /// Bytes held by this segment.
  std::size_t memory_bytes() const;

 private:
  struct Hit {
    std::uint32_t offset;
    unsigned exponent;
    u64 prime;
  };

  u64 lo_;
  u64 hi_;
  std::vector<u64> cofactor_;
  std::vector<Hit> hits_;
  std::vector<std::uint32_t> starts_;
  std::vector<PrimeFactor> factors_;
  bool finished_ = false;
};

struct SieveStats {
  u64 segments = 0;
  std::size_t peak_segment_bytes = 0;
};

struct SieveOptions {
  u64 segment_size = 65536;
  unsigned workers = 1;
  SieveStats* stats = nullptr;  // filled on the calling thread
};

using TermSink = std::function<void(const TermRef&)>;

/// Emits every term with index in [from, to], ascending, fully factored.
/// Output does not depend on segment_size or workers.
void sieve_range(u64 from, u64 to, const SieveOptions& options, const TermSink& sink);

inline void sieve_range(u64 n_max, const SieveOptions& options, const TermSink& sink) {
  sieve_range(1, n_max, options, sink);
}

std::vector<Term> collect_terms(u64 from, u64 to, const SieveOptions& options = {});

/// { n <= n_max : n = +-r(p) (mod p) }, ascending.
std::vector<u64> divisor_positions(u64 p, u64 n_max);

/// Indices n <= n_max with S_n prime.
std::vector<u64> enumerate_primes(u64 n_max, const SieveOptions& options = {});

struct BasisPrime {
  u64 p = 0;
  u64 r = 0;            // least root of 4z^2+1 mod p
  u64 first_index = 0;  // first n with p | S_n

  friend bool operator==(const BasisPrime&, const BasisPrime&) = default;
};

/// Primes ordered by first appearance as a factor of S (ties by ascending p).
struct PrimeBasis {
  std::vector<BasisPrime> entries;

  std::size_t size() const noexcept { return entries.size(); }
  bool empty() const noexcept { return entries.empty(); }
  std::vector<u64> primes() const;
  /// Product of the primes; RangeError on overflow.
  u64 product() const;
};

/// First k primes to appear as factors in S_1, S_2, ...
PrimeBasis first_k_basis(std::size_t k);

/// Basis from explicit primes. Each must be prime and 1 (mod 4), no repeats.
PrimeBasis basis_from_primes(std::span<const u64> primes);

/// False only for a counterexample: S_n coprime to every S_k (k < n) but not prime.
bool lemma2_witness(u64 n);

}  // namespace quadseq
