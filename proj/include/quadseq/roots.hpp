#pragma once

// Root sets of 4z^2+1 = 0 (mod m) for m whose prime factors are all 1 (mod 4),
// and the first-entry function r(m) with its cofactor x(m) = (4r^2+1)/m.

#include <span>

#include "quadseq/modarith.hpp"

namespace quadseq {

struct RootSummary {
  Modulus modulus;
  u64 r;  // least root; index of the first term divisible by m
  u64 x;  // (4r^2+1)/m
};

/// Complete root set. `factorization` must be the exact factorization of m.
/// Throws BadFactorization if it is not, NoRootsError if m has a prime factor
/// that is 2 or 3 (mod 4).
RootSet all_roots(u64 m, std::span<const PrimeFactor> factorization);
RootSet all_roots(u64 m);

RootSummary root_summary(u64 m, std::span<const PrimeFactor> factorization);
RootSummary root_summary(u64 m);

/// r(p) < r(p^2).
bool verify_first_degree(u64 p);

/// ceil(sqrt(m-1)/2), computed without floating point.
u64 first_entry_lower_bound(u64 m);

/// Checks membership, pairing z <-> m-z, ordering and the 2^nu size law.
/// Throws std::logic_error describing the first violation.
void check_root_set(const RootSet& set);

}  // namespace quadseq
