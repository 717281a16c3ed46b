#include <algorithm>
#include <vector>

#include "quadseq/sieve.hpp"

namespace quadseq {

std::vector<std::uint32_t> primes_1_mod_4(u64 limit) {
  std::vector<std::uint32_t> out;
  if (limit < 5) return out;
  if (limit > 0xFFFFFFFFull) throw RangeError("prime supply limit exceeds 2^32");

  const u64 root = isqrt(limit);
  // Odd base primes up to sqrt(limit).
  std::vector<char> small(root + 1, 1);
  std::vector<u64> base;
  for (u64 i = 3; i <= root; i += 2) {
    if (!small[i]) continue;
    base.push_back(i);
    for (u64 j = i * i; j <= root; j += 2 * i) small[j] = 0;
  }

  constexpr u64 kSpan = u64{1} << 19;  // odd numbers per segment
  std::vector<char> mark(kSpan);
  // Segment covers odd values lo, lo+2, ..., lo + 2*(kSpan-1).
  for (u64 lo = 3; lo <= limit; lo += 2 * kSpan) {
    const u64 hi = std::min(limit, lo + 2 * (kSpan - 1));
    const u64 count = (hi - lo) / 2 + 1;
    std::fill(mark.begin(), mark.begin() + count, 1);
    for (u64 p : base) {
      if (p * p > hi) break;
      u64 start = std::max(p * p, (lo + p - 1) / p * p);
      if (start % 2 == 0) start += p;
      for (u64 j = start; j <= hi; j += 2 * p) mark[(j - lo) / 2] = 0;
    }
    for (u64 i = 0; i < count; ++i) {
      const u64 v = lo + 2 * i;
      if (mark[i] && v % 4 == 1) out.push_back(static_cast<std::uint32_t>(v));
    }
  }
  return out;
}

}  // namespace quadseq
