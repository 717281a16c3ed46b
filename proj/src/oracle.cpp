#include "quadseq/oracle.hpp"

#include <numeric>
#include <stdexcept>
#include <string>

namespace quadseq::oracle {

std::vector<PrimeFactor> naive_factor(u64 v) {
  if (v < 3 || v % 2 == 0) {
    throw std::invalid_argument("naive_factor needs an odd value >= 3, got " + std::to_string(v));
  }
  std::vector<PrimeFactor> out;
  for (u64 d = 3; d <= v / d; d += 2) {
    if (v % d != 0) continue;
    PrimeFactor f{d, 0};
    while (v % d == 0) {
      v /= d;
      ++f.exponent;
    }
    out.push_back(f);
  }
  if (v > 1) out.push_back({v, 1});
  return out;
}

std::vector<u64> naive_root_scan(u64 m) {
  if (m < 3 || m % 2 == 0) {
    throw std::invalid_argument("naive_root_scan needs an odd modulus >= 3");
  }
  // value tracks 4z^2+1 mod m; stepping z -> z+1 adds 8z+4.
  std::vector<u64> out;
  u64 value = 5 % m;
  u64 step = 12 % m;
  const u64 eight = 8 % m;
  for (u64 z = 1; z < m; ++z) {
    if (value == 0) out.push_back(z);
    value += step;
    if (value >= m) value -= m;
    step += eight;
    if (step >= m) step -= m;
  }
  return out;
}

u64 naive_coprime_count(std::span<const u64> primes, u64 horizon) {
  if (horizon > kCoprimeScanCap) {
    throw OracleCapExceeded("naive_coprime_count horizon " + std::to_string(horizon) +
                            " is above the oracle cap; use exact_coprime_count");
  }
  u64 modulus = 1;
  for (u64 p : primes) modulus = checked_mul(modulus, p);
  u64 count = 0;
  for (u64 n = 1; n <= horizon; ++n) {
    if (std::gcd(4 * n * n + 1, modulus) == 1) ++count;
  }
  return count;
}

}  // namespace quadseq::oracle
