#include "quadseq/roots.hpp"

#include <algorithm>
#include <string>

namespace quadseq {

namespace {

void validate_factorization(u64 m, std::span<const PrimeFactor> factorization) {
  u64 product = 1;
  for (std::size_t i = 0; i < factorization.size(); ++i) {
    const auto& f = factorization[i];
    if (f.exponent == 0 || !is_prime(f.prime)) {
      throw BadFactorization("factor " + std::to_string(f.prime) + "^" +
                             std::to_string(f.exponent) + " is not a prime power");
    }
    for (std::size_t j = 0; j < i; ++j) {
      if (factorization[j].prime == f.prime) {
        throw BadFactorization("prime " + std::to_string(f.prime) + " listed twice");
      }
    }
    try {
      for (unsigned e = 0; e < f.exponent; ++e) product = checked_mul(product, f.prime);
    } catch (const RangeError&) {
      throw BadFactorization("factorization overflows and cannot equal " + std::to_string(m));
    }
  }
  if (product != m) {
    throw BadFactorization("factorization multiplies to " + std::to_string(product) +
                           ", not " + std::to_string(m));
  }
}

RootSet prime_power_roots(const PrimeFactor& f) {
  const u64 p = f.prime;
  u64 lo = sqrt_minus_one(p);
  u64 hi = p - lo;
  for (unsigned e = 2; e <= f.exponent; ++e) {
    const PrimePower target(p, e);
    lo = hensel_lift(lo, target);
    hi = hensel_lift(hi, target);
  }
  const PrimePower pp(p, f.exponent);
  return RootSet{Modulus(pp.value()), {std::min(lo, hi), std::max(lo, hi)}, 1};
}

}  // namespace

RootSet all_roots(u64 m, std::span<const PrimeFactor> factorization) {
  if (m < 2) throw std::invalid_argument("all_roots requires m >= 2");
  validate_factorization(m, factorization);
  for (const auto& f : factorization) {
    if (f.prime % 4 != 1) throw NoRootsError(m, f.prime);
  }

  std::vector<PrimeFactor> sorted(factorization.begin(), factorization.end());
  std::sort(sorted.begin(), sorted.end(),
            [](const PrimeFactor& a, const PrimeFactor& b) { return a.prime < b.prime; });

  RootSet acc = prime_power_roots(sorted.front());
  for (std::size_t i = 1; i < sorted.size(); ++i) {
    acc = crt_combine(acc, prime_power_roots(sorted[i]));
  }
  check_root_set(acc);
  return acc;
}

RootSet all_roots(u64 m) {
  if (m < 2) throw std::invalid_argument("all_roots requires m >= 2");
  const auto factors = factorize(m);
  return all_roots(m, factors);
}

RootSummary root_summary(u64 m, std::span<const PrimeFactor> factorization) {
  const RootSet set = all_roots(m, factorization);
  const u64 r = set.roots.front();
  const u128 value = static_cast<u128>(r) * r * 4 + 1;
  const u64 x = static_cast<u64>(value / m);
  if (static_cast<u128>(x) * m != value) {
    throw std::logic_error("x(m) is not exact for m = " + std::to_string(m));
  }
  if (r < first_entry_lower_bound(m) || r > (m - 1) / 2 || x > m - 2) {
    throw std::logic_error("first-entry bounds violated for m = " + std::to_string(m));
  }
  return RootSummary{set.modulus, r, x};
}

RootSummary root_summary(u64 m) {
  if (m < 2) throw std::invalid_argument("root_summary requires m >= 2");
  const auto factors = factorize(m);
  return root_summary(m, factors);
}

bool verify_first_degree(u64 p) {
  const PrimePower square(p, 2);
  const PrimeFactor once{p, 1};
  const PrimeFactor twice{p, 2};
  return root_summary(p, std::span(&once, 1)).r < root_summary(square.value(), std::span(&twice, 1)).r;
}

u64 first_entry_lower_bound(u64 m) {
  if (m == 0) throw std::invalid_argument("first_entry_lower_bound(0)");
  const u64 s = isqrt(m - 1);
  if (s * s == m - 1) return (s + 1) / 2;
  return s / 2 + 1;
}

void check_root_set(const RootSet& set) {
  const u64 m = set.modulus.value();
  const auto fail = [&](const std::string& what) {
    throw std::logic_error("root set mod " + std::to_string(m) + ": " + what);
  };
  if (!std::is_sorted(set.roots.begin(), set.roots.end()) ||
      std::adjacent_find(set.roots.begin(), set.roots.end()) != set.roots.end()) {
    fail("not strictly increasing");
  }
  for (u64 z : set.roots) {
    if (z < 1 || z >= m) fail("root " + std::to_string(z) + " out of [1, m-1]");
    if (quad_residue(z, set.modulus) != 0) fail(std::to_string(z) + " is not a root");
    if (!std::binary_search(set.roots.begin(), set.roots.end(), m - z)) {
      fail("missing companion of " + std::to_string(z));
    }
  }
  if (set.nu >= 64 || set.roots.size() != (u64{1} << set.nu)) {
    fail("size " + std::to_string(set.roots.size()) + " != 2^" + std::to_string(set.nu));
  }
}

}  // namespace quadseq
