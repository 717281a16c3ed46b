#include "quadseq/modarith.hpp"

#include <algorithm>
#include <array>
#include <numeric>
#include <stdexcept>
#include <string>

namespace quadseq {

namespace {

constexpr std::array<u64, 12> kSmallPrimes = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};

// Miller-Rabin with the first twelve primes as bases is exact below 3.3e24.
bool miller_rabin(u64 n) {
  const Modulus m(n);
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  for (u64 a : kSmallPrimes) {
    u64 x = pow_mod(a % n, d, m);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = mul_mod(x, x, m);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

// Nontrivial factor of an odd composite n.
u64 pollard_brent(u64 n) {
  const Modulus m(n);
  for (u64 c = 1;; ++c) {
    auto f = [&](u64 x) { return static_cast<u64>((static_cast<u128>(x) * x + c) % n); };
    u64 y = 2, x = 2, g = 1, q = 1, ys = 2;
    constexpr u64 kBatch = 128;
    u64 r = 1;
    do {
      x = y;
      for (u64 i = 0; i < r; ++i) y = f(y);
      u64 k = 0;
      do {
        ys = y;
        for (u64 i = 0; i < std::min(kBatch, r - k); ++i) {
          y = f(y);
          q = mul_mod(q, x > y ? x - y : y - x, m);
        }
        g = std::gcd(q, n);
        k += kBatch;
      } while (k < r && g == 1);
      r *= 2;
    } while (g == 1);
    if (g == n) {
      do {
        ys = f(ys);
        g = std::gcd(x > ys ? x - ys : ys - x, n);
      } while (g == 1);
    }
    if (g != n) return g;
  }
}

void factor_into(u64 n, std::vector<u64>& out) {
  if (n == 1) return;
  if (is_prime(n)) {
    out.push_back(n);
    return;
  }
  const u64 d = pollard_brent(n);
  factor_into(d, out);
  factor_into(n / d, out);
}

void require_prime_1_mod_4(u64 p, const char* who) {
  if (p < 2 || !is_prime(p)) {
    throw std::invalid_argument(std::string(who) + ": " + std::to_string(p) + " is not prime");
  }
  if (p % 4 != 1) throw NoRootsError(p, p);
}

}  // namespace

Modulus::Modulus(u64 value) : value_(value) {
  if (value < 3 || value % 2 == 0) {
    throw std::invalid_argument("modulus must be odd and >= 3, got " + std::to_string(value));
  }
}

PrimePower::PrimePower(u64 p, unsigned e) : p_(p), e_(e), value_(1) {
  if (e == 0) throw std::invalid_argument("prime power exponent must be >= 1");
  require_prime_1_mod_4(p, "PrimePower");
  for (unsigned i = 0; i < e; ++i) value_ = checked_mul(value_, p);
}

u64 checked_mul(u64 a, u64 b) {
  u64 out = 0;
  if (__builtin_mul_overflow(a, b, &out)) {
    throw RangeError(std::to_string(a) + " * " + std::to_string(b) + " exceeds 64 bits");
  }
  return out;
}

u64 checked_add(u64 a, u64 b) {
  u64 out = 0;
  if (__builtin_add_overflow(a, b, &out)) {
    throw RangeError(std::to_string(a) + " + " + std::to_string(b) + " exceeds 64 bits");
  }
  return out;
}

u64 term_value(u64 n) {
  try {
    return checked_add(checked_mul(4, checked_mul(n, n)), 1);
  } catch (const RangeError&) {
    throw RangeError("4n^2+1 exceeds 64 bits for n = " + std::to_string(n));
  }
}

u64 isqrt(u64 v) {
  u64 s = static_cast<u64>(__builtin_sqrtl(static_cast<long double>(v)));
  while (s > 0 && (s > 0xFFFFFFFFull || s * s > v)) --s;
  while (s < 0xFFFFFFFFull && (s + 1) * (s + 1) <= v) ++s;
  return s;
}

u64 pow_mod(u64 base, u64 exp, Modulus m) {
  u64 result = 1;
  base %= m.value();
  while (exp > 0) {
    if (exp & 1) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1;
  }
  return result;
}

u64 inverse_mod(u64 a, Modulus m) {
  __int128 old_r = a % m.value(), r = m.value();
  __int128 old_s = 1, s = 0;
  while (r != 0) {
    const __int128 q = old_r / r;
    std::swap(old_r, r);
    r -= q * old_r;
    std::swap(old_s, s);
    s -= q * old_s;
  }
  if (old_r != 1) {
    throw std::invalid_argument(std::to_string(a) + " is not invertible mod " +
                                std::to_string(m.value()));
  }
  __int128 inv = old_s % static_cast<__int128>(m.value());
  if (inv < 0) inv += m.value();
  return static_cast<u64>(inv);
}

u64 quad_residue(u64 z, Modulus m) {
  const u64 zr = z % m.value();
  const u64 sq = mul_mod(zr, zr, m);
  return static_cast<u64>((static_cast<u128>(sq) * 4 + 1) % m.value());
}

bool is_prime(u64 v) {
  if (v < 2) return false;
  for (u64 p : kSmallPrimes) {
    if (v == p) return true;
    if (v % p == 0) return false;
  }
  if (v < 41 * 41) return true;
  return miller_rabin(v);
}

std::vector<PrimeFactor> factorize(u64 v) {
  if (v == 0) throw std::invalid_argument("factorize(0)");
  std::vector<u64> primes;
  for (u64 p = 2; p < 1000 && p * p <= v; p += (p == 2 ? 1 : 2)) {
    while (v % p == 0) {
      primes.push_back(p);
      v /= p;
    }
  }
  factor_into(v, primes);
  std::sort(primes.begin(), primes.end());

  std::vector<PrimeFactor> out;
  for (u64 p : primes) {
    if (!out.empty() && out.back().prime == p) {
      ++out.back().exponent;
    } else {
      out.push_back({p, 1});
    }
  }
  return out;
}

u64 primitive_root(u64 p) {
  require_prime_1_mod_4(p, "primitive_root");
  const Modulus m(p);
  const auto order_factors = factorize(p - 1);
  for (u64 g = 2; g < p; ++g) {
    const bool generator = std::all_of(order_factors.begin(), order_factors.end(),
                                       [&](const PrimeFactor& q) {
                                         return pow_mod(g, (p - 1) / q.prime, m) != 1;
                                       });
    if (generator) return g;
  }
  throw std::logic_error("no primitive root found for prime " + std::to_string(p));
}

u64 halve_fourth_root(u64 t, u64 p) {
  return (t % 2 == 0) ? t / 2 : (p - t) / 2;
}

u64 sqrt_minus_one(u64 p) {
  require_prime_1_mod_4(p, "sqrt_minus_one");
  const Modulus m(p);
  const u64 t = pow_mod(primitive_root(p), (p - 1) / 4, m);
  const u64 r = halve_fourth_root(t, p);
  if (quad_residue(r, m) != 0 || r < 1 || r > (p - 1) / 2) {
    throw std::logic_error("sqrt_minus_one postcondition failed for p = " + std::to_string(p));
  }
  return r;
}

u64 sqrt_minus_one_by_nonresidue(u64 p) {
  require_prime_1_mod_4(p, "sqrt_minus_one_by_nonresidue");
  const Modulus m(p);
  u64 c = 2;
  while (pow_mod(c, (p - 1) / 2, m) != p - 1) ++c;
  const u64 r = halve_fourth_root(pow_mod(c, (p - 1) / 4, m), p);
  if (quad_residue(r, m) != 0) {
    throw std::logic_error("non-residue root failed for p = " + std::to_string(p));
  }
  return r;
}

u64 hensel_lift(u64 root, const PrimePower& target) {
  if (target.exponent() < 2) {
    throw std::invalid_argument("hensel_lift target must have exponent >= 2");
  }
  const u64 p = target.prime();
  const u64 lower = target.value() / p;
  if (root >= lower || quad_residue(root, Modulus(lower)) != 0) {
    throw std::invalid_argument(std::to_string(root) + " is not a root of 4z^2+1 mod " +
                                std::to_string(lower));
  }
  const Modulus upper(target.value());
  const Modulus small(p);
  // 4z^2+1 = lower * c (mod upper); solve c + 8*root*t = 0 (mod p).
  const u64 c = (quad_residue(root, upper) / lower) % p;
  const u64 slope_inv = inverse_mod(mul_mod(8 % p, root % p, small), small);
  const u64 t = mul_mod((p - c) % p, slope_inv, small);
  const u64 lifted = root + t * lower;
  if (quad_residue(lifted, upper) != 0) {
    throw std::logic_error("hensel_lift postcondition failed");
  }
  return lifted;
}

RootSet crt_combine(const RootSet& a, const RootSet& b) {
  const u64 m1 = a.modulus.value();
  const u64 m2 = b.modulus.value();
  if (std::gcd(m1, m2) != 1) {
    throw std::invalid_argument("crt_combine: moduli " + std::to_string(m1) + " and " +
                                std::to_string(m2) + " are not coprime");
  }
  if (a.roots.empty() || b.roots.empty()) {
    throw std::invalid_argument("crt_combine: empty root set");
  }
  const Modulus product(checked_mul(m1, m2));
  const Modulus mod2 = b.modulus;
  const u64 inv = inverse_mod(m1 % m2, mod2);

  RootSet out{product, {}, a.nu + b.nu};
  out.roots.reserve(a.roots.size() * b.roots.size());
  for (u64 x : a.roots) {
    const u64 x2 = x % m2;
    for (u64 y : b.roots) {
      const u64 k = mul_mod((y + m2 - x2) % m2, inv, mod2);
      const u64 z = x + m1 * k;
      if (quad_residue(z, product) != 0) {
        throw std::logic_error("crt_combine produced a non-root");
      }
      out.roots.push_back(z);
    }
  }
  std::sort(out.roots.begin(), out.roots.end());
  return out;
}

}  // namespace quadseq
