#pragma once

// Exact 64-bit modular arithmetic and the root-construction primitives for
// 4z^2 + 1 = 0 (mod m): primitive-root recipe, Hensel lifting and CRT.
//
// Every function here is pure. Results that do not fit in 64 bits raise
// RangeError instead of wrapping.

#include <cstdint>
#include <vector>

#include "quadseq/errors.hpp"

namespace quadseq {

using u64 = std::uint64_t;
using u128 = unsigned __int128;

/// Odd modulus >= 3. Every divisor of 4n^2+1 is odd.
class Modulus {
 public:
  explicit Modulus(u64 value);

  u64 value() const noexcept { return value_; }
  friend bool operator==(Modulus, Modulus) = default;

 private:
  u64 value_;
};

struct PrimeFactor {
  u64 prime = 0;
  unsigned exponent = 0;

  friend bool operator==(const PrimeFactor&, const PrimeFactor&) = default;
};

/// p^e with p prime, p = 1 (mod 4), e >= 1 and p^e < 2^64.
class PrimePower {
 public:
  PrimePower(u64 p, unsigned e);

  u64 prime() const noexcept { return p_; }
  unsigned exponent() const noexcept { return e_; }
  u64 value() const noexcept { return value_; }

 private:
  u64 p_;
  unsigned e_;
  u64 value_;
};

/// Residues z in [1, m-1] with 4z^2+1 = 0 (mod m), ascending.
/// `nu` is the number of distinct prime factors of m.
struct RootSet {
  Modulus modulus;
  std::vector<u64> roots;
  unsigned nu = 0;
};

// Checked helpers. Throw RangeError on overflow.
u64 checked_mul(u64 a, u64 b);
u64 checked_add(u64 a, u64 b);

/// S_n = 4n^2 + 1.
u64 term_value(u64 n);

/// Largest s with s*s <= v.
u64 isqrt(u64 v);

/// (a*b) mod m through a 128-bit product. Requires a, b < m.
inline u64 mul_mod(u64 a, u64 b, Modulus m) {
  return static_cast<u64>(static_cast<u128>(a) * b % m.value());
}

u64 pow_mod(u64 base, u64 exp, Modulus m);

/// Inverse of a modulo m; throws std::invalid_argument when gcd(a, m) != 1.
u64 inverse_mod(u64 a, Modulus m);

/// (4z^2 + 1) mod m.
u64 quad_residue(u64 z, Modulus m);

/// Deterministic for the whole 64-bit range.
bool is_prime(u64 v);

/// Prime factorization sorted by prime (Pollard-Brent rho + is_prime).
/// factorize(1) is empty.
std::vector<PrimeFactor> factorize(u64 v);

/// Smallest generator of (Z/pZ)^*. Requires p prime, p = 1 (mod 4).
u64 primitive_root(u64 p);

/// Least root r of 4r^2+1 = 0 (mod p), 1 <= r <= (p-1)/2. Built from the
/// primitive root g as t = g^((p-1)/4); r = t/2 for even t, else (p-t)/2.
u64 sqrt_minus_one(u64 p);

/// Same result as sqrt_minus_one, but t comes from the smallest quadratic
/// non-residue instead of a primitive root. No factoring of p-1 needed.
u64 sqrt_minus_one_by_nonresidue(u64 p);

/// Maps a square root t of -1 mod p to the least root of 4r^2+1.
u64 halve_fourth_root(u64 t, u64 p);

/// Lifts `root` (a root mod p^(e-1)) to the unique root mod target = p^e that
/// is congruent to it mod p^(e-1). Requires target.exponent() >= 2.
u64 hensel_lift(u64 root, const PrimePower& target);

/// All roots modulo m1*m2 from complete root sets modulo coprime m1, m2.
RootSet crt_combine(const RootSet& a, const RootSet& b);

}  // namespace quadseq
