#include "quadseq/modarith.hpp"

#include <gtest/gtest.h>

#include <random>

#include "quadseq/oracle.hpp"

namespace quadseq {
namespace {

// Smallest g in [2, p) whose multiplicative order, found by repeated
// multiplication, is p - 1.
u64 primitive_root_by_order(u64 p) {
  for (u64 g = 2; g < p; ++g) {
    u64 x = g, order = 1;
    while (x != 1) {
      x = x * g % p;
      ++order;
    }
    if (order == p - 1) return g;
  }
  return 0;
}

std::vector<bool> eratosthenes(u64 limit) {
  std::vector<bool> prime(limit + 1, true);
  prime[0] = prime[1] = false;
  for (u64 i = 2; i * i <= limit; ++i) {
    if (!prime[i]) continue;
    for (u64 j = i * i; j <= limit; j += i) prime[j] = false;
  }
  return prime;
}

TEST(ModulusTest, RejectsEvenAndSmall) {
  EXPECT_THROW(Modulus(0), std::invalid_argument);
  EXPECT_THROW(Modulus(1), std::invalid_argument);
  EXPECT_THROW(Modulus(10), std::invalid_argument);
  EXPECT_EQ(Modulus(3).value(), 3u);
}

TEST(MulModTest, ZeroAndIdentity) {
  const Modulus m(1'000'003);
  EXPECT_EQ(mul_mod(0, 123456, m), 0u);
  EXPECT_EQ(mul_mod(1, 123456, m), 123456u);
}

TEST(MulModTest, WidensPastSixtyFourBits) {
  // Reference value from a big-integer product: (2^32-1)^2 mod (2^64-59).
  const Modulus m(18446744073709551557ull);
  EXPECT_EQ(mul_mod(0xFFFFFFFFull, 0xFFFFFFFFull, m), 18446744065119617025ull);
  // (m-1)^2 = 1 (mod m)
  EXPECT_EQ(mul_mod(m.value() - 1, m.value() - 1, m), 1u);
}

TEST(PowModTest, Examples) {
  EXPECT_EQ(pow_mod(7, 0, Modulus(13)), 1u);
  EXPECT_EQ(pow_mod(2, 3, Modulus(13)), 8u);
  EXPECT_EQ(pow_mod(2, 1, Modulus(5)), 2u);
}

TEST(IsPrimeTest, Examples) {
  EXPECT_TRUE(is_prime(2));
  EXPECT_FALSE(is_prime(3601));  // 13 * 277
  EXPECT_TRUE(is_prime(1601));
  EXPECT_FALSE(is_prime(0));
  EXPECT_FALSE(is_prime(1));
}

TEST(IsPrimeTest, LargeKnownValues) {
  EXPECT_TRUE(is_prime(18446744073709551557ull));  // 2^64 - 59
  EXPECT_TRUE(is_prime((u64{1} << 61) - 1));
  EXPECT_FALSE(is_prime(18446744073709551615ull));
  EXPECT_FALSE(is_prime(561));                     // Carmichael
  EXPECT_FALSE(is_prime(3215031751ull));           // strong pseudoprime to 2, 3, 5, 7
  EXPECT_FALSE(is_prime(3825123056546413051ull));  // strong pseudoprime to bases <= 23
  EXPECT_FALSE(is_prime(4294967297ull));           // 641 * 6700417
}

TEST(IsPrimeTest, MatchesEratosthenesUpToTenMillion) {
  constexpr u64 kLimit = 10'000'000;
  const auto prime = eratosthenes(kLimit);
  for (u64 v = 2; v <= kLimit; ++v) {
    ASSERT_EQ(is_prime(v), prime[v]) << v;
  }
}

TEST(FactorizeTest, KnownAndRandom) {
  const std::vector<PrimeFactor> expected = {{3, 1},   {5, 1},     {17, 1},     {257, 1},
                                             {641, 1}, {65537, 1}, {6700417, 1}};
  EXPECT_EQ(factorize(18446744073709551615ull), expected);
  EXPECT_TRUE(factorize(1).empty());

  std::mt19937_64 rng(7);
  for (int i = 0; i < 2000; ++i) {
    const u64 v = (rng() % 4'000'000'000ull) | 1;
    if (v < 3) continue;
    ASSERT_EQ(factorize(v), oracle::naive_factor(v)) << v;
  }
}

TEST(CheckedTest, OverflowIsAnError) {
  EXPECT_THROW(checked_mul(u64{1} << 32, u64{1} << 32), RangeError);
  EXPECT_THROW(checked_add(~u64{0}, 1), RangeError);
  EXPECT_EQ(term_value(2147483647ull), 18446744056529682437ull);
  EXPECT_THROW(term_value(2147483648ull), RangeError);
  EXPECT_THROW(PrimePower(5, 28), RangeError);
  EXPECT_EQ(PrimePower(5, 27).value(), 7450580596923828125ull);
}

TEST(IsqrtTest, ExactAroundSquares) {
  for (u64 s : {u64{0}, u64{1}, u64{2}, u64{1000}, u64{4294967295ull}}) {
    EXPECT_EQ(isqrt(s * s), s);
    if (s > 0) EXPECT_EQ(isqrt(s * s - 1), s - 1);
  }
  EXPECT_EQ(isqrt(~u64{0}), 4294967295ull);
}

TEST(PrimitiveRootTest, Examples) {
  EXPECT_EQ(primitive_root(5), 2u);
  EXPECT_EQ(primitive_root(13), 2u);
  EXPECT_EQ(primitive_root(17), 3u);
}

TEST(PrimitiveRootTest, Rejections) {
  EXPECT_THROW(primitive_root(7), NoRootsError);
  EXPECT_THROW(primitive_root(21), std::invalid_argument);
  EXPECT_THROW(primitive_root(2), NoRootsError);
}

TEST(PrimitiveRootTest, SmallestByExhaustiveOrderCheck) {
  const auto prime = eratosthenes(10'000);
  for (u64 p = 5; p <= 10'000; p += 4) {
    if (!prime[p]) continue;
    const u64 g = primitive_root(p);
    ASSERT_EQ(g, primitive_root_by_order(p)) << p;
    ASSERT_EQ(pow_mod(g, p - 1, Modulus(p)), 1u);
  }
}

TEST(SqrtMinusOneTest, Examples) {
  EXPECT_EQ(sqrt_minus_one(5), 1u);   // S_1 = 5
  EXPECT_EQ(sqrt_minus_one(13), 4u);  // S_4 = 65
  EXPECT_EQ(sqrt_minus_one(17), 2u);  // S_2 = 17
  EXPECT_THROW(sqrt_minus_one(7), NoRootsError);
  EXPECT_THROW(sqrt_minus_one(9), std::invalid_argument);
}

TEST(SqrtMinusOneTest, LeastRootForAllPrimesBelow1e5) {
  const auto prime = eratosthenes(100'000);
  for (u64 p = 5; p <= 100'000; p += 4) {
    if (!prime[p]) continue;
    const u64 r = sqrt_minus_one(p);
    ASSERT_EQ(quad_residue(r, Modulus(p)), 0u) << p;
    ASSERT_GE(r, 1u);
    ASSERT_LE(r, (p - 1) / 2);
    ASSERT_EQ(r, sqrt_minus_one_by_nonresidue(p)) << p;
  }
}

TEST(SqrtMinusOneTest, NoRootForPrimesThreeModFour) {
  const auto prime = eratosthenes(100'000);
  for (u64 p = 3; p <= 100'000; p += 4) {
    if (!prime[p]) continue;
    for (u64 z = 1; z < p; ++z) ASSERT_NE((4 * z * z + 1) % p, 0u) << p << " " << z;
  }
}

TEST(HenselLiftTest, Examples) {
  EXPECT_EQ(hensel_lift(1, PrimePower(5, 2)), 16u);
  EXPECT_EQ(hensel_lift(4, PrimePower(5, 2)), 9u);    // S_9 = 325 = 5^2 * 13
  EXPECT_EQ(hensel_lift(2, PrimePower(17, 2)), 19u);  // S_19 = 1445 = 5 * 17^2
}

TEST(HenselLiftTest, RejectsNonRoots) {
  EXPECT_THROW(hensel_lift(2, PrimePower(5, 2)), std::invalid_argument);
  EXPECT_THROW(hensel_lift(7, PrimePower(5, 2)), std::invalid_argument);  // not reduced
  EXPECT_THROW(hensel_lift(1, PrimePower(5, 1)), std::invalid_argument);
}

TEST(HenselLiftTest, RepeatedLiftsMatchScanUpToOneMillion) {
  const auto prime = eratosthenes(1000);
  for (u64 p = 5; p * p <= 1'000'000; p += 4) {
    if (!prime[p]) continue;
    u64 lo = sqrt_minus_one(p), hi = p - lo;
    for (unsigned e = 2;; ++e) {
      const PrimePower pp(p, e);
      if (pp.value() > 1'000'000) break;
      lo = hensel_lift(lo, pp);
      hi = hensel_lift(hi, pp);
      const std::vector<u64> lifted = {std::min(lo, hi), std::max(lo, hi)};
      ASSERT_EQ(lifted, oracle::naive_root_scan(pp.value())) << p << "^" << e;
    }
  }
}

RootSet scanned(u64 m, unsigned nu) { return RootSet{Modulus(m), oracle::naive_root_scan(m), nu}; }

TEST(CrtCombineTest, Examples) {
  const RootSet five{Modulus(5), {1, 4}, 1};
  const RootSet thirteen{Modulus(13), {4, 9}, 1};
  const RootSet r65 = crt_combine(five, thirteen);
  EXPECT_EQ(r65.modulus.value(), 65u);
  EXPECT_EQ(r65.roots, (std::vector<u64>{4, 9, 56, 61}));
  EXPECT_EQ(r65.nu, 2u);

  const RootSet r629 = crt_combine(RootSet{Modulus(17), {2, 15}, 1}, RootSet{Modulus(37), {3, 34}, 1});
  EXPECT_EQ(r629.roots, (std::vector<u64>{151, 219, 410, 478}));
}

TEST(CrtCombineTest, Rejections) {
  const RootSet five{Modulus(5), {1, 4}, 1};
  EXPECT_THROW(crt_combine(five, RootSet{Modulus(25), {9, 16}, 1}), std::invalid_argument);
  EXPECT_THROW(crt_combine(five, RootSet{Modulus(21), {}, 0}), std::invalid_argument);
}

// For squarefree m in PP with at least two primes, split off the smallest
// prime p and combine scan(p) with scan(m/p).
void expect_crt_matches_scan(u64 m) {
  const auto f = oracle::naive_factor(m);
  if (f.size() < 2) return;
  for (const auto& pf : f) {
    if (pf.exponent != 1 || pf.prime % 4 != 1) return;
  }
  const u64 p = f.front().prime;
  const auto nu = static_cast<unsigned>(f.size());
  const RootSet combined = crt_combine(scanned(p, 1), scanned(m / p, nu - 1));
  ASSERT_EQ(combined.roots, oracle::naive_root_scan(m)) << m;
  ASSERT_EQ(combined.roots.size(), u64{1} << nu);
}

TEST(CrtCombineTest, MatchesScanForAllSquarefreeBelow30000) {
  for (u64 m = 65; m <= 30'000; m += 2) expect_crt_matches_scan(m);
}

TEST(CrtCombineTest, MatchesScanForSampledSquarefreeBelowOneMillion) {
  std::mt19937_64 rng(2024);
  int tested = 0;
  while (tested < 400) {
    const u64 m = (rng() % 1'000'000) | 1;
    const auto f = oracle::naive_factor(std::max<u64>(m, 3));
    const bool usable = f.size() >= 2 && std::all_of(f.begin(), f.end(), [](const PrimeFactor& x) {
                          return x.exponent == 1 && x.prime % 4 == 1;
                        });
    if (!usable) continue;
    expect_crt_matches_scan(m);
    ++tested;
  }
}

}  // namespace
}  // namespace quadseq
