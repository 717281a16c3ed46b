#include "quadseq/census.hpp"

#include <gtest/gtest.h>

#include <bit>
#include <numeric>

#include "quadseq/oracle.hpp"

namespace quadseq {
namespace {

PrimeBasis basis_of(std::initializer_list<u64> primes) {
  const std::vector<u64> v(primes);
  return basis_from_primes(v);
}

TEST(InclusionExclusionTest, SingleFiveAtHorizonFive) {
  std::vector<DivisorTerm> table;
  EXPECT_EQ(inclusion_exclusion_count(basis_of({5}), 5, &table), 3u);
  ASSERT_EQ(table.size(), 2u);
  EXPECT_EQ(table[0].d, 1u);
  EXPECT_EQ(table[0].roots, 1u);
  EXPECT_EQ(table[0].struck, 5u);
  EXPECT_EQ(table[1].d, 5u);
  EXPECT_EQ(table[1].nu, 1u);
  EXPECT_EQ(table[1].roots, 2u);
  EXPECT_EQ(table[1].struck, 2u);  // floor(6/5) + floor(9/5)
}

TEST(InclusionExclusionTest, Examples) {
  EXPECT_EQ(inclusion_exclusion_count(basis_of({5, 17, 37}), 3145), 1575u);
  EXPECT_EQ(inclusion_exclusion_count(basis_of({5, 13}), 100), 50u);
  EXPECT_EQ(inclusion_exclusion_count(PrimeBasis{}, 77), 77u);
  EXPECT_EQ(inclusion_exclusion_count(basis_of({5}), 0), 0u);
}

TEST(ExactCountTest, Examples) {
  EXPECT_EQ(exact_coprime_count(basis_of({5}), 5), 3u);
  EXPECT_EQ(exact_coprime_count(basis_of({5, 17}), 85), 45u);
  EXPECT_EQ(exact_coprime_count(PrimeBasis{}, 1234), 1234u);
  EXPECT_THROW(exact_coprime_count(basis_of({5}), kMaxCensusHorizon + 1), RangeError);
}

TEST(ProductFormulaTest, Examples) {
  EXPECT_EQ(product_formula(basis_of({5})), 3u);
  EXPECT_EQ(product_formula(basis_of({5, 17})), 45u);
  EXPECT_EQ(product_formula(basis_of({5, 17, 37, 13})), 17325u);
  EXPECT_THROW(product_formula(PrimeBasis{}), std::invalid_argument);
}

TEST(MainIdentityTest, SmallK) {
  const std::vector<std::pair<std::size_t, u64>> expected = {{1, 3}, {2, 45}, {3, 1575}, {4, 17325}};
  for (const auto& [k, count] : expected) {
    const CensusReport r = verify_main_identity(k);
    EXPECT_EQ(r.horizon, r.modulus);
    EXPECT_EQ(r.ie_count, count) << k;
    EXPECT_EQ(r.exact_count, count) << k;
    EXPECT_EQ(r.product_value, count) << k;
    EXPECT_TRUE(r.identity_holds());
    EXPECT_EQ(r.nu_table.size(), std::size_t{1} << k);
  }
  EXPECT_EQ(verify_main_identity(4).modulus, 40885u);
}

TEST(MainIdentityTest, LargerBasesStillMatch) {
  // N grows quickly: k = 6 gives 5*17*37*13*101*29 = 119753465.
  for (std::size_t k = 5; k <= 6; ++k) {
    const CensusReport r = verify_main_identity(k);
    EXPECT_TRUE(r.identity_holds()) << k;
  }
  EXPECT_THROW(verify_main_identity(8), RangeError);
}

TEST(MainIdentityTest, BracketRemovalAtNForArbitraryBases) {
  const auto pool = first_k_basis(8).primes();
  for (u64 mask = 1; mask < 256; ++mask) {
    std::vector<u64> primes;
    u64 n = 1;
    for (std::size_t i = 0; i < 8; ++i) {
      if (mask & (u64{1} << i)) {
        primes.push_back(pool[i]);
        n *= pool[i];
      }
    }
    if (primes.size() > 6) continue;
    const PrimeBasis basis = basis_from_primes(primes);
    ASSERT_EQ(inclusion_exclusion_count(basis, n), product_formula(basis)) << mask;
  }
}

TEST(CensusTest, ReportAtExplicitHorizon) {
  const CensusReport r = census(basis_of({5, 13}), 100);
  EXPECT_EQ(r.modulus, 65u);
  EXPECT_EQ(r.ie_count, 50u);
  EXPECT_EQ(r.exact_count, 50u);
  EXPECT_TRUE(r.ie_matches_exact());
  EXPECT_FALSE(r.identity_holds());
  EXPECT_THROW(census(PrimeBasis{}), std::invalid_argument);
}

// Every basis of at most four primes from the first eight, every horizon up
// to 1e4: the formula equals a running gcd count.
TEST(InclusionExclusionTest, ExactForSmallBasesAndAllHorizons) {
  const auto pool = first_k_basis(8).primes();
  for (u64 mask = 1; mask < 256; ++mask) {
    if (std::popcount(mask) > 4) continue;
    std::vector<u64> primes;
    u64 n_prod = 1;
    for (std::size_t i = 0; i < 8; ++i) {
      if (mask & (u64{1} << i)) {
        primes.push_back(pool[i]);
        n_prod *= pool[i];
      }
    }
    const PrimeBasis basis = basis_from_primes(primes);
    u64 running = 0;
    for (u64 n = 1; n <= 10'000; ++n) {
      if (std::gcd(4 * n * n + 1, n_prod) == 1) ++running;
      ASSERT_EQ(inclusion_exclusion_count(basis, n), running) << "mask " << mask << " n " << n;
    }
    ASSERT_EQ(exact_coprime_count(basis, 10'000), running) << mask;
  }
}

TEST(ExactCountTest, MatchesOracleOnSampledCases) {
  const auto pool = first_k_basis(10).primes();
  for (std::size_t k = 1; k <= 10; ++k) {
    const std::vector<u64> primes(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(k));
    const PrimeBasis basis = basis_from_primes(primes);
    for (u64 horizon : {u64{1}, u64{999}, u64{65'536}, u64{1'000'000}}) {
      ASSERT_EQ(exact_coprime_count(basis, horizon), oracle::naive_coprime_count(primes, horizon));
    }
  }
}

TEST(ExactCountTest, Monotone) {
  const auto pool = first_k_basis(6).primes();
  u64 previous_basis_count = ~u64{0};
  for (std::size_t k = 1; k <= 6; ++k) {
    const std::vector<u64> primes(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(k));
    const PrimeBasis basis = basis_from_primes(primes);
    u64 previous = 0;
    for (u64 horizon = 0; horizon <= 3000; horizon += 37) {
      const u64 c = exact_coprime_count(basis, horizon);
      ASSERT_GE(c, previous);
      previous = c;
    }
    const u64 c = exact_coprime_count(basis, 50'000);
    ASSERT_LE(c, previous_basis_count);
    previous_basis_count = c;
    ASSERT_GE(product_formula(basis), 3u);
  }
}

TEST(InclusionExclusionTest, RangeErrors) {
  EXPECT_THROW(inclusion_exclusion_count(first_k_basis(32), 10), RangeError);
  // Product of the first 20 basis primes does not fit in 64 bits.
  EXPECT_THROW(inclusion_exclusion_count(first_k_basis(20), 10), RangeError);
}

TEST(SecondProofTest, Examples) {
  const auto w1 = second_proof_witness(1);
  EXPECT_EQ(w1.modulus, 5u);
  EXPECT_EQ(w1.m, 101u);
  EXPECT_TRUE(w1.m_is_prime);
  EXPECT_TRUE(w1.coprime_to_basis());

  const auto w2 = second_proof_witness(2);
  EXPECT_EQ(w2.m, 28901u);
  EXPECT_EQ(w2.factors, oracle::naive_factor(28901));
  EXPECT_TRUE(w2.m_is_prime);

  const auto w3 = second_proof_witness(3);
  EXPECT_EQ(w3.m, 39564101u);
  EXPECT_EQ(w3.factors, (std::vector<PrimeFactor>{{197, 1}, {229, 1}, {877, 1}}));
  EXPECT_FALSE(w3.m_is_prime);

  const auto w4 = second_proof_witness(4);
  EXPECT_EQ(w4.m, 6686332901u);
  EXPECT_EQ(w4.factors, (std::vector<PrimeFactor>{{941, 1}, {1249, 1}, {5689, 1}}));
}

TEST(SecondProofTest, CoprimeForEveryKThatFits) {
  for (std::size_t k = 1; k <= 6; ++k) {
    const auto w = second_proof_witness(k);
    EXPECT_TRUE(w.coprime_to_basis()) << k;
    u64 product = 1;
    for (const auto& f : w.factors) {
      EXPECT_EQ(f.prime % 4, 1u);
      for (unsigned e = 0; e < f.exponent; ++e) product *= f.prime;
    }
    EXPECT_EQ(product, w.m);
  }
  EXPECT_THROW(second_proof_witness(7), RangeError);
}

}  // namespace
}  // namespace quadseq
