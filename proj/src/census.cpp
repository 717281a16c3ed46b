#include "quadseq/census.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <stdexcept>
#include <string>

#include "quadseq/roots.hpp"

namespace quadseq {

u64 inclusion_exclusion_count(const PrimeBasis& basis, u64 horizon,
                              std::vector<DivisorTerm>* table) {
  const std::size_t k = basis.size();
  if (k >= 32) throw RangeError("inclusion-exclusion over 2^" + std::to_string(k) + " divisors");
  (void)basis.product();  // N must fit

  if (table) table->clear();
  __int128 total = 0;
  std::vector<PrimeFactor> factors;
  for (u64 mask = 0; mask < (u64{1} << k); ++mask) {
    DivisorTerm term;
    term.nu = static_cast<unsigned>(std::popcount(mask));
    if (mask == 0) {
      term.struck = horizon;
    } else {
      factors.clear();
      for (std::size_t i = 0; i < k; ++i) {
        if (mask & (u64{1} << i)) {
          factors.push_back({basis.entries[i].p, 1});
          term.d *= basis.entries[i].p;
        }
      }
      const RootSet set = all_roots(term.d, factors);
      term.roots = set.roots.size();
      u128 struck = 0;
      for (u64 r : set.roots) struck += (static_cast<u128>(horizon) + r) / term.d;
      term.struck = static_cast<u64>(struck);
    }
    total += (term.nu % 2 == 0) ? static_cast<__int128>(term.struck)
                                : -static_cast<__int128>(term.struck);
    if (table) table->push_back(term);
  }
  if (total < 0 || total > static_cast<__int128>(horizon)) {
    throw std::logic_error("inclusion-exclusion sum left [0, horizon]");
  }
  return static_cast<u64>(total);
}

u64 exact_coprime_count(const PrimeBasis& basis, u64 horizon) {
  if (horizon > kMaxCensusHorizon) {
    throw RangeError("horizon " + std::to_string(horizon) + " exceeds the scan cap");
  }
  constexpr u64 kChunk = u64{1} << 20;
  std::vector<char> struck;
  u64 count = 0;
  for (u64 lo = 1; lo <= horizon; lo += kChunk) {
    const u64 hi = std::min(horizon, lo + kChunk - 1);
    struck.assign(hi - lo + 1, 0);
    for (const auto& e : basis.entries) {
      const u64 lo_mod = lo % e.p;
      for (const u64 residue : {e.r, e.p - e.r}) {
        for (u64 n = lo + (residue + e.p - lo_mod) % e.p; n <= hi; n += e.p) struck[n - lo] = 1;
      }
    }
    count += static_cast<u64>(std::count(struck.begin(), struck.end(), 0));
  }
  return count;
}

u64 product_formula(const PrimeBasis& basis) {
  if (basis.empty()) throw std::invalid_argument("product_formula needs a nonempty basis");
  u64 out = 1;
  for (const auto& e : basis.entries) out = checked_mul(out, e.p - 2);
  return out;
}

CensusReport census(const PrimeBasis& basis, std::optional<u64> horizon) {
  if (basis.empty()) throw std::invalid_argument("census needs a nonempty basis");
  CensusReport report;
  report.basis = basis;
  report.modulus = basis.product();
  report.horizon = horizon.value_or(report.modulus);
  report.ie_count = inclusion_exclusion_count(basis, report.horizon, &report.nu_table);
  report.exact_count = exact_coprime_count(basis, report.horizon);
  report.product_value = product_formula(basis);
  return report;
}

CensusReport verify_main_identity(std::size_t k) {
  const PrimeBasis basis = first_k_basis(k);
  const u64 modulus = basis.product();
  if (modulus > kMaxCensusHorizon) {
    throw RangeError("N = " + std::to_string(modulus) + " is too large for a full scan");
  }
  return census(basis);
}

bool SecondProofWitness::coprime_to_basis() const {
  return std::all_of(gcds.begin(), gcds.end(), [](u64 g) { return g == 1; });
}

SecondProofWitness second_proof_witness(std::size_t k) {
  SecondProofWitness w;
  w.basis = first_k_basis(k);
  w.modulus = w.basis.product();
  try {
    w.m = term_value(w.modulus);
  } catch (const RangeError&) {
    throw RangeError("M = 4N^2+1 exceeds 64 bits for N = " + std::to_string(w.modulus));
  }
  for (const auto& e : w.basis.entries) w.gcds.push_back(std::gcd(w.m, e.p));

  // M has the form 4n^2+1, so every prime factor is 1 (mod 4).
  u64 rest = w.m;
  for (u64 q = 5; q <= rest / q; q += 4) {
    if (rest % q != 0) continue;
    PrimeFactor f{q, 0};
    while (rest % q == 0) {
      rest /= q;
      ++f.exponent;
    }
    w.factors.push_back(f);
  }
  if (rest > 1) w.factors.push_back({rest, 1});
  w.m_is_prime = w.factors.size() == 1 && w.factors.front().exponent == 1;
  return w;
}

}  // namespace quadseq
