#include "quadseq/sieve.hpp"

#include <algorithm>
#include <deque>
#include <future>
#include <limits>
#include <numeric>
#include <stdexcept>
#include <string>
#include <unordered_set>

namespace quadseq {

// ---------------------------------------------------------------------------
// SieveSegment

SieveSegment::SieveSegment(u64 lo, u64 hi) : lo_(lo), hi_(hi) {
  if (lo < 1 || hi <= lo || hi - 1 > kMaxIndex) {
    throw RangeError("segment [" + std::to_string(lo) + ", " + std::to_string(hi) +
                     ") is outside [1, 2^31)");
  }
  if (hi - lo > std::numeric_limits<std::uint32_t>::max()) {
    throw RangeError("segment longer than 2^32 indices");
  }
  cofactor_.resize(hi - lo);
  for (u64 i = 0; i < cofactor_.size(); ++i) cofactor_[i] = term_value(lo + i);
}

void SieveSegment::divide_out(u64 n, u64 p) {
  if (finished_) throw std::logic_error("divide_out after finish");
  if (n < lo_ || n >= hi_) throw std::out_of_range("index outside segment");
  const auto offset = static_cast<std::uint32_t>(n - lo_);
  u64 c = cofactor_[offset];
  if (c % p != 0) {
    throw std::logic_error(std::to_string(p) + " does not divide S_" + std::to_string(n));
  }
  unsigned e = 0;
  do {
    c /= p;
    ++e;
  } while (c % p == 0);
  cofactor_[offset] = c;
  hits_.push_back({offset, e, p});
}

void SieveSegment::finish() {
  if (finished_) return;
  for (std::uint32_t i = 0; i < cofactor_.size(); ++i) {
    if (cofactor_[i] > 1) {
      hits_.push_back({i, 1, cofactor_[i]});
      cofactor_[i] = 1;
    }
  }

  starts_.assign(cofactor_.size() + 1, 0);
  for (const Hit& h : hits_) ++starts_[h.offset + 1];
  std::partial_sum(starts_.begin(), starts_.end(), starts_.begin());
  factors_.resize(hits_.size());
  std::vector<std::uint32_t> fill(starts_.begin(), starts_.end() - 1);
  for (const Hit& h : hits_) factors_[fill[h.offset]++] = PrimeFactor{h.prime, h.exponent};
  for (std::size_t i = 0; i < cofactor_.size(); ++i) {
    std::sort(factors_.begin() + starts_[i], factors_.begin() + starts_[i + 1],
              [](const PrimeFactor& a, const PrimeFactor& b) { return a.prime < b.prime; });
  }
  std::vector<Hit>().swap(hits_);
  finished_ = true;
}

bool SieveSegment::accounts_for_all() const {
  std::vector<u128> product(cofactor_.begin(), cofactor_.end());
  const auto apply = [&](std::size_t i, u64 p, unsigned e) {
    for (unsigned k = 0; k < e; ++k) product[i] *= p;
  };
  if (finished_) {
    for (std::size_t i = 0; i < cofactor_.size(); ++i) {
      if (cofactor_[i] != 1) return false;
      for (auto j = starts_[i]; j < starts_[i + 1]; ++j) {
        apply(i, factors_[j].prime, factors_[j].exponent);
      }
    }
  } else {
    for (const Hit& h : hits_) apply(h.offset, h.prime, h.exponent);
  }
  for (std::size_t i = 0; i < product.size(); ++i) {
    if (product[i] != term_value(lo_ + i)) return false;
  }
  return true;
}

TermRef SieveSegment::term(std::size_t i) const {
  if (!finished_) throw std::logic_error("term() before finish()");
  const std::span<const PrimeFactor> all(factors_);
  return TermRef{lo_ + i, term_value(lo_ + i),
                 all.subspan(starts_[i], starts_[i + 1] - starts_[i])};
}

std::size_t SieveSegment::memory_bytes() const {
  return cofactor_.capacity() * sizeof(u64) + hits_.capacity() * sizeof(Hit) +
         starts_.capacity() * sizeof(std::uint32_t) + factors_.capacity() * sizeof(PrimeFactor);
}

// ---------------------------------------------------------------------------
// Batched, bucketed sieving

namespace {

struct Plan {
  u64 from;
  u64 to;
  u64 segment_size;
  std::vector<std::uint32_t> primes;
  std::vector<std::uint32_t> roots;  // least root of 4z^2+1 mod primes[i]
};

Plan make_plan(u64 from, u64 to, u64 segment_size) {
  Plan plan{from, to, segment_size, primes_1_mod_4(2 * to), {}};
  plan.roots.reserve(plan.primes.size());
  for (std::uint32_t p : plan.primes) {
    plan.roots.push_back(static_cast<std::uint32_t>(sqrt_minus_one_by_nonresidue(p)));
  }
  return plan;
}

constexpr std::uint32_t kNil = std::numeric_limits<std::uint32_t>::max();

// Progression state for one residue class n = c (mod p).
struct Cursor {
  u64 next;
  std::uint32_t prime_index;
  std::uint32_t link;
};

// Sieves [lo, hi) segment by segment. Each progression lives in the bucket of
// the next segment it hits, so a segment only touches progressions that
// actually land in it.
template <class OnSegment>
void run_batch(const Plan& plan, u64 lo, u64 hi, OnSegment&& on_segment) {
  const u64 width = plan.segment_size;
  const u64 segments = (hi - lo + width - 1) / width;
  std::vector<std::uint32_t> heads(segments, kNil);
  std::vector<Cursor> cursors;
  cursors.reserve(2 * plan.primes.size());

  const auto bucket = [&](u64 n) { return static_cast<std::size_t>((n - lo) / width); };
  const auto push = [&](std::uint32_t id) {
    auto& head = heads[bucket(cursors[id].next)];
    cursors[id].link = head;
    head = id;
  };

  for (std::uint32_t i = 0; i < plan.primes.size(); ++i) {
    const u64 p = plan.primes[i];
    const u64 lo_mod = lo % p;
    for (const u64 residue : {u64{plan.roots[i]}, p - plan.roots[i]}) {
      const u64 first = lo + (residue + p - lo_mod) % p;
      if (first >= hi) continue;
      cursors.push_back({first, i, kNil});
      push(static_cast<std::uint32_t>(cursors.size() - 1));
    }
  }

  for (u64 s = 0; s < segments; ++s) {
    const u64 seg_lo = lo + s * width;
    const u64 seg_hi = std::min(hi, seg_lo + width);
    SieveSegment segment(seg_lo, seg_hi);
    std::uint32_t id = heads[s];
    while (id != kNil) {
      Cursor& c = cursors[id];
      const std::uint32_t following = c.link;
      const u64 p = plan.primes[c.prime_index];
      u64 n = c.next;
      for (; n < seg_hi; n += p) segment.divide_out(n, p);
      if (n < hi) {
        c.next = n;
        push(id);
      }
      id = following;
    }
    segment.finish();
    on_segment(std::move(segment));
  }
}

u64 batch_length(const Plan& plan, unsigned workers) {
  const u64 total = plan.to - plan.from + 1;
  u64 target = (total + 4 * workers - 1) / (4 * workers);
  target = std::clamp<u64>(target, u64{1} << 16, u64{1} << 21);
  return (target + plan.segment_size - 1) / plan.segment_size * plan.segment_size;
}

void emit(const SieveSegment& segment, const TermSink& sink, SieveStats* stats) {
  if (stats) {
    ++stats->segments;
    stats->peak_segment_bytes = std::max(stats->peak_segment_bytes, segment.memory_bytes());
  }
  for (std::size_t i = 0; i < segment.size(); ++i) sink(segment.term(i));
}

}  // namespace

void sieve_range(u64 from, u64 to, const SieveOptions& options, const TermSink& sink) {
  if (from < 1 || to < from) {
    throw std::invalid_argument("sieve_range needs 1 <= from <= to");
  }
  if (to > kMaxIndex) {
    throw RangeError("4n^2+1 exceeds 64 bits for n = " + std::to_string(to));
  }
  if (options.segment_size == 0) throw std::invalid_argument("segment_size must be >= 1");
  if (options.segment_size > std::numeric_limits<std::uint32_t>::max()) {
    throw RangeError("segment_size must be below 2^32");
  }
  const unsigned workers = std::max(1u, options.workers);
  const Plan plan = make_plan(from, to, options.segment_size);
  const u64 length = batch_length(plan, workers);
  const u64 end = to + 1;

  if (workers == 1) {
    for (u64 lo = from; lo < end; lo += std::min(length, end - lo)) {
      run_batch(plan, lo, std::min(end, lo + length),
                [&](SieveSegment&& segment) { emit(segment, sink, options.stats); });
    }
    return;
  }

  using Batch = std::vector<SieveSegment>;
  std::deque<std::future<Batch>> inflight;
  u64 next_lo = from;
  const auto launch = [&] {
    const u64 lo = next_lo;
    const u64 hi = std::min(end, lo + length);
    next_lo = hi;
    inflight.push_back(std::async(std::launch::async, [&plan, lo, hi] {
      Batch out;
      run_batch(plan, lo, hi, [&](SieveSegment&& s) { out.push_back(std::move(s)); });
      return out;
    }));
  };
  while (inflight.size() < workers && next_lo < end) launch();
  while (!inflight.empty()) {
    Batch batch = inflight.front().get();
    inflight.pop_front();
    if (next_lo < end) launch();
    for (const auto& segment : batch) emit(segment, sink, options.stats);
  }
}

std::vector<Term> collect_terms(u64 from, u64 to, const SieveOptions& options) {
  std::vector<Term> out;
  if (to >= from) out.reserve(to - from + 1);
  sieve_range(from, to, options, [&](const TermRef& t) { out.push_back(t.to_term()); });
  return out;
}

std::vector<u64> divisor_positions(u64 p, u64 n_max) {
  const u64 r = sqrt_minus_one(p);
  std::vector<u64> out;
  for (u64 base = 0; base <= n_max; base += p) {
    if (base + r <= n_max) out.push_back(base + r);
    if (base + p - r <= n_max) out.push_back(base + p - r);
    if (base > n_max - p) break;
  }
  return out;
}

std::vector<u64> enumerate_primes(u64 n_max, const SieveOptions& options) {
  std::vector<u64> out;
  sieve_range(1, n_max, options, [&](const TermRef& t) {
    if (t.is_prime()) out.push_back(t.n);
  });
  return out;
}

// ---------------------------------------------------------------------------
// Prime basis

std::vector<u64> PrimeBasis::primes() const {
  std::vector<u64> out;
  out.reserve(entries.size());
  for (const auto& e : entries) out.push_back(e.p);
  return out;
}

u64 PrimeBasis::product() const {
  u64 n = 1;
  for (const auto& e : entries) n = checked_mul(n, e.p);
  return n;
}

namespace {

void sort_basis(std::vector<BasisPrime>& entries) {
  std::sort(entries.begin(), entries.end(), [](const BasisPrime& a, const BasisPrime& b) {
    return a.first_index != b.first_index ? a.first_index < b.first_index : a.p < b.p;
  });
}

}  // namespace

PrimeBasis first_k_basis(std::size_t k) {
  if (k == 0) throw std::invalid_argument("first_k_basis needs k >= 1");
  for (u64 horizon = 16;; horizon *= 2) {
    if (horizon > kMaxIndex) throw RangeError("basis does not fit below n = 2^31");
    std::vector<BasisPrime> found;
    std::unordered_set<u64> seen;
    sieve_range(1, horizon, {}, [&](const TermRef& t) {
      for (const auto& f : t.factors) {
        if (seen.insert(f.prime).second) found.push_back({f.prime, 0, t.n});
      }
    });
    if (found.size() < k) continue;
    sort_basis(found);
    found.resize(k);
    for (auto& e : found) {
      e.r = sqrt_minus_one(e.p);
      if (e.r != e.first_index) {
        throw std::logic_error("first appearance of " + std::to_string(e.p) +
                               " differs from its least root");
      }
    }
    return PrimeBasis{std::move(found)};
  }
}

PrimeBasis basis_from_primes(std::span<const u64> primes) {
  std::vector<BasisPrime> entries;
  for (u64 p : primes) {
    if (std::any_of(entries.begin(), entries.end(), [&](const BasisPrime& e) { return e.p == p; })) {
      throw std::invalid_argument("prime " + std::to_string(p) + " repeated in basis");
    }
    const u64 r = sqrt_minus_one(p);
    entries.push_back({p, r, r});
  }
  sort_basis(entries);
  return PrimeBasis{std::move(entries)};
}

bool lemma2_witness(u64 n) {
  if (n < 2) throw std::invalid_argument("lemma2_witness needs n >= 2");
  const u64 value = term_value(n);
  for (u64 k = 1; k < n; ++k) {
    if (std::gcd(value, term_value(k)) != 1) return true;
  }
  return is_prime(value);
}

}  // namespace quadseq
