#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace quadseq {

// A true result does not fit in 64 bits. Never wrapped.
class RangeError : public std::range_error {
 public:
  using std::range_error::range_error;
};

// 4z^2+1 = 0 (mod m) has no solution because `prime` divides m and prime != 1 (mod 4).
class NoRootsError : public std::domain_error {
 public:
  NoRootsError(std::uint64_t modulus, std::uint64_t prime)
      : std::domain_error("NoRoots: modulus " + std::to_string(modulus) +
                          " has prime factor " + std::to_string(prime) +
                          " which is not 1 mod 4"),
        modulus_(modulus),
        prime_(prime) {}

  std::uint64_t modulus() const noexcept { return modulus_; }
  std::uint64_t prime() const noexcept { return prime_; }

 private:
  std::uint64_t modulus_;
  std::uint64_t prime_;
};

class BadFactorization : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Raised by the slow reference implementations when asked to go past their cap.
class OracleCapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace quadseq
