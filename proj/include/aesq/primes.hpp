#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include <boost/rational.hpp>

namespace aesq {

using u64 = std::uint64_t;
using i64 = std::int64_t;
using Rational = boost::rational<i64>;

inline constexpr u64 kDefaultPrimeBound = 1'000'000'000'000ULL;  // 10^12
inline constexpr u64 kDefaultSpfBound = 100'000'000ULL;          // 10^8
inline constexpr u64 kSegmentOdds = u64{1} << 18;

/// Primes in the half-open interval (lo, hi], ascending.
struct PrimeInterval {
  u64 lo = 0;
  u64 hi = 0;
  std::vector<u64> primes;
};

struct Factorization {
  u64 m = 1;
  std::vector<std::pair<u64, unsigned>> factors;  // ascending primes

  /// Smallest prime factor, or 0 for m == 1.
  u64 smallest_prime() const { return factors.empty() ? 0 : factors.front().first; }
  u64 largest_prime() const { return factors.empty() ? 0 : factors.back().first; }
  bool is_prime() const { return factors.size() == 1 && factors.front().second == 1; }
};

u64 isqrt(u64 n);

/// Simple Eratosthenes sieve for the primes <= n.
std::vector<u64> primes_up_to(u64 n);

/// Segmented sieve over odd numbers. Throws Capacity when hi > max_hi.
PrimeInterval primes_in(u64 lo, u64 hi, u64 max_hi = kDefaultPrimeBound);

/// Deterministic Miller-Rabin for the full 64-bit range.
bool is_prime(u64 n);

/// psi(m, z) = 1 iff m is a positive integer with no prime factor p < z.
bool psi(u64 m, double z);
/// Rational argument: non-integers give 0.
bool psi(const Rational& m, double z);

/// Trial division by sieved primes; m must not exceed kDefaultPrimeBound.
Factorization factorize(u64 m);

/// Batch factorization backed by a smallest-prime-factor table.
///
/// The table covers [1, min(max_m, spf_bound)]; larger arguments fall back to
/// trial division by the primes up to sqrt(max_m).
class Factorizer {
 public:
  explicit Factorizer(u64 max_m, u64 spf_bound = kDefaultSpfBound);

  Factorization operator()(u64 m) const;
  u64 max_m() const { return max_m_; }

 private:
  u64 max_m_;
  std::vector<std::uint32_t> spf_;
  std::vector<u64> base_primes_;
};

/// psi evaluated from a known factorization of m.
inline bool psi(const Factorization& f, double z) {
  return f.factors.empty() || static_cast<double>(f.smallest_prime()) >= z;
}

}  // namespace aesq
