#include "aesq/primes.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>
#include <string>

#include "aesq/errors.hpp"

namespace aesq {

namespace {

// Primes up to 10^6 cover trial division for every m <= 10^12.
const std::vector<u64>& small_primes() {
  static const std::vector<u64> primes = primes_up_to(1'000'000);
  return primes;
}

u64 mulmod(u64 a, u64 b, u64 m) {
  return static_cast<u64>((static_cast<unsigned __int128>(a) * b) % m);
}

u64 powmod(u64 a, u64 e, u64 m) {
  u64 r = 1;
  a %= m;
  while (e) {
    if (e & 1) r = mulmod(r, a, m);
    a = mulmod(a, a, m);
    e >>= 1;
  }
  return r;
}

}  // namespace

u64 isqrt(u64 n) {
  u64 r = static_cast<u64>(std::sqrt(static_cast<long double>(n)));
  while (r > 0 && r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

std::vector<u64> primes_up_to(u64 n) {
  std::vector<u64> out;
  if (n < 2) return out;
  std::vector<char> composite(n + 1, 0);
  for (u64 i = 2; i * i <= n; ++i)
    if (!composite[i])
      for (u64 j = i * i; j <= n; j += i) composite[j] = 1;
  for (u64 i = 2; i <= n; ++i)
    if (!composite[i]) out.push_back(i);
  return out;
}

PrimeInterval primes_in(u64 lo, u64 hi, u64 max_hi) {
  if (lo < 1 || lo >= hi)
    fail(ErrorKind::Domain, "primes_in requires 1 <= lo < hi, got (" + std::to_string(lo) +
                                ", " + std::to_string(hi) + "]");
  if (hi > max_hi)
    fail(ErrorKind::Capacity, "primes_in: hi=" + std::to_string(hi) +
                                  " exceeds bound " + std::to_string(max_hi));

  PrimeInterval out{lo, hi, {}};
  if (lo < 2) out.primes.push_back(2);

  const std::vector<u64> base = primes_up_to(isqrt(hi));
  u64 start = std::max<u64>(lo + 1, 3);
  if (start % 2 == 0) ++start;

  std::vector<char> seg(kSegmentOdds);
  for (u64 seg_lo = start; seg_lo <= hi; seg_lo += 2 * kSegmentOdds) {
    const u64 len = std::min<u64>(kSegmentOdds, (hi - seg_lo) / 2 + 1);
    const u64 seg_hi = seg_lo + 2 * (len - 1);
    std::fill(seg.begin(), seg.begin() + static_cast<std::ptrdiff_t>(len), 1);
    for (u64 p : base) {
      if (p == 2) continue;
      if (p * p > seg_hi) break;
      u64 m0 = std::max(p * p, (seg_lo + p - 1) / p * p);
      if (m0 % 2 == 0) m0 += p;
      for (u64 j = (m0 - seg_lo) / 2; j < len; j += p) seg[j] = 0;
    }
    for (u64 j = 0; j < len; ++j)
      if (seg[j]) out.primes.push_back(seg_lo + 2 * j);
  }
  return out;
}

bool is_prime(u64 n) {
  if (n < 2) return false;
  for (u64 p : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    if (n % p == 0) return n == p;
  }
  u64 d = n - 1;
  int r = 0;
  while (d % 2 == 0) {
    d /= 2;
    ++r;
  }
  for (u64 a : {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37}) {
    u64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < r; ++i) {
      x = mulmod(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

bool psi(u64 m, double z) {
  if (m == 0) return false;
  if (m == 1) return true;
  const auto& sp = small_primes();
  for (u64 p : sp) {
    if (static_cast<double>(p) >= z) return true;
    if (p * p > m) break;
    if (m % p == 0) return false;
  }
  if (isqrt(m) > sp.back()) {
    // m beyond the cached range: fall back to the full factorization.
    return psi(factorize(m), z);
  }
  // No prime factor up to sqrt(m): m is prime.
  return static_cast<double>(m) >= z;
}

bool psi(const Rational& m, double z) {
  if (m.denominator() != 1 || m.numerator() < 0) return false;
  return psi(static_cast<u64>(m.numerator()), z);
}

Factorization factorize(u64 m) {
  if (m == 0) fail(ErrorKind::Domain, "factorize requires m >= 1");
  if (m > kDefaultPrimeBound)
    fail(ErrorKind::Capacity, "factorize: m=" + std::to_string(m) + " exceeds bound 10^12");
  Factorization f{m, {}};
  u64 rest = m;
  for (u64 p : small_primes()) {
    if (p * p > rest) break;
    if (rest % p == 0) {
      unsigned e = 0;
      while (rest % p == 0) {
        rest /= p;
        ++e;
      }
      f.factors.emplace_back(p, e);
    }
  }
  if (rest > 1) f.factors.emplace_back(rest, 1);
  return f;
}

Factorizer::Factorizer(u64 max_m, u64 spf_bound) : max_m_(max_m) {
  if (max_m < 1) fail(ErrorKind::Domain, "Factorizer requires max_m >= 1");
  const u64 table = std::min(max_m, spf_bound);
  if (table > std::numeric_limits<std::uint32_t>::max())
    fail(ErrorKind::Capacity, "Factorizer: spf table larger than 2^32");
  if (isqrt(max_m) > 100'000'000ULL)
    fail(ErrorKind::Capacity, "Factorizer: max_m=" + std::to_string(max_m) + " exceeds 10^16");
  spf_.assign(table + 1, 0);
  for (u64 i = 2; i <= table; ++i) {
    if (spf_[i] != 0) continue;
    spf_[i] = static_cast<std::uint32_t>(i);
    if (i * i > table) continue;
    for (u64 j = i * i; j <= table; j += i)
      if (spf_[j] == 0) spf_[j] = static_cast<std::uint32_t>(i);
  }
  if (max_m > table) base_primes_ = primes_up_to(isqrt(max_m));
}

Factorization Factorizer::operator()(u64 m) const {
  if (m == 0) fail(ErrorKind::Domain, "factorize requires m >= 1");
  if (m > max_m_)
    fail(ErrorKind::Capacity, "Factorizer: m=" + std::to_string(m) + " exceeds configured bound " +
                                  std::to_string(max_m_));
  Factorization f{m, {}};
  u64 rest = m;
  if (rest >= spf_.size()) {
    for (u64 p : base_primes_) {
      if (p * p > rest || rest < spf_.size()) break;
      if (rest % p == 0) {
        unsigned e = 0;
        while (rest % p == 0) {
          rest /= p;
          ++e;
        }
        f.factors.emplace_back(p, e);
      }
    }
    if (rest >= spf_.size()) {
      f.factors.emplace_back(rest, 1);
      return f;
    }
  }
  while (rest > 1) {
    const u64 p = spf_[rest];
    unsigned e = 0;
    while (rest % p == 0) {
      rest /= p;
      ++e;
    }
    if (!f.factors.empty() && f.factors.back().first == p)
      f.factors.back().second += e;
    else
      f.factors.emplace_back(p, e);
  }
  return f;
}

}  // namespace aesq
