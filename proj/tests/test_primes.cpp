#include <doctest.h>

#include <algorithm>
#include <random>
#include <vector>

#include "aesq/errors.hpp"
#include "aesq/primes.hpp"

using namespace aesq;

namespace {

bool trial_prime(u64 n) {
  if (n < 2) return false;
  for (u64 d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

u64 trial_spf(u64 n) {
  for (u64 d = 2; d * d <= n; ++d)
    if (n % d == 0) return d;
  return n;
}

std::vector<u64> trial_list(u64 lo, u64 hi) {
  std::vector<u64> v;
  for (u64 n = lo + 1; n <= hi; ++n)
    if (trial_prime(n)) v.push_back(n);
  return v;
}

}  // namespace

TEST_CASE("primes_in small intervals") {
  CHECK(primes_in(10, 20).primes == std::vector<u64>{11, 13, 17, 19});
  CHECK(primes_in(1, 2).primes == std::vector<u64>{2});
  const auto big = primes_in(1'000'000, 1'000'100);
  CHECK(big.primes.size() == 6);
  CHECK(big.primes == trial_list(1'000'000, 1'000'100));
}

TEST_CASE("primes_in agrees with trial division below 1e5") {
  const auto all = primes_in(1, 100'000);
  CHECK(all.primes == trial_list(1, 100'000));
  std::mt19937_64 rng(12345);
  for (int k = 0; k < 200; ++k) {
    const u64 a = 1 + rng() % 99'990;
    const u64 b = a + 1 + rng() % (100'000 - a);
    const auto got = primes_in(a, b).primes;
    std::vector<u64> want;
    for (u64 p : all.primes)
      if (p > a && p <= b) want.push_back(p);
    REQUIRE(got == want);
  }
}

TEST_CASE("primes_in across many segments") {
  const u64 lo = 1'000'000'000ULL;
  const auto r = primes_in(lo, lo + 3'000'000);
  for (std::size_t i = 1; i < r.primes.size(); ++i) REQUIRE(r.primes[i - 1] < r.primes[i]);
  std::size_t sampled = 0;
  for (u64 n = lo + 1; n <= lo + 3'000'000; n += 997) {
    const bool listed = std::binary_search(r.primes.begin(), r.primes.end(), n);
    REQUIRE(listed == trial_prime(n));
    ++sampled;
  }
  CHECK(sampled > 3000);
  for (std::size_t i = 0; i < r.primes.size(); i += 500) REQUIRE(trial_prime(r.primes[i]));
}

TEST_CASE("primes_in errors") {
  CHECK_THROWS_AS(primes_in(5, 5), Error);
  CHECK_THROWS_AS(primes_in(0, 5), Error);
  try {
    primes_in(10, 2'000'000'000'000ULL);
    FAIL("expected capacity error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Capacity);
  }
  try {
    primes_in(10, 1000, 500);
    FAIL("expected capacity error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Capacity);
  }
}

TEST_CASE("is_prime") {
  for (u64 n = 0; n < 20'000; ++n) REQUIRE(is_prime(n) == trial_prime(n));
  for (u64 n : {999'999'999'989ULL, 1'000'000'000'039ULL, 1'000'000'000'037ULL, 999'999'999'999ULL})
    CHECK(is_prime(n) == trial_prime(n));
  CHECK(is_prime(18'446'744'073'709'551'557ULL));
  CHECK_FALSE(is_prime(3'215'031'751ULL));  // strong pseudoprime to bases 2, 3, 5, 7
}

TEST_CASE("psi examples") {
  CHECK(psi(u64{35}, 5));
  CHECK_FALSE(psi(u64{35}, 6));
  CHECK_FALSE(psi(Rational(15, 2), 2));
  CHECK(psi(Rational(14, 2), 7));
  CHECK(psi(u64{1}, 1000));
  CHECK_FALSE(psi(u64{0}, 2));
  CHECK_FALSE(psi(Rational(0), 2));
}

TEST_CASE("psi against smallest prime factor") {
  for (u64 m = 2; m <= 5000; ++m) {
    const u64 spf = trial_spf(m);
    REQUIRE(psi(m, static_cast<double>(spf)));
    REQUIRE(psi(m, static_cast<double>(spf) - 0.5));
    REQUIRE_FALSE(psi(m, static_cast<double>(spf) + 0.5));
    REQUIRE_FALSE(psi(m, static_cast<double>(spf + 1)));
    REQUIRE(psi(m, 2.0));
  }
  CHECK(psi(u64{1}, 2.0));
}

TEST_CASE("factorize") {
  auto f = factorize(77);
  CHECK(f.factors == std::vector<std::pair<u64, unsigned>>{{7, 1}, {11, 1}});
  CHECK(factorize(1).factors.empty());
  CHECK(factorize(99991).factors == std::vector<std::pair<u64, unsigned>>{{99991, 1}});
  CHECK(trial_prime(99991));
  for (u64 m = 1; m <= 20'000; ++m) {
    const auto g = factorize(m);
    u64 prod = 1;
    u64 last = 0;
    for (auto [p, e] : g.factors) {
      REQUIRE(e >= 1);
      REQUIRE(p > last);
      REQUIRE(trial_prime(p));
      last = p;
      for (unsigned i = 0; i < e; ++i) prod *= p;
    }
    REQUIRE(prod == m);
  }
  const auto big = factorize(999'999'999'989ULL * 1);
  CHECK(big.is_prime());
  CHECK_THROWS_AS(factorize(0), Error);
  CHECK_THROWS_AS(factorize(2'000'000'000'000ULL), Error);
}

TEST_CASE("Factorizer table and fallback agree with factorize") {
  Factorizer small(200'000, 1'000);  // most queries take the fallback path
  Factorizer full(200'000);
  for (u64 m = 1; m <= 200'000; m += 7) {
    const auto want = factorize(m);
    REQUIRE(small(m).factors == want.factors);
    REQUIRE(full(m).factors == want.factors);
  }
  CHECK_THROWS_AS(full(200'001), Error);
}
