#include <doctest.h>

#include <cmath>
#include <map>
#include <vector>

#include "aesq/circle.hpp"
#include "aesq/errors.hpp"
#include "aesq/local_arithmetic.hpp"
#include "aesq/representations.hpp"

using namespace aesq;

namespace {

// ordered tuples by plain nested recursion, no symmetry reduction
u64 naive_ordered(i64 n, int s, const std::vector<u64>& ps) {
  if (s == 0) return n == 0 ? 1 : 0;
  u64 c = 0;
  for (u64 p : ps) {
    const i64 sq = static_cast<i64>(p * p);
    if (sq > n) break;
    c += naive_ordered(n - sq, s - 1, ps);
  }
  return c;
}

RepQuery Q(i64 n, int s, double H = kUnbounded, bool ordered = true) { return RepQuery{n, s, H, ordered}; }

}  // namespace

TEST_CASE("representation counts by hand") {
  CHECK(count_representations(Q(100, 4)) == 1);
  CHECK(count_representations(Q(125, 5)) == 11);
  CHECK(count_representations(Q(125, 5, 1.0)) == 1);
  CHECK(count_representations(Q(29, 5)) == 0);
  CHECK(count_representations(Q(125, 5, kUnbounded, false)) == 2);
  const auto d = enumerate_representations(Q(125, 5), false, 10);
  CHECK(d.ordered == 11);
  CHECK(d.unordered == 2);
  CHECK(d.multisets == std::vector<std::vector<u64>>{{3, 3, 3, 7, 7}, {5, 5, 5, 5, 5}});
}

TEST_CASE("admissible primes") {
  CHECK(admissible_primes(Q(125, 5, 1.0)) == std::vector<u64>{5});
  CHECK(admissible_primes(Q(100, 4, 2.0)) == std::vector<u64>{3, 5, 7});
  CHECK(admissible_primes(Q(100, 4)) == std::vector<u64>{2, 3, 5, 7});
}

TEST_CASE("arguments") {
  CHECK_THROWS_AS(count_representations(Q(11, 3)), Error);
  CHECK_THROWS_AS(count_representations(Q(100, 4, -1.0)), Error);
}

TEST_CASE("meet-in-the-middle against naive recursion") {
  for (int s = 3; s <= 6; ++s)
    for (i64 n = 4 * s; n <= 900; ++n) {
      const auto ps = admissible_primes(Q(n, s));
      const u64 naive = naive_ordered(n, s, ps);
      REQUIRE(count_representations(Q(n, s)) == naive);
      const auto d = enumerate_representations(Q(n, s));
      REQUIRE(d.ordered == naive);
      REQUIRE(count_representations(Q(n, s, kUnbounded, false)) == d.unordered);
    }
}

TEST_CASE("ordered count is the multinomial sum over multisets") {
  for (i64 n : {1'000LL, 4'567LL, 20'005LL})
    for (int s : {4, 5}) {
      if (!(n >= 4 * s)) continue;
      const auto d = enumerate_representations(Q(n, s), false, 1'000'000);
      u64 total = 0;
      for (const auto& ms : d.multisets) {
        std::map<u64, int> mult;
        for (u64 p : ms) ++mult[p];
        u64 f = 1;
        for (int i = 2; i <= s; ++i) f *= static_cast<u64>(i);
        for (auto [p, k] : mult)
          for (int i = 2; i <= k; ++i) f /= static_cast<u64>(i);
        total += f;
      }
      CHECK(total == count_representations(Q(n, s)));
    }
}

TEST_CASE("shrinking H never adds representations") {
  for (i64 n : {1'000'012LL, 2'000'004LL}) {
    u64 prev = count_representations(Q(n, 4));
    for (double H : {400.0, 200.0, 100.0, 50.0, 20.0, 5.0, 0.0}) {
      const u64 c = count_representations(Q(n, 4, H));
      REQUIRE(c <= prev);
      prev = c;
    }
  }
}

TEST_CASE("singular integral by exact summation") {
  CHECK(singular_integral_exact(100, 4, 4.9, 5.1) == doctest::Approx(std::pow(1.0 / std::log(5.0), 4)).epsilon(1e-14));
  CHECK(singular_integral_exact(100, 4, 4.9, 5.1) == doctest::Approx(0.14901).epsilon(1e-4));
  CHECK(singular_integral_exact(99, 4, 4.9, 5.1) == 0.0);
  CHECK_THROWS_AS(singular_integral_exact(100, 4, 0.5, 5.1), Error);
}

TEST_CASE("singular integral support follows integer representability") {
  for (i64 n = 16; n <= 400; ++n) {
    // unit weights on integers in (1.5, 9]
    const auto cv = make_coeffs({{2, 1}, {3, 1}, {4, 1}, {5, 1}, {6, 1}, {7, 1}, {8, 1}, {9, 1}});
    const auto wc = window_counts(cv, 4);
    const bool positive = singular_integral_exact(n, 4, 1.5, 9) > 0;
    REQUIRE(positive == (wc.count_at(static_cast<u64>(n)) > 0));
  }
}

TEST_CASE("scan examples") {
  auto r = exceptional_scan(100, 4, HSpec{}, std::pair<i64, i64>{90, 110});
  CHECK(r.exceptions.empty());
  CHECK(r.h_count == 1);
  r = exceptional_scan(40, 5, HSpec{}, std::pair<i64, i64>{20, 60});
  CHECK(r.exceptions == std::vector<i64>{29, 53});
  r = exceptional_scan(100, 3, HSpec{}, std::pair<i64, i64>{90, 110});
  CHECK(r.exceptions.empty());
  CHECK(r.rows[99 - 90].in_H);
  CHECK(r.rows[99 - 90].count == 3);
  for (const auto& row : r.rows) CHECK(row.in_H == is_H(row.n, 3));
}

TEST_CASE("scan window validation") {
  HSpec h;
  h.value = 1.0;
  // [X - sqrt X, X + sqrt X] = [9900, 10100]
  CHECK_NOTHROW(exceptional_scan(10'000, 4, h, std::pair<i64, i64>{9'900, 10'100}));
  CHECK_THROWS_AS(exceptional_scan(10'000, 4, h, std::pair<i64, i64>{9'899, 10'000}), Error);
  CHECK_THROWS_AS(exceptional_scan(10'000, 4, h, std::pair<i64, i64>{10'000, 9'000}), Error);
  const auto r = exceptional_scan(10'000, 4, h);
  CHECK(r.lo == 9'900);
  CHECK(r.hi == 10'100);
}

TEST_CASE("scan rows agree with per-n counts under a finite H") {
  HSpec h;
  h.exponent = 0.35;
  const i64 X = 2'000'000;
  const auto r = exceptional_scan(X, 4, h, std::pair<i64, i64>{X - 3000, X + 3000}, 2);
  for (std::size_t i = 0; i < r.rows.size(); i += 7) {
    const auto& row = r.rows[i];
    REQUIRE(row.count == count_representations(Q(row.n, 4, std::pow(static_cast<double>(row.n), 0.35))));
  }
  for (i64 n : r.exceptions) CHECK(is_H(n, 4));
  const auto r1 = exceptional_scan(X, 4, h, std::pair<i64, i64>{X - 3000, X + 3000}, 1);
  CHECK(r1.exceptions == r.exceptions);
}
