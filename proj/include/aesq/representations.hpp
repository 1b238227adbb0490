#pragma once

#include <cstddef>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "aesq/primes.hpp"

namespace aesq {

inline constexpr double kUnbounded = std::numeric_limits<double>::infinity();

/// n = p_1^2 + ... + p_s^2 with every |p_i - sqrt(n/s)| <= H.
struct RepQuery {
  i64 n = 0;
  int s = 4;
  double H = kUnbounded;
  bool ordered = true;

  double center() const;
};

/// Primes p with p^2 <= n and |p - sqrt(n/s)| <= H, ascending.
std::vector<u64> admissible_primes(const RepQuery& q);

/// Meet-in-the-middle count over sorted half sums. Ordered tuples or
/// multisets depending on q.ordered.
u64 count_representations(const RepQuery& q);

struct DirectResult {
  u64 ordered = 0;
  u64 unordered = 0;
  std::vector<std::vector<u64>> multisets;  // first `keep` multisets found
};

/// Depth-first enumeration of nondecreasing prime tuples. stop_at_first ends
/// after the first solution.
DirectResult enumerate_representations(const RepQuery& q, bool stop_at_first = false, std::size_t keep = 0);

/// sum over integer tuples m_i in (lo, hi] with sum m_i^2 = n of
/// prod 1/log m_i; requires lo >= 1.
double singular_integral_exact(i64 n, int s, double lo, double hi);

/// Constant H, H = n^exponent, or unbounded.
struct HSpec {
  double value = kUnbounded;
  std::optional<double> exponent;

  double at(double n) const;
  std::string describe() const;
};

struct ScanRow {
  i64 n;
  bool in_H;
  u64 count;
};

struct ScanReport {
  i64 X = 0;
  int s = 4;
  HSpec H;
  i64 lo = 0, hi = 0;
  std::vector<ScanRow> rows;  // every n in [lo, hi]
  std::vector<i64> exceptions;
  u64 h_count = 0;     // members of H_s in the window
  u64 spot_checks = 0;
  std::string backend;
};

inline constexpr i64 kDefaultScanHalfWidth = 100'000;

/// Counts representations for every n in the window and lists n in H_s with
/// none. The window must sit inside [X - H(X) sqrt X, X + H(X) sqrt X];
/// default is X +- 1e5 clipped to that range. Exceptions and a deterministic
/// sample of non-exceptions are re-checked by direct enumeration.
ScanReport exceptional_scan(i64 X, int s, const HSpec& H, std::optional<std::pair<i64, i64>> window = std::nullopt,
                            unsigned threads = 1);

}  // namespace aesq
