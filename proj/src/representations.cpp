#include "aesq/representations.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <set>
#include <sstream>

#include "aesq/circle.hpp"
#include "aesq/errors.hpp"
#include "aesq/local_arithmetic.hpp"
#include "aesq/parallel.hpp"

namespace aesq {

namespace {

constexpr std::size_t kMaxHalfTuples = 20'000'000;
constexpr i64 kMaxRepN = 100'000'000'000'000LL;

void validate(const RepQuery& q) {
  if (q.s < 1 || q.s > 16) fail(ErrorKind::Domain, "s must be in [1, 16]");
  if (q.n < 4LL * q.s) fail(ErrorKind::Domain, "n must be at least 4s");
  if (q.n > kMaxRepN) fail(ErrorKind::Capacity, "n exceeds 1e14");
  if (!(q.H >= 0.0)) fail(ErrorKind::Domain, "H must be non-negative");
}

u64 factorial(int k) {
  u64 f = 1;
  for (int i = 2; i <= k; ++i) f *= static_cast<u64>(i);
  return f;
}

// arrangements of a nondecreasing tuple
u64 arrangements(const std::vector<u64>& t) {
  u64 r = factorial(static_cast<int>(t.size()));
  std::size_t i = 0;
  while (i < t.size()) {
    std::size_t j = i;
    while (j < t.size() && t[j] == t[i]) ++j;
    r /= factorial(static_cast<int>(j - i));
    i = j;
  }
  return r;
}

struct Half {
  u64 sum;
  u64 weight;
  u64 edge;  // max for the left half, min for the right
};

std::vector<Half> half_tuples(const std::vector<u64>& ps, int k, u64 n, bool left) {
  std::vector<Half> out;
  if (k == 0) {
    out.push_back({0, 1, left ? 0 : ~u64{0}});
    return out;
  }
  std::vector<u64> cur;
  auto rec = [&](auto&& self, std::size_t start, u64 sum) -> void {
    if (static_cast<int>(cur.size()) == k) {
      if (out.size() >= kMaxHalfTuples) fail(ErrorKind::Capacity, "too many half tuples for meet-in-the-middle");
      out.push_back({sum, arrangements(cur), left ? cur.back() : cur.front()});
      return;
    }
    const u64 remaining = static_cast<u64>(k) - cur.size();
    for (std::size_t i = start; i < ps.size(); ++i) {
      const u64 sq = ps[i] * ps[i];
      if (sum + sq * remaining > n) break;
      cur.push_back(ps[i]);
      self(self, i, sum + sq);
      cur.pop_back();
    }
  };
  rec(rec, 0, 0);
  return out;
}

}  // namespace

double RepQuery::center() const { return std::sqrt(static_cast<double>(n) / s); }

std::vector<u64> admissible_primes(const RepQuery& q) {
  validate(q);
  const long double c = std::sqrt(static_cast<long double>(q.n) / q.s);
  const u64 root = isqrt(static_cast<u64>(q.n));
  u64 top = root;
  if (std::isfinite(q.H)) top = std::min<u64>(root, static_cast<u64>(std::max(0.0L, std::floor(c + q.H))));
  std::vector<u64> out;
  if (top < 2) return out;
  for (u64 p : primes_up_to(top)) {
    if (std::isfinite(q.H) && std::fabs(static_cast<long double>(p) - c) > static_cast<long double>(q.H)) continue;
    out.push_back(p);
  }
  return out;
}

u64 count_representations(const RepQuery& q) {
  const auto ps = admissible_primes(q);
  if (ps.empty()) return 0;
  const u64 n = static_cast<u64>(q.n);
  const int k1 = (q.s + 1) / 2, k2 = q.s / 2;
  auto L = half_tuples(ps, k1, n, true);
  auto R = half_tuples(ps, k2, n, false);
  if (q.ordered) {
    auto aggregate = [](std::vector<Half>& v) {
      std::sort(v.begin(), v.end(), [](const Half& a, const Half& b) { return a.sum < b.sum; });
      std::vector<std::pair<u64, u64>> agg;
      for (const auto& h : v) {
        if (!agg.empty() && agg.back().first == h.sum)
          agg.back().second += h.weight;
        else
          agg.emplace_back(h.sum, h.weight);
      }
      return agg;
    };
    const auto a = aggregate(L), b = aggregate(R);
    u64 total = 0;
    std::size_t j = b.size();
    for (const auto& [t, w] : a) {
      while (j > 0 && b[j - 1].first > n - t) --j;
      if (j > 0 && b[j - 1].first == n - t) total += w * b[j - 1].second;
    }
    return total;
  }
  // multisets: split sorted tuple into its first k1 and last k2 entries
  std::sort(L.begin(), L.end(), [](const Half& a, const Half& b) { return a.sum != b.sum ? a.sum < b.sum : a.edge < b.edge; });
  std::sort(R.begin(), R.end(), [](const Half& a, const Half& b) { return a.sum != b.sum ? a.sum < b.sum : a.edge < b.edge; });
  u64 total = 0;
  std::size_t i = 0;
  while (i < L.size()) {
    std::size_t i2 = i;
    while (i2 < L.size() && L[i2].sum == L[i].sum) ++i2;
    const u64 want = n - L[i].sum;
    auto lo = std::lower_bound(R.begin(), R.end(), want, [](const Half& h, u64 v) { return h.sum < v; });
    auto hi = std::upper_bound(R.begin(), R.end(), want, [](u64 v, const Half& h) { return v < h.sum; });
    for (std::size_t k = i; k < i2; ++k) {
      auto from = std::lower_bound(lo, hi, L[k].edge, [](const Half& h, u64 v) { return h.edge < v; });
      total += static_cast<u64>(hi - from);
    }
    i = i2;
  }
  return total;
}

DirectResult enumerate_representations(const RepQuery& q, bool stop_at_first, std::size_t keep) {
  const auto ps = admissible_primes(q);
  DirectResult res;
  if (ps.empty()) return res;
  std::vector<u64> cur;
  bool done = false;
  auto rec = [&](auto&& self, std::size_t start, u64 rem) -> void {
    const u64 left = static_cast<u64>(q.s) - cur.size();
    if (left == 0) {
      if (rem == 0) {
        ++res.unordered;
        res.ordered += arrangements(cur);
        if (res.multisets.size() < keep) res.multisets.push_back(cur);
        if (stop_at_first) done = true;
      }
      return;
    }
    for (std::size_t i = start; i < ps.size() && !done; ++i) {
      const u64 sq = ps[i] * ps[i];
      if (sq * left > rem) break;
      const u64 big = ps.back() * ps.back();
      if (big * left < rem) continue;
      cur.push_back(ps[i]);
      self(self, i, rem - sq);
      cur.pop_back();
    }
  };
  rec(rec, 0, static_cast<u64>(q.n));
  return res;
}

double singular_integral_exact(i64 n, int s, double lo, double hi) {
  if (s < 1) fail(ErrorKind::Domain, "s must be positive");
  if (lo < 1.0) fail(ErrorKind::Domain, "interval must exclude m <= 1");
  if (n < 0) fail(ErrorKind::Domain, "n must be non-negative");
  const u64 a = static_cast<u64>(std::floor(lo)) + 1;
  const u64 b = std::min<u64>(static_cast<u64>(std::floor(hi)), isqrt(static_cast<u64>(n)));
  if (b < a) return 0.0;
  if (static_cast<long double>(n) * (b - a + 1) * s > 2e9L) fail(ErrorKind::Capacity, "singular integral instance too large");
  std::vector<long double> cur(static_cast<std::size_t>(n) + 1, 0.0L), next;
  cur[0] = 1.0L;
  for (int k = 0; k < s; ++k) {
    next.assign(cur.size(), 0.0L);
    for (std::size_t t = 0; t < cur.size(); ++t) {
      if (cur[t] == 0.0L) continue;
      for (u64 m = a; m <= b; ++m) {
        const std::size_t u = t + m * m;
        if (u >= cur.size()) break;
        next[u] += cur[t] / std::log(static_cast<long double>(m));
      }
    }
    cur.swap(next);
  }
  return static_cast<double>(cur[static_cast<std::size_t>(n)]);
}

double HSpec::at(double n) const {
  if (exponent) return std::pow(n, *exponent);
  return value;
}

std::string HSpec::describe() const {
  std::ostringstream os;
  if (exponent)
    os << "n^" << *exponent;
  else if (std::isinf(value))
    os << "inf";
  else
    os << value;
  return os.str();
}

ScanReport exceptional_scan(i64 X, int s, const HSpec& H, std::optional<std::pair<i64, i64>> window, unsigned threads) {
  if (s < 3 || s > 16) fail(ErrorKind::Domain, "scan needs 3 <= s <= 16");
  if (X < 4LL * s) fail(ErrorKind::Domain, "X must be at least 4s");
  if (X > kMaxRepN) fail(ErrorKind::Capacity, "X exceeds 1e14");
  const double HX = H.at(static_cast<double>(X));
  if (!(HX >= 0.0)) fail(ErrorKind::Domain, "H must be non-negative");
  const long double reach = std::isinf(HX) ? 1e30L : static_cast<long double>(HX) * std::sqrt(static_cast<long double>(X));
  const i64 allowed_lo = static_cast<i64>(std::max<long double>(1.0L, std::ceil(X - reach)));
  const i64 allowed_hi = static_cast<i64>(std::min<long double>(static_cast<long double>(kMaxRepN), std::floor(X + reach)));
  ScanReport rep;
  rep.X = X;
  rep.s = s;
  rep.H = H;
  if (window) {
    if (window->first > window->second) fail(ErrorKind::Domain, "window lower end exceeds upper end");
    if (window->first < allowed_lo || window->second > allowed_hi)
      fail(ErrorKind::Domain, "window must lie inside [X - H sqrt X, X + H sqrt X] = [" + std::to_string(allowed_lo) +
                                  ", " + std::to_string(allowed_hi) + "]");
    rep.lo = window->first;
    rep.hi = window->second;
  } else {
    rep.lo = std::max(allowed_lo, X - kDefaultScanHalfWidth);
    rep.hi = std::min(allowed_hi, X + kDefaultScanHalfWidth);
  }
  if (rep.hi - rep.lo + 1 > 10'000'000) fail(ErrorKind::Capacity, "scan window wider than 1e7");

  // admissible prime index range for each n
  const double hmax = H.at(static_cast<double>(rep.hi));
  const double top = std::sqrt(static_cast<double>(rep.hi));
  const double pmax = std::isinf(hmax) ? top : std::min(top, std::sqrt(static_cast<double>(rep.hi) / s) + hmax);
  const auto all = primes_up_to(static_cast<u64>(std::floor(pmax)) + 1);
  const std::size_t count = static_cast<std::size_t>(rep.hi - rep.lo + 1);
  std::vector<std::pair<std::size_t, std::size_t>> range(count);
  for (std::size_t i = 0; i < count; ++i) {
    const i64 n = rep.lo + static_cast<i64>(i);
    const long double c = std::sqrt(static_cast<long double>(n) / s);
    const long double h = H.at(static_cast<double>(n));
    // primes above sqrt(n) never contribute, so they may stay in the set
    std::size_t a = 0, b = all.size();
    if (!std::isinf(static_cast<double>(h))) {
      a = std::lower_bound(all.begin(), all.end(), 0, [&](u64 p, int) { return static_cast<long double>(p) < c - h; }) - all.begin();
      b = std::upper_bound(all.begin(), all.end(), 0, [&](int, u64 p) { return static_cast<long double>(p) > c + h; }) -
          all.begin();
    }
    range[i] = {a, std::max(a, b)};
  }
  struct Group {
    std::size_t first, last;  // row indices, inclusive
    std::size_t a, b;
  };
  std::vector<Group> groups;
  for (std::size_t i = 0; i < count; ++i) {
    if (!groups.empty() && groups.back().a == range[i].first && groups.back().b == range[i].second)
      groups.back().last = i;
    else
      groups.push_back({i, i, range[i].first, range[i].second});
  }

  rep.rows.resize(count);
  std::vector<std::string> backend(groups.size());
  parallel_chunks(groups.size(), resolve_threads(threads), [&](std::size_t, std::size_t gb, std::size_t ge) {
    for (std::size_t g = gb; g < ge; ++g) {
      const auto& G = groups[g];
      std::vector<u64> ps(all.begin() + static_cast<std::ptrdiff_t>(G.a), all.begin() + static_cast<std::ptrdiff_t>(G.b));
      std::optional<WindowCounts> wc;
      const u64 n_last = static_cast<u64>(rep.lo + static_cast<i64>(G.last));
      if (!ps.empty()) {
        try {
          const CoeffVector cv = prime_square_coeffs(ps);
          wc = window_counts(cv, s, kDefaultMaxConvolution, n_last);
          backend[g] = wc->backend;
        } catch (const Error& e) {
          if (e.kind() != ErrorKind::Capacity) throw;
        }
        if (!wc) backend[g] = "mitm";
      } else {
        backend[g] = "empty";
      }
      for (std::size_t i = G.first; i <= G.last; ++i) {
        const i64 n = rep.lo + static_cast<i64>(i);
        u64 c = 0;
        if (wc)
          c = static_cast<u64>(wc->count_at(static_cast<u64>(n)));
        else if (!ps.empty() && n >= 4LL * s)
          c = count_representations(RepQuery{n, s, H.at(static_cast<double>(n)), true});
        rep.rows[i] = {n, is_H(n, s), c};
      }
    }
  });
  std::set<std::string> used(backend.begin(), backend.end());
  used.erase("empty");
  for (const auto& b : used) rep.backend += (rep.backend.empty() ? "" : "+") + b;
  if (rep.backend.empty()) rep.backend = "none";

  std::vector<i64> positive;
  for (const auto& r : rep.rows) {
    if (!r.in_H) continue;
    ++rep.h_count;
    if (r.count == 0)
      rep.exceptions.push_back(r.n);
    else
      positive.push_back(r.n);
  }
  // independent re-check
  for (i64 n : rep.exceptions) {
    if (n < 4LL * s) continue;
    const auto d = enumerate_representations(RepQuery{n, s, H.at(static_cast<double>(n)), true}, true);
    ++rep.spot_checks;
    if (d.ordered != 0) fail(ErrorKind::Consistency, "scan reported no representation of " + std::to_string(n) + " but one exists");
  }
  const std::size_t samples = std::min<std::size_t>(positive.size(), 100);
  for (std::size_t k = 0; k < samples; ++k) {
    const i64 n = positive[k * positive.size() / samples];
    const RepQuery q{n, s, H.at(static_cast<double>(n)), true};
    const auto d = enumerate_representations(q, true);
    ++rep.spot_checks;
    if (d.ordered == 0) fail(ErrorKind::Consistency, "scan found representations of " + std::to_string(n) + " that enumeration does not");
    if (k < 3) {
      const u64 m = count_representations(q);
      const u64 row = rep.rows[static_cast<std::size_t>(n - rep.lo)].count;
      if (m != row)
        fail(ErrorKind::Consistency, "scan count " + std::to_string(row) + " for " + std::to_string(n) +
                                         " differs from meet-in-the-middle count " + std::to_string(m));
    }
  }
  return rep;
}

}  // namespace aesq
