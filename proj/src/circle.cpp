#include "aesq/circle.hpp"

#include <algorithm>
#include <cmath>
#include <mutex>
#include <numbers>
#include <numeric>

#include <fftw3.h>

#include "aesq/errors.hpp"

namespace aesq {

namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

std::mutex& fftw_planner_mutex() {
  static std::mutex m;
  return m;
}

// ---- number-theoretic transform ------------------------------------------

struct NttPrime {
  u64 mod;
  u64 root;
};
constexpr NttPrime kNttPrimes[3] = {{469762049ULL, 3}, {167772161ULL, 3}, {2013265921ULL, 31}};
constexpr std::size_t kNttMaxLength = std::size_t{1} << 25;

u64 pow_mod(u64 b, u64 e, u64 m) {
  u64 r = 1;
  b %= m;
  while (e) {
    if (e & 1) r = r * b % m;
    b = b * b % m;
    e >>= 1;
  }
  return r;
}

void ntt(std::vector<u64>& a, bool invert, const NttPrime& p) {
  const std::size_t n = a.size();
  for (std::size_t i = 1, j = 0; i < n; ++i) {
    std::size_t bit = n >> 1;
    for (; j & bit; bit >>= 1) j ^= bit;
    j ^= bit;
    if (i < j) std::swap(a[i], a[j]);
  }
  for (std::size_t len = 2; len <= n; len <<= 1) {
    u64 w = pow_mod(p.root, (p.mod - 1) / len, p.mod);
    if (invert) w = pow_mod(w, p.mod - 2, p.mod);
    for (std::size_t i = 0; i < n; i += len) {
      u64 wn = 1;
      for (std::size_t j = 0; j < len / 2; ++j) {
        const u64 u = a[i + j];
        const u64 v = a[i + j + len / 2] * wn % p.mod;
        a[i + j] = u + v < p.mod ? u + v : u + v - p.mod;
        a[i + j + len / 2] = u >= v ? u - v : u + p.mod - v;
        wn = wn * w % p.mod;
      }
    }
  }
  if (invert) {
    const u64 inv_n = pow_mod(n, p.mod - 2, p.mod);
    for (auto& x : a) x = x * inv_n % p.mod;
  }
}

std::vector<i64> ntt_convolve(const std::vector<i64>& a, const std::vector<i64>& b) {
  const std::size_t out = a.size() + b.size() - 1;
  std::size_t n = 1;
  while (n < out) n <<= 1;
  if (n > kNttMaxLength) fail(ErrorKind::Capacity, "convolution length " + std::to_string(out) + " exceeds the NTT limit");
  std::vector<std::vector<u64>> res(3);
  for (int k = 0; k < 3; ++k) {
    const auto& p = kNttPrimes[k];
    std::vector<u64> fa(n, 0), fb(n, 0);
    auto load = [&](const std::vector<i64>& src, std::vector<u64>& dst) {
      for (std::size_t i = 0; i < src.size(); ++i) {
        const i64 r = src[i] % static_cast<i64>(p.mod);
        dst[i] = static_cast<u64>(r < 0 ? r + static_cast<i64>(p.mod) : r);
      }
    };
    load(a, fa);
    load(b, fb);
    ntt(fa, false, p);
    ntt(fb, false, p);
    for (std::size_t i = 0; i < n; ++i) fa[i] = fa[i] * fb[i] % p.mod;
    ntt(fa, true, p);
    res[k] = std::move(fa);
  }
  using i128 = __int128;
  const u64 m1 = kNttPrimes[0].mod, m2 = kNttPrimes[1].mod, m3 = kNttPrimes[2].mod;
  const u64 inv_m1_m2 = pow_mod(m1 % m2, m2 - 2, m2);
  const u64 inv_m1m2_m3 = pow_mod((m1 % m3) * (m2 % m3) % m3, m3 - 2, m3);
  const i128 M = static_cast<i128>(m1) * m2 * m3;
  std::vector<i64> c(out);
  for (std::size_t i = 0; i < out; ++i) {
    const u64 r1 = res[0][i], r2 = res[1][i], r3 = res[2][i];
    const u64 t1 = (r2 + m2 - r1 % m2) % m2 * inv_m1_m2 % m2;
    const i128 x12 = static_cast<i128>(r1) + static_cast<i128>(m1) * t1;
    const u64 x12_mod3 = static_cast<u64>(x12 % m3);
    const u64 t2 = (r3 + m3 - x12_mod3) % m3 * inv_m1m2_m3 % m3;
    i128 x = x12 + static_cast<i128>(m1) * m2 * t2;
    if (x > M / 2) x -= M;
    c[i] = static_cast<i64>(x);
  }
  return c;
}

// ---- floating FFT ----------------------------------------------------------

std::vector<double> fft_convolve(const std::vector<double>& a, const std::vector<double>& b) {
  const std::size_t out = a.size() + b.size() - 1;
  if (std::min(a.size(), b.size()) <= 32) {
    std::vector<double> c(out, 0.0);
    for (std::size_t i = 0; i < a.size(); ++i) {
      if (a[i] == 0.0) continue;
      for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
    }
    return c;
  }
  std::size_t n = 1;
  while (n < out) n <<= 1;
  const std::size_t nc = n / 2 + 1;
  double* in = fftw_alloc_real(n);
  fftw_complex* fa = fftw_alloc_complex(nc);
  fftw_complex* fb = fftw_alloc_complex(nc);
  fftw_plan fwd, bwd;
  {
    std::lock_guard<std::mutex> lock(fftw_planner_mutex());
    fwd = fftw_plan_dft_r2c_1d(static_cast<int>(n), in, fa, FFTW_ESTIMATE);
    bwd = fftw_plan_dft_c2r_1d(static_cast<int>(n), fa, in, FFTW_ESTIMATE);
  }
  std::fill(in, in + n, 0.0);
  std::copy(a.begin(), a.end(), in);
  fftw_execute_dft_r2c(fwd, in, fa);
  std::fill(in, in + n, 0.0);
  std::copy(b.begin(), b.end(), in);
  fftw_execute_dft_r2c(fwd, in, fb);
  for (std::size_t i = 0; i < nc; ++i) {
    const double re = fa[i][0] * fb[i][0] - fa[i][1] * fb[i][1];
    const double im = fa[i][0] * fb[i][1] + fa[i][1] * fb[i][0];
    fa[i][0] = re;
    fa[i][1] = im;
  }
  fftw_execute_dft_c2r(bwd, fa, in);
  std::vector<double> c(in, in + out);
  for (auto& x : c) x /= static_cast<double>(n);
  {
    std::lock_guard<std::mutex> lock(fftw_planner_mutex());
    fftw_destroy_plan(fwd);
    fftw_destroy_plan(bwd);
  }
  fftw_free(in);
  fftw_free(fa);
  fftw_free(fb);
  return c;
}

i64 max_abs(const std::vector<i64>& v) {
  i64 m = 0;
  for (i64 x : v) m = std::max(m, x < 0 ? -x : x);
  return m;
}

struct ExactConv {
  double deviation = 0.0;
  bool used_ntt = false;
};

std::vector<i64> exact_convolve(const std::vector<i64>& a, const std::vector<i64>& b, std::size_t limit, ExactConv& info) {
  const long double ma = static_cast<long double>(max_abs(a));
  const long double mb = static_cast<long double>(max_abs(b));
  const long double bound = ma * mb * static_cast<long double>(std::min(a.size(), b.size()));
  if (bound > 4.0e18L) fail(ErrorKind::Capacity, "convolution values exceed 64-bit range");
  const std::size_t out = a.size() + b.size() - 1;
  const long double budget = bound * std::log2(static_cast<long double>(std::max<std::size_t>(out, 2)));
  if (budget < 0x1p48L) {
    std::vector<double> da(a.begin(), a.end()), db(b.begin(), b.end());
    const auto c = fft_convolve(da, db);
    std::vector<i64> r(std::min(c.size(), limit));
    double dev = 0.0;
    for (std::size_t i = 0; i < r.size(); ++i) {
      const double rd = std::nearbyint(c[i]);
      dev = std::max(dev, std::fabs(c[i] - rd));
      r[i] = static_cast<i64>(rd);
    }
    info.deviation = std::max(info.deviation, dev);
    if (dev < 0.25) return r;
  }
  info.used_ntt = true;
  auto r = ntt_convolve(a, b);
  if (r.size() > limit) r.resize(limit);
  return r;
}

u64 gcd_u64(u64 a, u64 b) { return std::gcd(a, b); }

}  // namespace

// ---- coefficient vectors ---------------------------------------------------

double CoeffVector::mass() const {
  double m = 0.0;
  for (const auto& [k, w] : terms) m += w;
  return m;
}

CoeffVector make_coeffs(std::vector<std::pair<u64, double>> terms) {
  std::sort(terms.begin(), terms.end());
  CoeffVector cv;
  cv.terms = std::move(terms);
  if (cv.terms.empty()) return cv;
  for (const auto& [m, w] : cv.terms) {
    if (m > 3'000'000'000ULL) fail(ErrorKind::Capacity, "square of m overflows");
    if (w != std::floor(w)) cv.integral = false;
  }
  const u64 first = cv.terms.front().first * cv.terms.front().first;
  u64 g = 0;
  for (const auto& [m, w] : cv.terms) g = gcd_u64(g, m * m - first);
  cv.offset = first;
  cv.stride = g == 0 ? 1 : g;
  const u64 last = cv.terms.back().first * cv.terms.back().first;
  const u64 len = (last - first) / cv.stride + 1;
  if (len > kDefaultMaxConvolution) fail(ErrorKind::Capacity, "coefficient vector too long");
  cv.coeffs.assign(len, 0.0);
  for (const auto& [m, w] : cv.terms) cv.coeffs[(m * m - first) / cv.stride] += w;
  return cv;
}

CoeffVector prime_square_coeffs(const std::vector<u64>& primes) {
  std::vector<std::pair<u64, double>> t;
  t.reserve(primes.size());
  for (u64 p : primes) t.emplace_back(p, 1.0);
  return make_coeffs(std::move(t));
}

CoeffVector prime_square_coeffs(double lo, double hi) {
  const u64 a = static_cast<u64>(std::floor(std::max(lo, 0.0)));
  const u64 b = static_cast<u64>(std::floor(hi));
  if (b <= a) return make_coeffs({});
  std::vector<u64> ps;
  for (u64 p : primes_up_to(b))
    if (p > a) ps.push_back(p);
  return prime_square_coeffs(ps);
}

CoeffVector log_weight_coeffs(double lo, double hi) {
  if (lo < 1.0) fail(ErrorKind::Domain, "log weights need lo >= 1");
  const u64 a = static_cast<u64>(std::floor(lo));
  const u64 b = static_cast<u64>(std::floor(hi));
  std::vector<std::pair<u64, double>> t;
  for (u64 m = a + 1; m <= b; ++m) t.emplace_back(m, 1.0 / std::log(static_cast<double>(m)));
  return make_coeffs(std::move(t));
}

CoeffVector lambda_coeffs(double lo, double hi, const std::function<i64(u64)>& lambda) {
  const u64 a = static_cast<u64>(std::floor(std::max(lo, 0.0)));
  const u64 b = static_cast<u64>(std::floor(hi));
  std::vector<std::pair<u64, double>> t;
  for (u64 m = a + 1; m <= b; ++m) {
    const i64 w = lambda(m);
    if (w != 0) t.emplace_back(m, static_cast<double>(w));
  }
  return make_coeffs(std::move(t));
}

std::complex<double> f_eval(double alpha, const CoeffVector& weights) {
  long double re = 0.0L, im = 0.0L;
  const long double a = static_cast<long double>(alpha) - std::floor(static_cast<long double>(alpha));
  for (const auto& [m, w] : weights.terms) {
    long double ph = a * static_cast<long double>(m) * static_cast<long double>(m);
    ph -= std::floor(ph);
    const double ang = kTwoPi * static_cast<double>(ph);
    re += w * std::cos(ang);
    im += w * std::sin(ang);
  }
  return {static_cast<double>(re), static_cast<double>(im)};
}

// ---- window convolution ----------------------------------------------------

double WindowCounts::at(u64 n) const {
  if (n < n_offset || (n - n_offset) % stride != 0) return 0.0;
  const u64 k = (n - n_offset) / stride;
  if (exact) return k < counts.size() ? static_cast<double>(counts[k]) : 0.0;
  return k < values.size() ? values[k] : 0.0;
}

i64 WindowCounts::count_at(u64 n) const {
  if (!exact) fail(ErrorKind::Domain, "count_at on a weighted convolution");
  if (n < n_offset || (n - n_offset) % stride != 0) return 0;
  const u64 k = (n - n_offset) / stride;
  return k < counts.size() ? counts[k] : 0;
}

u64 WindowCounts::n_max() const {
  const std::size_t len = exact ? counts.size() : values.size();
  return len == 0 ? n_offset : n_offset + stride * (len - 1);
}

WindowCounts window_counts(const CoeffVector& weights, int s, std::size_t max_length, u64 max_n) {
  if (s < 1) fail(ErrorKind::Domain, "s must be positive");
  WindowCounts wc;
  wc.stride = weights.stride;
  wc.n_offset = weights.offset * static_cast<u64>(s);
  wc.exact = weights.integral;
  if (weights.coeffs.empty()) {
    wc.backend = "empty";
    return wc;
  }
  std::size_t out_len = (weights.coeffs.size() - 1) * static_cast<std::size_t>(s) + 1;
  if (max_n < wc.n_offset) {
    wc.backend = "empty";
    return wc;
  }
  out_len = static_cast<std::size_t>(std::min<u64>(out_len, (max_n - wc.n_offset) / wc.stride + 1));
  if (out_len > max_length)
    fail(ErrorKind::Capacity, "window convolution length " + std::to_string(out_len) + " exceeds limit " +
                                  std::to_string(max_length));
  if (wc.exact) {
    std::vector<i64> base(weights.coeffs.size());
    for (std::size_t i = 0; i < base.size(); ++i) base[i] = static_cast<i64>(weights.coeffs[i]);
    if (base.size() > out_len) base.resize(out_len);
    ExactConv info;
    std::vector<i64> acc;
    bool have = false;
    int e = s;
    while (e > 0) {
      if (e & 1) {
        acc = have ? exact_convolve(acc, base, out_len, info) : base;
        if (acc.size() > out_len) acc.resize(out_len);
        have = true;
      }
      e >>= 1;
      if (e > 0) {
        base = exact_convolve(base, base, out_len, info);
      }
    }
    wc.counts = std::move(acc);
    wc.max_rounding_deviation = info.deviation;
    wc.backend = info.used_ntt ? "ntt" : "fft";
  } else {
    std::vector<double> base = weights.coeffs, acc;
    if (base.size() > out_len) base.resize(out_len);
    bool have = false;
    int e = s;
    while (e > 0) {
      if (e & 1) {
        acc = have ? fft_convolve(acc, base) : base;
        if (acc.size() > out_len) acc.resize(out_len);
        have = true;
      }
      e >>= 1;
      if (e > 0) {
        base = fft_convolve(base, base);
        if (base.size() > out_len) base.resize(out_len);
      }
    }
    wc.values = std::move(acc);
    wc.backend = "fft-real";
  }
  return wc;
}

std::vector<double> direct_convolution_power(const std::vector<double>& coeffs, int s) {
  if (s < 1) fail(ErrorKind::Domain, "s must be positive");
  std::vector<double> acc = coeffs;
  for (int k = 1; k < s; ++k) {
    std::vector<double> next(acc.size() + coeffs.size() - 1, 0.0);
    for (std::size_t i = 0; i < acc.size(); ++i)
      for (std::size_t j = 0; j < coeffs.size(); ++j) next[i + j] += acc[i] * coeffs[j];
    acc = std::move(next);
  }
  return acc;
}

double circle_integral_quadrature(const CoeffVector& weights, int s, u64 n, u64 N) {
  if (s < 1) fail(ErrorKind::Domain, "s must be positive");
  if (weights.terms.empty()) return 0.0;
  const u64 top = weights.terms.back().first;
  if (N == 0) N = static_cast<u64>(s) * top * top + n + 1;
  if (N > 50'000'000ULL) fail(ErrorKind::Capacity, "quadrature node count too large");
  using u128 = unsigned __int128;
  std::vector<u64> sq;
  for (const auto& [m, w] : weights.terms) sq.push_back((m % N) * (m % N) % N);
  long double total = 0.0L;
  const u64 nm = n % N;
  for (u64 j = 0; j < N; ++j) {
    std::complex<long double> v = 0.0L;
    for (std::size_t k = 0; k < sq.size(); ++k) {
      const u64 r = static_cast<u64>(static_cast<u128>(j) * sq[k] % N);
      const long double ang = 2.0L * std::numbers::pi_v<long double> * static_cast<long double>(r) / N;
      v += static_cast<long double>(weights.terms[k].second) * std::complex<long double>(std::cos(ang), std::sin(ang));
    }
    std::complex<long double> p = 1.0L;
    for (int i = 0; i < s; ++i) p *= v;
    const u64 r = static_cast<u64>(static_cast<u128>(j) * nm % N);
    const long double ang = -2.0L * std::numbers::pi_v<long double> * static_cast<long double>(r) / N;
    total += (p * std::complex<long double>(std::cos(ang), std::sin(ang))).real();
  }
  return static_cast<double>(total / N);
}

// ---- arcs ------------------------------------------------------------------

std::optional<Arc> ArcPartition::classify(double alpha) const {
  double x = alpha - std::floor(alpha);
  const u64 qmax = static_cast<u64>(std::floor(P));
  for (u64 q = 1; q <= qmax; ++q) {
    double y = x;
    long double a = std::nearbyint(static_cast<long double>(q) * y);
    if (a < 1.0L) {
      y += 1.0;
      a = static_cast<long double>(q);
    }
    if (std::gcd(static_cast<u64>(a), q) != 1) continue;
    if (std::fabs(static_cast<long double>(q) * y - a) <= 1.0L / Q)
      return Arc{q, static_cast<u64>(a), static_cast<double>(a) / q, 1.0 / (static_cast<double>(q) * Q)};
  }
  return std::nullopt;
}

bool ArcPartition::disjoint() const {
  if (arcs.size() < 2) return true;
  std::vector<std::pair<double, double>> iv;
  for (const auto& a : arcs) iv.emplace_back(a.center - a.half_width, a.center + a.half_width);
  std::sort(iv.begin(), iv.end());
  for (std::size_t i = 1; i < iv.size(); ++i)
    if (iv[i].first <= iv[i - 1].second) return false;
  return iv.back().second - 1.0 < iv.front().first;
}

double ArcPartition::measure() const {
  double m = 0.0;
  for (const auto& a : arcs) m += 2.0 * a.half_width;
  return m;
}

ArcPartition arc_partition(double P, double Q) {
  if (!(P >= 1.0) || !(Q > 0.0)) fail(ErrorKind::Domain, "arc partition needs P >= 1 and Q > 0");
  const u64 qmax = static_cast<u64>(std::floor(P));
  if (qmax > 20'000) fail(ErrorKind::Capacity, "too many arcs");
  ArcPartition ap;
  ap.P = P;
  ap.Q = Q;
  for (u64 q = 1; q <= qmax; ++q)
    for (u64 a = 1; a <= q; ++a)
      if (std::gcd(a, q) == 1)
        ap.arcs.push_back(Arc{q, a, static_cast<double>(a) / q, 1.0 / (static_cast<double>(q) * Q)});
  return ap;
}

std::pair<double, double> arc_parameters(double x, double theta, double sigma, double eps) {
  if (!(x > 1.0)) fail(ErrorKind::Domain, "x must exceed 1");
  const double P = std::pow(x, 2.0 * sigma - eps);
  return {P, std::pow(x, 2.0 * theta) / P};
}

BigRational major_arc_union_measure(u64 P, const BigRational& Q) {
  if (P < 1 || Q <= 0) fail(ErrorKind::Domain, "arc measure needs P >= 1 and Q > 0");
  if (P > 2'000) fail(ErrorKind::Capacity, "exact arc measure limited to P <= 2000");
  std::vector<std::pair<BigRational, BigRational>> iv;
  for (u64 q = 1; q <= P; ++q) {
    const BigRational w = BigRational(1) / (BigRational(q) * Q);
    for (u64 a = 1; a <= q; ++a)
      if (std::gcd(a, q) == 1) {
        const BigRational c(static_cast<long long>(a), static_cast<long long>(q));
        iv.emplace_back(c - w, c + w);
      }
  }
  std::sort(iv.begin(), iv.end());
  BigRational total = 0;
  BigRational lo = iv.front().first, hi = iv.front().second;
  for (std::size_t i = 1; i < iv.size(); ++i) {
    if (iv[i].first <= hi) {
      if (iv[i].second > hi) hi = iv[i].second;
    } else {
      total += hi - lo;
      lo = iv[i].first;
      hi = iv[i].second;
    }
  }
  total += hi - lo;
  // wrap the part above 1 back onto the start of the circle
  BigRational max_hi = 0;
  for (const auto& v : iv)
    if (v.second > max_hi) max_hi = v.second;
  const BigRational over = max_hi - 1 - iv.front().first;
  if (over > 0) total -= over;
  return total;
}

BigRational major_arc_analytic_measure(u64 P, const BigRational& Q) {
  if (P < 1 || Q <= 0) fail(ErrorKind::Domain, "arc measure needs P >= 1 and Q > 0");
  BigRational total = 0;
  for (u64 q = 1; q <= P; ++q) total += BigRational(2 * static_cast<long long>(euler_phi(q))) / (BigRational(q) * Q);
  return total;
}

}  // namespace aesq
