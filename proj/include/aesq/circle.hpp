#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "aesq/local_arithmetic.hpp"
#include "aesq/primes.hpp"

namespace aesq {

/// Coefficients of f(alpha) = sum_m w(m) e(alpha m^2) on the lattice of
/// squares: coeffs[k] = sum of w(m) over m with m^2 = offset + stride * k.
struct CoeffVector {
  u64 offset = 0;
  u64 stride = 1;
  std::vector<double> coeffs;
  std::vector<std::pair<u64, double>> terms;  // (m, w(m)), ascending m
  bool integral = true;                       // every weight is an integer

  double mass() const;
  std::size_t length() const { return coeffs.size(); }
};

/// Builds the vector from explicit (m, w) terms; the stride is the gcd of the
/// differences of the squares, so primes >= 5 pack with stride 24.
CoeffVector make_coeffs(std::vector<std::pair<u64, double>> terms);

/// Unit weight on the primes in (lo, hi].
CoeffVector prime_square_coeffs(double lo, double hi);
/// Unit weight on an explicit ascending prime list.
CoeffVector prime_square_coeffs(const std::vector<u64>& primes);
/// 1/log m on every integer m in (lo, hi]; requires lo >= 1.
CoeffVector log_weight_coeffs(double lo, double hi);
/// Integer weight lambda(m) on every integer in (lo, hi].
CoeffVector lambda_coeffs(double lo, double hi, const std::function<i64(u64)>& lambda);

/// Direct summation of f(alpha).
std::complex<double> f_eval(double alpha, const CoeffVector& weights);

inline constexpr std::size_t kDefaultMaxConvolution = std::size_t{1} << 25;

struct WindowCounts {
  u64 n_offset = 0;  // s * offset
  u64 stride = 1;
  bool exact = true;               // integer weights, counts exact
  std::vector<i64> counts;         // exact path
  std::vector<double> values;      // weighted path
  double max_rounding_deviation = 0.0;  // largest |x - round(x)| before rounding
  std::string backend;             // "fft", "ntt" or "fft-real"

  /// Representation weight of n; 0 off the lattice or out of range.
  double at(u64 n) const;
  i64 count_at(u64 n) const;
  u64 n_min() const { return n_offset; }
  u64 n_max() const;
};

/// s-fold convolution of the coefficient vector: counts of
/// m_1^2 + ... + m_s^2 = n weighted by prod w(m_i). Integer weights are
/// rounded after each floating FFT product when the error budget allows and
/// fall back to a three-prime number-theoretic transform otherwise. Entries
/// beyond max_n are dropped.
WindowCounts window_counts(const CoeffVector& weights, int s,
                           std::size_t max_length = kDefaultMaxConvolution,
                           u64 max_n = std::numeric_limits<u64>::max());

/// Plain O(n^2) s-fold convolution; the oracle for window_counts.
std::vector<double> direct_convolution_power(const std::vector<double>& coeffs, int s);

/// Exact-phase rectangle rule for int_0^1 f(beta)^s e(-beta n) d beta with N
/// nodes. N = 0 picks N large enough to integrate the trigonometric
/// polynomial exactly.
double circle_integral_quadrature(const CoeffVector& weights, int s, u64 n, u64 N = 0);

struct Arc {
  u64 q = 1;
  u64 a = 1;
  double center = 1.0;
  double half_width = 0.0;  // 1/(q Q)
};

struct ArcPartition {
  double P = 1.0;
  double Q = 1.0;
  std::vector<Arc> arcs;  // ascending q, then a

  /// The smallest-q arc with |q alpha - a| <= 1/Q, or nullopt for a minor-arc
  /// point.
  std::optional<Arc> classify(double alpha) const;
  bool disjoint() const;
  /// Sum of the arc lengths 2/(qQ).
  double measure() const;
};

/// Arcs M(q, a) = {alpha : |q alpha - a| <= 1/Q}, 1 <= a <= q <= P, (a, q) = 1.
ArcPartition arc_partition(double P, double Q);

/// P = x^{2 sigma - eps}, Q = x^{2 theta} / P.
std::pair<double, double> arc_parameters(double x, double theta, double sigma, double eps = 1e-3);

/// Exact length of the union of the arcs for integer P and rational Q.
BigRational major_arc_union_measure(u64 P, const BigRational& Q);
/// sum_{q <= P} phi(q) * 2 / (q Q).
BigRational major_arc_analytic_measure(u64 P, const BigRational& Q);

}  // namespace aesq
