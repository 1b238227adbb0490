#pragma once

#include <complex>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "aesq/primes.hpp"

namespace aesq {

using BigRational = boost::multiprecision::cpp_rational;

inline constexpr u64 kMaxLocalModulus = 10'000;

u64 euler_phi(u64 q);

/// S(q, a) = sum over 1 <= h <= q, gcd(h, q) = 1 of e(a h^2 / q).
std::complex<double> gauss_sum(u64 q, i64 a);

/// All S(q, a) for 0 <= a < q (entries with gcd(a, q) > 1 are left at 0).
std::vector<std::complex<double>> gauss_sums(u64 q);

/// A_s(n; q) = phi(q)^{-s} sum over reduced a mod q of S(q, a)^s e(-a n / q).
/// Throws Consistency if the imaginary part exceeds 1e-10.
double a_term(i64 n, u64 q, int s);

struct SingularSeriesTerm {
  u64 q;
  double value;
};

struct SingularSeriesPartial {
  i64 n = 0;
  int s = 0;
  u64 P = 0;
  double value = 0.0;                    // 1 + sum_{2 <= q <= P} A_s(n; q)
  std::vector<SingularSeriesTerm> terms;  // q = 1..P
};

SingularSeriesPartial singular_series_partial(i64 n, int s, u64 P, unsigned threads = 1);

/// N_s(n, q) q / phi(q)^s with N_s(n, q) the number of reduced residue
/// tuples (h_1..h_s) mod q with sum h_i^2 = n (mod q). Exact.
BigRational local_density(i64 n, int s, u64 q);

/// Number of s-tuples counted by local_density, by dynamic programming over
/// residues.
boost::multiprecision::cpp_int local_solution_count(i64 n, int s, u64 q);

/// Membership in the local-condition set: n = 3 (mod 24) and 5 does not divide
/// n for s = 3; n = s (mod 24) for s >= 4.
bool is_H(i64 n, int s);

}  // namespace aesq
