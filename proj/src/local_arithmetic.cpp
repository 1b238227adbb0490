#include "aesq/local_arithmetic.hpp"

#include <cmath>
#include <numbers>
#include <numeric>
#include <sstream>

#include "aesq/errors.hpp"
#include "aesq/parallel.hpp"

namespace aesq {

namespace {

u64 mod(i64 n, u64 q) {
  const i64 r = n % static_cast<i64>(q);
  return static_cast<u64>(r < 0 ? r + static_cast<i64>(q) : r);
}

// e(k/q) for 0 <= k < q.
std::vector<std::complex<double>> roots_of_unity(u64 q) {
  std::vector<std::complex<double>> out(q);
  for (u64 k = 0; k < q; ++k) {
    const long double angle = 2.0L * std::numbers::pi_v<long double> * static_cast<long double>(k) /
                              static_cast<long double>(q);
    out[k] = {static_cast<double>(std::cos(angle)), static_cast<double>(std::sin(angle))};
  }
  return out;
}

// Multiplicity of each residue r as h^2 mod q over reduced h.
std::vector<u64> square_counts(u64 q) {
  std::vector<u64> counts(q, 0);
  for (u64 h = 1; h <= q; ++h)
    if (std::gcd(h, q) == 1) counts[(h * h) % q] += 1;
  return counts;
}

void check_modulus(u64 q, const char* op) {
  if (q < 1) fail(ErrorKind::Domain, std::string(op) + ": q must be >= 1");
  if (q > kMaxLocalModulus)
    fail(ErrorKind::Capacity, std::string(op) + ": q=" + std::to_string(q) + " exceeds 10^4");
}

}  // namespace

u64 euler_phi(u64 q) {
  u64 result = q;
  for (const auto& [p, e] : factorize(q).factors) result = result / p * (p - 1);
  return result;
}

std::vector<std::complex<double>> gauss_sums(u64 q) {
  check_modulus(q, "gauss_sums");
  const auto roots = roots_of_unity(q);
  const auto counts = square_counts(q);
  std::vector<u64> residues;
  for (u64 r = 0; r < q; ++r)
    if (counts[r]) residues.push_back(r);
  std::vector<std::complex<double>> out(q, 0.0);
  for (u64 a = 0; a < q; ++a) {
    if (std::gcd(a, q) != 1 && q != 1) continue;
    std::complex<double> s = 0.0;
    for (u64 r : residues) s += static_cast<double>(counts[r]) * roots[(a * r) % q];
    out[a] = s;
  }
  return out;
}

std::complex<double> gauss_sum(u64 q, i64 a) {
  check_modulus(q, "gauss_sum");
  const u64 ar = mod(a, q);
  if (std::gcd(ar, q) != 1 && q != 1)
    fail(ErrorKind::Domain, "gauss_sum: gcd(a, q) must be 1");
  return gauss_sums(q)[ar];
}

double a_term(i64 n, u64 q, int s) {
  if (s < 3) fail(ErrorKind::Domain, "a_term requires s >= 3");
  check_modulus(q, "a_term");
  if (q == 1) return 1.0;
  const auto S = gauss_sums(q);
  const auto roots = roots_of_unity(q);
  const double phi = static_cast<double>(euler_phi(q));
  const u64 nr = mod(n, q);
  std::complex<double> total = 0.0;
  for (u64 a = 1; a < q; ++a) {
    if (std::gcd(a, q) != 1) continue;
    const std::complex<double> ratio = S[a] / phi;
    std::complex<double> power = 1.0;
    for (int k = 0; k < s; ++k) power *= ratio;
    total += power * roots[(q - (a * nr) % q) % q];
  }
  if (std::abs(total.imag()) > 1e-10) {
    std::ostringstream os;
    os << "a_term(n=" << n << ", q=" << q << ", s=" << s << "): imaginary part " << total.imag();
    fail(ErrorKind::Consistency, os.str());
  }
  return total.real();
}

SingularSeriesPartial singular_series_partial(i64 n, int s, u64 P, unsigned threads) {
  if (P < 1) fail(ErrorKind::Domain, "singular_series_partial requires P >= 1");
  if (s < 3) fail(ErrorKind::Domain, "singular_series_partial requires s >= 3");
  check_modulus(P, "singular_series_partial");
  SingularSeriesPartial out{n, s, P, 0.0, std::vector<SingularSeriesTerm>(P)};
  parallel_chunks(P, resolve_threads(threads), [&](std::size_t, std::size_t begin, std::size_t end) {
    for (std::size_t i = begin; i < end; ++i) {
      const u64 q = i + 1;
      out.terms[i] = {q, a_term(n, q, s)};
    }
  });
  // Ascending-q summation.
  for (const auto& t : out.terms) out.value += t.value;
  return out;
}

boost::multiprecision::cpp_int local_solution_count(i64 n, int s, u64 q) {
  using boost::multiprecision::cpp_int;
  if (s < 1) fail(ErrorKind::Domain, "local_solution_count requires s >= 1");
  check_modulus(q, "local_density");
  const auto sq = square_counts(q);
  std::vector<std::pair<u64, u64>> support;
  for (u64 r = 0; r < q; ++r)
    if (sq[r]) support.emplace_back(r, sq[r]);
  std::vector<cpp_int> cur(q, 0), next(q);
  cur[0] = 1;
  for (int pass = 0; pass < s; ++pass) {
    std::fill(next.begin(), next.end(), 0);
    for (u64 r = 0; r < q; ++r) {
      if (cur[r] == 0) continue;
      for (const auto& [t, c] : support) next[(r + t) % q] += cur[r] * c;
    }
    cur.swap(next);
  }
  return cur[mod(n, q)];
}

BigRational local_density(i64 n, int s, u64 q) {
  using boost::multiprecision::cpp_int;
  const cpp_int count = local_solution_count(n, s, q);
  cpp_int denom = 1;
  const cpp_int phi = euler_phi(q);
  for (int k = 0; k < s; ++k) denom *= phi;
  return BigRational(count * cpp_int(q), denom);
}

bool is_H(i64 n, int s) {
  if (s < 3) fail(ErrorKind::Domain, "is_H requires s >= 3");
  if (n < 1) return false;
  if (s == 3) return n % 24 == 3 && n % 5 != 0;
  return mod(n - s, 24) == 0;
}

}  // namespace aesq
