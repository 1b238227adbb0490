#include "aesq/decomposition.hpp"

#include <cmath>
#include <sstream>

#include "aesq/errors.hpp"
#include "aesq/parallel.hpp"

namespace aesq {

namespace {

// Smallest prime of m / (product of the listed distinct prime factors), or 0
// when that cofactor is 1.
u64 cofactor_spf(const Factorization& f, std::initializer_list<std::size_t> removed) {
  for (std::size_t i = 0; i < f.factors.size(); ++i) {
    unsigned e = f.factors[i].second;
    for (std::size_t r : removed)
      if (r == i) --e;
    if (e > 0) return f.factors[i].first;
  }
  return 0;
}

bool psi_cofactor(const Factorization& f, std::initializer_list<std::size_t> removed, double w) {
  const u64 spf = cofactor_spf(f, removed);
  return spf == 0 || static_cast<double>(spf) >= w;
}

}  // namespace

DecompParams DecompParams::from_theta(double theta, double x) {
  if (!(x > 1.0)) fail(ErrorKind::Domain, "DecompParams::from_theta requires x > 1");
  const double sigma = (2.0 * theta - 1.0) / 7.0;
  DecompParams p;
  p.z = std::pow(x, 2.0 * theta - 1.0 - 6.0 * sigma);
  p.U = std::pow(x, 1.0 - theta + 2.0 * sigma);
  p.V = std::pow(x, theta - 4.0 * sigma);
  p.sqrt_x1 = std::sqrt(x + std::pow(x, theta));
  p.theta = theta;
  p.x = x;
  p.validate();
  return p;
}

void DecompParams::validate() const {
  if (!(z >= 2.0 && z < U && U < V && V < x1())) {
    std::ostringstream os;
    os << "DecompParams: require 2 <= z < U < V < sqrt_x1^2, got z=" << z << " U=" << U
       << " V=" << V << " sqrt_x1=" << sqrt_x1;
    fail(ErrorKind::Domain, os.str());
  }
}

std::pair<u64, u64> short_interval(double theta, double x) {
  const double h = std::pow(x, theta);
  const double lo = std::floor(x - h);
  if (lo < 1.0) fail(ErrorKind::Domain, "short_interval: x - x^theta must be >= 1");
  return {static_cast<u64>(lo), static_cast<u64>(std::floor(x + h))};
}

DecompValue decompose(const Factorization& f, const DecompParams& P) {
  DecompValue out;
  out.m = f.m;
  out.prime = f.is_prime();
  out.varpi = psi(f, P.sqrt_x1) ? 1 : 0;
  auto& g = out.gamma;
  auto& gs = out.gamma_star;
  g[0] = psi(f, P.z) ? 1 : 0;

  const auto& fac = f.factors;
  const std::size_t n = fac.size();
  for (std::size_t i = 0; i < n; ++i) {
    const double p = static_cast<double>(fac[i].first);
    if (p >= P.z && p < P.U) {
      g[1] += psi_cofactor(f, {i}, p);
      g[4] += psi_cofactor(f, {i}, P.z);
    }
    if (p >= P.U && p <= P.V) g[2] += psi_cofactor(f, {i}, p);
    if (p > P.V && p < P.sqrt_x1) g[3] += psi_cofactor(f, {i}, p);
    // V^{1/2} < p < U and z <= p <= V^{1/2}, with p <= V^{1/2} as p^2 <= V.
    if (p * p > P.V && p < P.U) gs[0] += psi_cofactor(f, {i}, p);
    if (p >= P.z && p * p <= P.V) gs[1] += psi_cofactor(f, {i}, P.z);
  }

  // Pairs p2 < p1 (indices i < j), triples p3 < p2 < p1 (k < i < j).
  for (std::size_t j = 0; j < n; ++j) {
    const double p1 = static_cast<double>(fac[j].first);
    for (std::size_t i = 0; i < j; ++i) {
      const double p2 = static_cast<double>(fac[i].first);
      if (p2 < P.z) continue;
      const double prod = p1 * p2;
      if (p1 < P.U) {
        const i64 w = psi_cofactor(f, {i, j}, p2);
        if (prod < P.U) {
          g[5] += w;
          g[8] += psi_cofactor(f, {i, j}, P.z);
          for (std::size_t k = 0; k < i; ++k) {
            const double p3 = static_cast<double>(fac[k].first);
            if (p3 < P.z) continue;
            const i64 t = psi_cofactor(f, {i, j, k}, p3);
            if (prod * p3 <= P.V)
              g[9] += t;
            else
              g[10] += t;
          }
        } else if (prod <= P.V) {
          g[6] += w;
        } else {
          g[7] += w;
        }
      }
      if (p1 * p1 <= P.V) {
        gs[2] += psi_cofactor(f, {i, j}, P.z);
        for (std::size_t k = 0; k < i; ++k) {
          const double p3 = static_cast<double>(fac[k].first);
          if (p3 < P.z) continue;
          const i64 t = psi_cofactor(f, {i, j, k}, p3);
          gs[3] += t;
          if (prod >= P.U || prod * p3 <= P.V) gs[4] += t;
        }
      }
    }
  }
  return out;
}

i64 gamma_eval(GammaIndex idx, u64 m, const DecompParams& params) {
  const bool ok = idx.star ? (idx.j >= 5 && idx.j <= 9) : (idx.j >= 1 && idx.j <= 11);
  if (!ok) fail(ErrorKind::Domain, "gamma_eval: no such gamma index");
  if (m == 0) fail(ErrorKind::Domain, "gamma_eval requires m >= 1");
  const DecompValue v = decompose(factorize(m), params);
  return idx.star ? v.gs(idx.j) : v.g(idx.j);
}

i64 lambda_eval(int i, u64 m, const DecompParams& params) {
  if (m == 0) fail(ErrorKind::Domain, "lambda_eval requires m >= 1");
  const DecompValue v = decompose(factorize(m), params);
  switch (i) {
    case 1: return v.lambda1();
    case 2: return v.lambda2();
    case 3: return v.lambda3();
  }
  fail(ErrorKind::Domain, "lambda_eval: index must be 1, 2 or 3");
}

i64 gamma4_rewritten(const Factorization& f, const DecompParams& P) {
  i64 total = 0;
  for (std::size_t i = 0; i < f.factors.size(); ++i) {
    const double p = static_cast<double>(f.factors[i].first);
    if (p > P.V && p < P.sqrt_x1) total += psi_cofactor(f, {i}, std::sqrt(P.x1() / p));
  }
  return total;
}

std::pair<int, int> buchstab_identity_check(u64 m, double z1, double z2) {
  if (!(z2 >= 2.0 && z2 < z1)) fail(ErrorKind::Domain, "buchstab_identity_check requires 2 <= z2 < z1");
  if (m == 0) fail(ErrorKind::Domain, "buchstab_identity_check requires m >= 1");
  const int lhs = psi(m, z1) ? 1 : 0;
  int rhs = psi(m, z2) ? 1 : 0;
  const u64 top = static_cast<u64>(std::ceil(z1));
  for (u64 p : primes_up_to(top)) {
    const double dp = static_cast<double>(p);
    if (dp < z2 || dp >= z1) continue;
    rhs -= psi(Rational(static_cast<i64>(m), static_cast<i64>(p)), dp) ? 1 : 0;
  }
  return {lhs, rhs};
}

u64 VerifyReport::total_failures() const {
  u64 t = 0;
  for (int c = 0; c < 4; ++c) t += failures[c];
  if (check_e_applicable) t += failures[4];
  return t;
}

std::optional<CheckFailure> VerifyReport::first_counterexample() const {
  for (const auto& f : failure_samples)
    if (f.check != 'e' || check_e_applicable) return f;
  return std::nullopt;
}

VerifyReport verify_interval(const DecompParams& params, u64 lo, u64 hi, unsigned threads) {
  params.validate();
  if (!(lo < hi)) fail(ErrorKind::Domain, "verify_interval requires lo < hi");
  const Factorizer factorizer(hi);

  VerifyReport report;
  report.lo = lo;
  report.hi = hi;
  report.params = params;
  report.check_e_applicable = params.theta && *params.theta >= 8.0 / 9.0 - 1e-12;

  threads = resolve_threads(threads);
  const std::size_t n = hi - lo;
  std::vector<VerifyReport> parts(std::max(1u, threads));
  parallel_chunks(n, threads, [&](std::size_t chunk, std::size_t begin, std::size_t end) {
    VerifyReport& r = parts[chunk];
    auto record = [&](char check, u64 m, std::string detail) {
      r.failures[static_cast<std::size_t>(check - 'a')] += 1;
      if (r.failure_samples.size() < kMaxFailureSamples)
        r.failure_samples.push_back({check, m, std::move(detail)});
    };
    for (std::size_t k = begin; k < end; ++k) {
      const u64 m = lo + 1 + k;
      const DecompValue v = decompose(factorizer(m), params);
      const i64 l1 = v.lambda1(), l2 = v.lambda2(), l3 = v.lambda3();
      std::ostringstream os;
      r.checks_run[0]++;
      if (v.varpi != l1 - l2 + v.g(8)) {
        os << "varpi=" << v.varpi << " lambda1-lambda2+gamma8=" << l1 - l2 + v.g(8);
        record('a', m, os.str());
      }
      r.checks_run[1]++;
      if (!(l1 - l2 <= v.varpi && v.varpi <= l3)) {
        os.str("");
        os << "lambda1-lambda2=" << l1 - l2 << " varpi=" << v.varpi << " lambda3=" << l3;
        record('b', m, os.str());
      }
      r.checks_run[2]++;
      if (l2 < 0) record('c', m, "lambda2=" + std::to_string(l2));
      r.checks_run[3]++;
      const i64 second =
          v.g(1) - v.g(3) - v.g(4) - v.gs(5) - v.gs(6) + v.gs(7) - v.gs(8);
      if (v.varpi != second) {
        os.str("");
        os << "varpi=" << v.varpi << " second decomposition=" << second;
        record('d', m, os.str());
      }
      r.checks_run[4]++;
      if (v.gs(8) - v.gs(9) != v.g(11)) {
        os.str("");
        os << "gamma8*-gamma9*=" << v.gs(8) - v.gs(9) << " gamma11=" << v.g(11);
        record('e', m, os.str());
      }
    }
  });

  for (const auto& part : parts) {
    for (int c = 0; c < 5; ++c) {
      report.checks_run[c] += part.checks_run[c];
      report.failures[c] += part.failures[c];
    }
    for (const auto& f : part.failure_samples)
      if (report.failure_samples.size() < kMaxFailureSamples) report.failure_samples.push_back(f);
  }
  if (!report.check_e_applicable) report.expected_failures_e = report.failures[4];
  return report;
}

}  // namespace aesq
