#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "aesq/primes.hpp"

namespace aesq {

/// Cutoffs of the Buchstab decomposition. Real-valued cutoffs are compared
/// against integer primes exactly as the inequalities are written
/// (z <= p < U, U <= p <= V, V < p < sqrt_x1).
struct DecompParams {
  double z = 0.0;
  double U = 0.0;
  double V = 0.0;
  double sqrt_x1 = 0.0;
  std::optional<double> theta;  // set when derived from (theta, x)
  std::optional<double> x;

  double x1() const { return sqrt_x1 * sqrt_x1; }

  /// z = x^{2t-1-6s}, U = x^{1-t+2s}, V = x^{t-4s}, x1 = x + x^t with
  /// s = (2t - 1)/7.
  static DecompParams from_theta(double theta, double x);

  /// Throws Domain unless 2 <= z < U < V < sqrt_x1^2.
  void validate() const;
};

/// Integer bounds (lo, hi] of the interval (x - x^theta, x + x^theta].
std::pair<u64, u64> short_interval(double theta, double x);

/// gamma_j (j = 1..11) or gamma*_j (j = 5..9).
struct GammaIndex {
  int j = 1;
  bool star = false;
};

struct DecompValue {
  u64 m = 0;
  std::array<i64, 11> gamma{};      // gamma[0] is gamma_1
  std::array<i64, 5> gamma_star{};  // gamma_star[0] is gamma*_5
  int varpi = 0;  // psi(m, sqrt_x1): the indicator the decomposition resolves
  bool prime = false;

  i64 g(int j) const { return gamma[static_cast<std::size_t>(j - 1)]; }
  i64 gs(int j) const { return gamma_star[static_cast<std::size_t>(j - 5)]; }

  i64 lambda1() const { return g(1) - g(3) - g(5) + g(7) + g(9) - g(10); }
  i64 lambda2() const { return g(4) + g(11); }
  i64 lambda3() const { return g(1) - g(3) - gs(6) + gs(7) - gs(9); }
};

/// All gamma sums at m from its factorization; only primes dividing m can
/// contribute because psi vanishes at non-integers.
DecompValue decompose(const Factorization& f, const DecompParams& params);

i64 gamma_eval(GammaIndex idx, u64 m, const DecompParams& params);
i64 lambda_eval(int i, u64 m, const DecompParams& params);

/// gamma_4 rewritten as sum_{V < p < sqrt_x1} psi(m/p, sqrt(x1/p)).
i64 gamma4_rewritten(const Factorization& f, const DecompParams& params);

/// Both sides of psi(m, z1) = psi(m, z2) - sum_{z2 <= p < z1} psi(m/p, p),
/// evaluated literally over every prime in [z2, z1).
std::pair<int, int> buchstab_identity_check(u64 m, double z1, double z2);

struct CheckFailure {
  char check = 'a';
  u64 m = 0;
  std::string detail;
};

struct VerifyReport {
  u64 lo = 0;
  u64 hi = 0;
  DecompParams params;
  std::array<u64, 5> checks_run{};  // a..e
  std::array<u64, 5> failures{};
  bool check_e_applicable = false;  // derived from theta >= 8/9
  u64 expected_failures_e = 0;      // (e) failures when not applicable
  std::vector<CheckFailure> failure_samples;  // first failures, capped

  u64 total_failures() const;
  std::optional<CheckFailure> first_counterexample() const;
};

inline constexpr std::size_t kMaxFailureSamples = 64;

/// Checks on every m in (lo, hi]:
///   (a) varpi = lambda1 - lambda2 + gamma8
///   (b) lambda1 - lambda2 <= varpi <= lambda3
///   (c) lambda2 >= 0
///   (d) varpi = g1 - g3 - g4 - g5* - g6* + g7* - g8*
///   (e) g8* - g9* = g11
VerifyReport verify_interval(const DecompParams& params, u64 lo, u64 hi, unsigned threads = 1);

}  // namespace aesq
