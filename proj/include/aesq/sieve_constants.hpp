#pragma once

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "aesq/buchstab.hpp"
#include "aesq/primes.hpp"

namespace aesq {

/// Exponent bookkeeping for the sieve construction: with scale x,
/// z = x^{e_z}, U = x^{e_U}, V = x^{e_V}.
struct SieveParams {
  double theta = 1.0;
  double sigma = 1.0 / 7.0;
  double x = 0.0;  // 0 when only the constants are needed

  double e_z() const { return 2.0 * theta - 1.0 - 6.0 * sigma; }
  double e_U() const { return 1.0 - theta + 2.0 * sigma; }
  double e_V() const { return theta - 4.0 * sigma; }

  /// sigma = (2 theta - 1)/7, the choice that makes z = x^sigma.
  static SieveParams for_theta(double theta, double x = 0.0);
};

struct ExactExponents {
  Rational e_z;
  Rational e_U;
  Rational e_V;
};

ExactExponents exact_exponents(const Rational& theta, const Rational& sigma);

enum class RegionKind { Ell4, Ell5Star, Ell8, D11 };

const char* region_name(RegionKind kind);

/// a . (u, v, w) <= b
struct LinearConstraint {
  std::array<double, 3> a{};
  double b = 0.0;
};

/// Convex polytope in (u), (u, v) or (u, v, w). Every kind integrates
/// omega((1 - sum x)/x_last) / (prod_{i<last} x_i * x_last^2) over the region.
struct Region {
  int dim = 1;
  RegionKind kind = RegionKind::Ell4;
  std::vector<LinearConstraint> constraints;

  static Region ell4(const SieveParams& p);
  static Region ell5star(const SieveParams& p);
  static Region d8(const SieveParams& p);
  static Region d11(const SieveParams& p);
};

enum class OmegaMode { Solved, UpperBound };

const char* mode_name(OmegaMode mode);

/// Either a solved Buchstab table or the piecewise upper bound.
class OmegaSource {
 public:
  static OmegaSource upper_bound() { return OmegaSource(nullptr); }
  static OmegaSource solved(const BuchstabTable& table) { return OmegaSource(&table); }

  double operator()(double u) const;
  OmegaMode mode() const { return table_ ? OmegaMode::Solved : OmegaMode::UpperBound; }
  /// Arguments at which omega loses smoothness.
  std::vector<double> kinks() const;

 private:
  explicit OmegaSource(const BuchstabTable* table) : table_(table) {}
  const BuchstabTable* table_;
};

struct IntegralResult {
  double value = 0.0;
  double error_estimate = 0.0;  // |I(tol) - I(tol/2)|
  bool degenerate = false;      // empty or measure-zero region
  std::size_t evaluations = 0;
};

inline constexpr double kDefaultConstantsTol = 1e-7;

/// Iterated adaptive Simpson with exact piecewise-linear inner limits, checked
/// by re-running at tol/2. Throws Tolerance if the two runs differ by more
/// than tol.
IntegralResult sieve_integral(const Region& region, const OmegaSource& omega, double tol);

/// log((3 + theta)/(4 - theta)), the closed form of the gamma_4 density.
double ell4(double theta);

struct ConstantsReport {
  double theta = 0.0;
  double sigma = 0.0;
  double ell4 = 0.0;
  double ell5star = 0.0;
  double ell8 = 0.0;
  double d11 = 0.0;
  double kappa2 = 0.0;
  double C_value = 0.0;
  OmegaMode mode = OmegaMode::UpperBound;
  double tol = 0.0;
  bool d11_degenerate = false;
};

/// C = 1 - ell8 - kappa2 (kappa2 + ell5*) at sigma = (2 theta - 1)/7, for
/// 8/9 <= theta <= 1.
ConstantsReport c_of_theta(double theta, OmegaMode mode, double tol = kDefaultConstantsTol);

struct FigurePoint {
  double theta;
  const char* label;    // as printed in the table
  double published;     // three-decimal value
};

/// The eleven abscissae of the published C-tilde table, descending in theta.
const std::vector<FigurePoint>& figure1_points();

/// theta_s = (1 + 0.775 (s - 4))/(s - 3) for 6 <= s <= 16, 19/24 for s >= 17.
Rational theta_s(int s);

enum class TheoremContext { Thm2, Thm3, Thm4First, Thm5 };

const char* context_name(TheoremContext ctx);

/// sigma chosen for each context. Thm5 additionally requires
/// (s - 4) sigma > 1 - theta and throws Infeasible otherwise.
double sigma_admissible(TheoremContext ctx, double theta, std::optional<int> s = std::nullopt);

}  // namespace aesq
