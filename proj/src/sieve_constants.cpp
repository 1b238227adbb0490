#include "aesq/sieve_constants.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "aesq/errors.hpp"
#include "aesq/quadrature.hpp"

namespace aesq {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kDegenerateWidth = 1e-12;
constexpr double kCoeffEps = 1e-15;
constexpr double kArgSlack = 1e-9;

LinearConstraint le(std::array<double, 3> a, double b) { return {a, b}; }
LinearConstraint ge(std::array<double, 3> a, double b) {
  return {{-a[0], -a[1], -a[2]}, -b};
}

// Fourier-Motzkin elimination of variable k.
std::vector<LinearConstraint> eliminate(const std::vector<LinearConstraint>& cons, int k) {
  std::vector<LinearConstraint> out, upper, lower;
  for (const auto& c : cons) {
    if (c.a[k] > kCoeffEps)
      upper.push_back(c);
    else if (c.a[k] < -kCoeffEps)
      lower.push_back(c);
    else
      out.push_back(c);
  }
  for (const auto& up : upper) {
    for (const auto& lo : lower) {
      const double lu = -lo.a[k];
      const double ll = up.a[k];
      LinearConstraint c;
      for (int j = 0; j < 3; ++j) c.a[j] = lu * up.a[j] + ll * lo.a[j];
      c.a[k] = 0.0;
      c.b = lu * up.b + ll * lo.b;
      out.push_back(c);
    }
  }
  return out;
}

struct Linear {
  double alpha;
  double beta;
};

class IteratedIntegrator {
 public:
  IteratedIntegrator(const Region& region, const OmegaSource& omega)
      : dim_(region.dim), omega_(omega), kinks_(omega.kinks()) {
    levels_.resize(dim_);
    levels_[dim_ - 1] = region.constraints;
    for (int k = dim_ - 1; k > 0; --k) levels_[k - 1] = eliminate(levels_[k], k);
  }

  // [lo, hi] for x_k given x_0..x_{k-1}.
  std::pair<double, double> limits(int k, const std::array<double, 3>& x) const {
    double lo = -kInf, hi = kInf;
    for (const auto& c : levels_[k]) {
      const double ak = c.a[k];
      if (std::abs(ak) <= kCoeffEps) continue;
      double r = c.b;
      for (int j = 0; j < k; ++j) r -= c.a[j] * x[j];
      const double bound = r / ak;
      if (ak > 0)
        hi = std::min(hi, bound);
      else
        lo = std::max(lo, bound);
    }
    return {lo, hi};
  }

  double integrand(const std::array<double, 3>& x) const {
    const int last = dim_ - 1;
    double sum = 0.0, outer = 1.0;
    for (int j = 0; j < dim_; ++j) sum += x[j];
    for (int j = 0; j < last; ++j) outer *= x[j];
    const double t = x[last];
    double arg = (1.0 - sum) / t;
    // Region corners can put the argument a rounding error below 1.
    if (arg < 1.0 && arg > 1.0 - kArgSlack) arg = 1.0;
    double w;
    try {
      w = omega_(arg);
    } catch (const Error& e) {
      std::ostringstream os;
      os.precision(12);
      os << "sieve_integral: omega argument " << arg << " out of range at (";
      for (int j = 0; j < dim_; ++j) os << (j ? ", " : "") << x[j];
      os << "): " << e.what();
      fail(ErrorKind::Domain, os.str());
    }
    return w / (outer * t * t);
  }

  // Points in x_k where the next level's limits or the innermost omega kinks
  // change their active branch.
  std::vector<double> breakpoints(int k, const std::array<double, 3>& x) const {
    std::vector<double> out;
    const int last = dim_ - 1;
    double outer_sum = 0.0;
    for (int j = 0; j < k; ++j) outer_sum += x[j];
    if (k == last) {
      for (double kink : kinks_) out.push_back((1.0 - outer_sum) / (kink + 1.0));
      return out;
    }
    std::vector<Linear> forms;
    const int n = k + 1;
    for (const auto& c : levels_[n]) {
      const double an = c.a[n];
      if (std::abs(an) <= kCoeffEps) continue;
      double r = c.b;
      for (int j = 0; j < k; ++j) r -= c.a[j] * x[j];
      forms.push_back({r / an, -c.a[k] / an});
    }
    if (n == last) {
      // Inner kink location (1 - sum_{j<=k} x_j)/(K+1) as a function of x_k.
      std::vector<Linear> kink_forms;
      for (double kink : kinks_)
        kink_forms.push_back({(1.0 - outer_sum) / (kink + 1.0), -1.0 / (kink + 1.0)});
      for (const auto& kf : kink_forms)
        for (const auto& f : forms) add_crossing(kf, f, out);
    }
    for (std::size_t i = 0; i < forms.size(); ++i)
      for (std::size_t j = i + 1; j < forms.size(); ++j) add_crossing(forms[i], forms[j], out);
    return out;
  }

  QuadResult integrate(int k, std::array<double, 3>& x, double tol) const {
    auto [lo, hi] = limits(k, x);
    if (!(hi > lo)) return {};
    auto f = [&](double t) {
      std::array<double, 3> y = x;
      y[k] = t;
      if (k == dim_ - 1) return integrand(y);
      return integrate(k + 1, y, tol * kInnerTolFactor).value;
    };
    return integrate_piecewise(f, lo, hi, breakpoints(k, x), tol);
  }

  std::pair<double, double> outer_range() const {
    std::array<double, 3> x{};
    return limits(0, x);
  }

 private:
  static constexpr double kInnerTolFactor = 0.02;

  static void add_crossing(const Linear& f, const Linear& g, std::vector<double>& out) {
    const double db = f.beta - g.beta;
    if (std::abs(db) <= kCoeffEps) return;
    out.push_back((g.alpha - f.alpha) / db);
  }

  int dim_;
  const OmegaSource& omega_;
  std::vector<double> kinks_;
  std::vector<std::vector<LinearConstraint>> levels_;
};

}  // namespace

SieveParams SieveParams::for_theta(double theta, double x) {
  return SieveParams{theta, (2.0 * theta - 1.0) / 7.0, x};
}

ExactExponents exact_exponents(const Rational& theta, const Rational& sigma) {
  return ExactExponents{2 * theta - 1 - 6 * sigma, 1 - theta + 2 * sigma, theta - 4 * sigma};
}

const char* region_name(RegionKind kind) {
  switch (kind) {
    case RegionKind::Ell4: return "ell4";
    case RegionKind::Ell5Star: return "ell5star";
    case RegionKind::Ell8: return "ell8";
    case RegionKind::D11: return "d11";
  }
  return "?";
}

const char* mode_name(OmegaMode mode) {
  return mode == OmegaMode::Solved ? "solved_omega" : "upper_bound_omega";
}

Region Region::ell4(const SieveParams& p) {
  return Region{1, RegionKind::Ell4, {ge({1, 0, 0}, p.e_V()), le({1, 0, 0}, 0.5)}};
}

Region Region::ell5star(const SieveParams& p) {
  return Region{1,
                RegionKind::Ell5Star,
                {ge({1, 0, 0}, p.theta / 2.0 - 2.0 * p.sigma), le({1, 0, 0}, p.e_U())}};
}

// sigma <= v <= u <= e_U, u + v >= e_V
Region Region::d8(const SieveParams& p) {
  return Region{2,
                RegionKind::Ell8,
                {ge({0, 1, 0}, p.sigma), le({-1, 1, 0}, 0.0), le({1, 0, 0}, p.e_U()),
                 ge({1, 1, 0}, p.e_V()), ge({1, 0, 0}, p.sigma)}};
}

// sigma <= w <= v <= u, u + v <= e_U, u + v + w >= e_V
Region Region::d11(const SieveParams& p) {
  return Region{3,
                RegionKind::D11,
                {ge({0, 0, 1}, p.sigma), le({0, -1, 1}, 0.0), le({-1, 1, 0}, 0.0),
                 le({1, 1, 0}, p.e_U()), ge({1, 1, 1}, p.e_V()), ge({1, 0, 0}, p.sigma),
                 ge({0, 1, 0}, p.sigma)}};
}

double OmegaSource::operator()(double u) const {
  return table_ ? table_->omega(u) : omega_upper(u);
}

std::vector<double> OmegaSource::kinks() const {
  if (!table_) return {2.0, 3.0};
  std::vector<double> out;
  for (double k = 2.0; k <= std::min(table_->u_max(), 8.0); k += 1.0) out.push_back(k);
  return out;
}

IntegralResult sieve_integral(const Region& region, const OmegaSource& omega, double tol) {
  if (region.dim < 1 || region.dim > 3) fail(ErrorKind::Domain, "sieve_integral: dim must be 1..3");
  if (!(tol >= 1e-9)) fail(ErrorKind::Domain, "sieve_integral: tol must be >= 1e-9");
  IteratedIntegrator integ(region, omega);
  auto [lo, hi] = integ.outer_range();
  IntegralResult out;
  if (!(hi - lo > kDegenerateWidth)) {
    out.degenerate = true;
    return out;
  }
  std::array<double, 3> x{};
  const QuadResult coarse = integ.integrate(0, x, tol);
  const QuadResult fine = integ.integrate(0, x, 0.5 * tol);
  out.value = fine.value;
  out.error_estimate = std::abs(fine.value - coarse.value);
  out.evaluations = coarse.evaluations + fine.evaluations;
  if (out.error_estimate > tol || !fine.converged) {
    std::ostringstream os;
    os << "sieve_integral(" << region_name(region.kind) << "): tolerance-halving change "
       << out.error_estimate << " exceeds tol " << tol;
    fail(ErrorKind::Tolerance, os.str());
  }
  return out;
}

double ell4(double theta) { return std::log((3.0 + theta) / (4.0 - theta)); }

ConstantsReport c_of_theta(double theta, OmegaMode mode, double tol) {
  constexpr double kEps = 1e-12;
  if (!(theta >= 8.0 / 9.0 - kEps && theta <= 1.0 + kEps))
    fail(ErrorKind::Domain, "c_of_theta: theta must lie in [8/9, 1]");
  const SieveParams p = SieveParams::for_theta(theta);

  std::optional<BuchstabTable> table;
  if (mode == OmegaMode::Solved) {
    // Largest omega argument in the integrands is (1 - 3 sigma)/sigma.
    const double need = (1.0 - 3.0 * p.sigma) / p.sigma + 1.0;
    table.emplace(std::max(kDefaultBuchstabUMax, std::ceil(need)), kDefaultBuchstabStep);
  }
  const OmegaSource omega = table ? OmegaSource::solved(*table) : OmegaSource::upper_bound();

  ConstantsReport r;
  r.theta = theta;
  r.sigma = p.sigma;
  r.mode = mode;
  r.tol = tol;
  r.ell4 = ell4(theta);
  r.ell5star = sieve_integral(Region::ell5star(p), omega, tol).value;
  r.ell8 = sieve_integral(Region::d8(p), omega, tol).value;
  const IntegralResult d11 = sieve_integral(Region::d11(p), omega, tol);
  r.d11 = d11.value;
  r.d11_degenerate = d11.degenerate;
  r.kappa2 = r.ell4 + r.d11;
  r.C_value = 1.0 - r.ell8 - r.kappa2 * (r.kappa2 + r.ell5star);
  return r;
}

const std::vector<FigurePoint>& figure1_points() {
  static const std::vector<FigurePoint> pts{
      {1.0, "1", 0.476},     {0.98, "0.98", 0.433}, {0.96, "0.96", 0.387},
      {0.95, "0.95", 0.363}, {0.94, "0.94", 0.337}, {0.93, "0.93", 0.310},
      {0.92, "0.92", 0.281}, {0.91, "0.91", 0.250}, {0.90, "0.90", 0.217},
      {0.89, "0.89", 0.182}, {8.0 / 9.0, "8/9", 0.178},
  };
  return pts;
}

Rational theta_s(int s) {
  if (s < 6) fail(ErrorKind::Domain, "theta_s requires s >= 6, got " + std::to_string(s));
  if (s >= 17) return Rational(19, 24);
  // 0.775 = 31/40
  return Rational(40 + 31 * (s - 4), 40 * (s - 3));
}

const char* context_name(TheoremContext ctx) {
  switch (ctx) {
    case TheoremContext::Thm2: return "thm2";
    case TheoremContext::Thm3: return "thm3";
    case TheoremContext::Thm4First: return "thm4_first";
    case TheoremContext::Thm5: return "thm5";
  }
  return "?";
}

double sigma_admissible(TheoremContext ctx, double theta, std::optional<int> s) {
  constexpr double kEps = 1e-12;
  auto require = [&](double lo, double hi, const char* range) {
    if (!(theta >= lo - kEps && theta <= hi + kEps)) {
      std::ostringstream os;
      os << "sigma_admissible(" << context_name(ctx) << "): theta=" << theta << " outside "
         << range;
      fail(ErrorKind::Domain, os.str());
    }
  };
  const double thm3_sigma = std::min(theta - 31.0 / 40.0, (2.0 * theta - 1.0) / 8.0);
  switch (ctx) {
    case TheoremContext::Thm2:
      require(8.0 / 9.0, 1.0, "[8/9, 1]");
      return (2.0 * theta - 1.0) / 7.0;
    case TheoremContext::Thm3:
      require(0.82, 1.0, "[0.82, 1]");
      return thm3_sigma;
    case TheoremContext::Thm4First:
      require(0.85, 1.0, "[0.85, 1]");
      return thm3_sigma;
    case TheoremContext::Thm5: {
      if (!s) fail(ErrorKind::Domain, "sigma_admissible(thm5): s is required");
      const Rational ts = theta_s(*s);
      const double ts_d = boost::rational_cast<double>(ts);
      require(0.0, 1.0, "(0, 1]");
      const double sigma = theta - 31.0 / 40.0;
      std::ostringstream os;
      os.precision(12);
      if (!((*s - 4) * sigma > 1.0 - theta)) {
        os << "sigma_admissible(thm5): (s-4)*sigma > 1-theta violated: (" << *s << "-4)*" << sigma
           << " = " << (*s - 4) * sigma << " <= " << 1.0 - theta;
        fail(ErrorKind::Infeasible, os.str());
      }
      if (theta < ts_d - kEps) {
        os << "sigma_admissible(thm5): theta >= theta_s violated: theta=" << theta << " < theta_s=" << ts_d;
        fail(ErrorKind::Infeasible, os.str());
      }
      return sigma;
    }
  }
  fail(ErrorKind::Domain, "sigma_admissible: unknown context");
}

}  // namespace aesq
