#include <doctest.h>

#include <cmath>
#include <functional>

#include "aesq/errors.hpp"
#include "aesq/sieve_constants.hpp"

using namespace aesq;

namespace {

double wub(double u) { return omega_upper(std::max(1.0, u)); }

// composite trapezoid over [a, b] with n panels
double trap(const std::function<double(double)>& f, double a, double b, int n) {
  if (!(b > a)) return 0.0;
  const double h = (b - a) / n;
  double s = 0.5 * (f(a) + f(b));
  for (int i = 1; i < n; ++i) s += f(a + i * h);
  return s * h;
}

double ell8_oracle(double theta, int n) {
  const double sg = (2 * theta - 1) / 7, eU = 1 - theta + 2 * sg, eV = theta - 4 * sg;
  return trap(
      [&](double u) {
        const double vlo = std::max(sg, eV - u), vhi = u;
        return trap([&](double v) { return wub((1 - u - v) / v) / (u * v * v); }, vlo, vhi, n);
      },
      std::max(eV / 2, sg), eU, n);
}

double d11_oracle(double theta, int n) {
  const double sg = (2 * theta - 1) / 7, eU = 1 - theta + 2 * sg, eV = theta - 4 * sg;
  return trap(
      [&](double u) {
        return trap(
            [&](double v) {
              const double wlo = std::max(sg, eV - u - v);
              return trap([&](double w) { return wub((1 - u - v - w) / w) / (u * v * w * w); }, wlo, v, n);
            },
            sg, std::min(u, eU - u), n);
      },
      sg, eU - sg, n);
}

double ell5_oracle(double theta) {
  const double sg = (2 * theta - 1) / 7;
  const double a = theta / 2 - 2 * sg, b = 1 - theta + 2 * sg;
  return trap([](double u) { return wub((1 - u) / u) / (u * u); }, a, b, 200'000);
}

}  // namespace

TEST_CASE("exponent identities in exact arithmetic") {
  for (Rational theta : {Rational(8, 9), Rational(9, 10), Rational(19, 20), Rational(1), Rational(41, 45)}) {
    const Rational sigma = (2 * theta - 1) / 7;
    const auto e = exact_exponents(theta, sigma);
    CHECK(e.e_U + e.e_z == e.e_V);
    CHECK(e.e_z == sigma);
    const auto e2 = exact_exponents(theta, Rational(1, 30));
    CHECK(e2.e_U + e2.e_z == e2.e_V);
  }
}

TEST_CASE("exponent ordering on (8/9, 1)") {
  for (double theta = 0.8889; theta < 1.0; theta += 0.005) {
    const auto p = SieveParams::for_theta(theta);
    CHECK(p.sigma <= p.e_z() + 1e-15);
    CHECK(p.e_z() < p.e_U());
    CHECK(p.e_U() < p.e_V());
    CHECK(p.sigma > 1.0 / 9.0);
    CHECK(p.e_V() < 4.0 / 9.0 + 1e-12);
    CHECK(2 * p.e_z() < p.e_U());
    CHECK(p.e_U() < 3 * p.e_z());
  }
}

TEST_CASE("ell4 closed form") {
  CHECK(ell4(1.0) == doctest::Approx(std::log(4.0 / 3.0)).epsilon(1e-15));
  CHECK(ell4(1.0) == doctest::Approx(0.28768207).epsilon(1e-8));
  CHECK(ell4(8.0 / 9.0) == doctest::Approx(std::log(1.25)).epsilon(1e-14));
  CHECK(ell4(8.0 / 9.0) == doctest::Approx(0.22314355).epsilon(1e-8));
}

TEST_CASE("gamma_4 density integral matches the closed form") {
  for (double theta : {8.0 / 9.0, 0.95, 1.0}) {
    const auto p = SieveParams::for_theta(theta);
    for (auto src : {OmegaSource::upper_bound()}) {
      const auto r = sieve_integral(Region::ell4(p), src, 1e-9);
      CHECK(std::fabs(r.value - ell4(theta)) <= 1e-6);
    }
  }
  const auto table = solve_buchstab();
  const auto r = sieve_integral(Region::ell4(SieveParams::for_theta(0.95)), OmegaSource::solved(table), 1e-9);
  CHECK(std::fabs(r.value - ell4(0.95)) <= 1e-6);
}

TEST_CASE("ell5star range at theta = 8/9") {
  const auto p = SieveParams::for_theta(8.0 / 9.0);
  const auto reg = Region::ell5star(p);
  double lo = -1, hi = 2;
  for (const auto& c : reg.constraints) {
    if (c.a[0] > 0) hi = std::min(hi, c.b / c.a[0]);
    if (c.a[0] < 0) lo = std::max(lo, c.b / c.a[0]);
  }
  CHECK(lo == doctest::Approx(2.0 / 9.0).epsilon(1e-14));
  CHECK(hi == doctest::Approx(3.0 / 9.0).epsilon(1e-14));
}

TEST_CASE("D11 degenerates at theta = 1") {
  const auto p = SieveParams::for_theta(1.0);
  const auto r = sieve_integral(Region::d11(p), OmegaSource::upper_bound(), 1e-7);
  CHECK(r.value == 0.0);
  CHECK(r.degenerate);
  const auto rep = c_of_theta(1.0, OmegaMode::UpperBound);
  CHECK(rep.d11 == 0.0);
  CHECK(rep.d11_degenerate);
}

TEST_CASE("region integrals against independent trapezoid oracles") {
  for (double theta : {8.0 / 9.0, 0.93, 0.97}) {
    const auto p = SieveParams::for_theta(theta);
    const auto src = OmegaSource::upper_bound();
    const double l8 = sieve_integral(Region::d8(p), src, 1e-8).value;
    CHECK(std::fabs(l8 - ell8_oracle(theta, 2000)) < 2e-5);
    const double l5 = sieve_integral(Region::ell5star(p), src, 1e-8).value;
    CHECK(std::fabs(l5 - ell5_oracle(theta)) < 1e-8);
    const double d11 = sieve_integral(Region::d11(p), src, 1e-8).value;
    CHECK(std::fabs(d11 - d11_oracle(theta, 160)) < 2e-4);
  }
}

TEST_CASE("report identity") {
  for (double theta : {8.0 / 9.0, 0.92, 1.0}) {
    for (auto mode : {OmegaMode::UpperBound, OmegaMode::Solved}) {
      const auto r = c_of_theta(theta, mode);
      CHECK(r.kappa2 == r.ell4 + r.d11);
      CHECK(r.C_value == 1.0 - r.ell8 - r.kappa2 * (r.kappa2 + r.ell5star));
      CHECK(r.sigma == doctest::Approx((2 * theta - 1) / 7));
    }
  }
}

TEST_CASE("published C-tilde table") {
  double prev = 2.0;
  for (const auto& pt : figure1_points()) {
    const auto r = c_of_theta(pt.theta, OmegaMode::UpperBound);
    CHECK(std::fabs(r.C_value - pt.published) <= 0.003);
    CHECK(r.C_value < prev);
    prev = r.C_value;
  }
  CHECK(figure1_points().size() == 11);
}

TEST_CASE("upper-bound mode gives the smaller constant") {
  for (double theta : {8.0 / 9.0, 0.9, 0.94, 0.98, 1.0}) {
    const auto lo = c_of_theta(theta, OmegaMode::UpperBound);
    const auto hi = c_of_theta(theta, OmegaMode::Solved);
    CHECK(lo.C_value <= hi.C_value + 2 * lo.tol);
  }
}

TEST_CASE("halving the tolerance moves each constant by less than tol") {
  for (auto mode : {OmegaMode::UpperBound, OmegaMode::Solved}) {
    const double tol = 1e-6;
    const auto a = c_of_theta(0.95, mode, tol);
    const auto b = c_of_theta(0.95, mode, tol / 2);
    CHECK(std::fabs(a.ell5star - b.ell5star) < tol);
    CHECK(std::fabs(a.ell8 - b.ell8) < tol);
    CHECK(std::fabs(a.d11 - b.d11) < tol);
    CHECK(std::fabs(a.C_value - b.C_value) < 4 * tol);
  }
}

TEST_CASE("integration argument checks") {
  const auto p = SieveParams::for_theta(0.95);
  CHECK_THROWS_AS(sieve_integral(Region::d8(p), OmegaSource::upper_bound(), 1e-10), Error);
  CHECK_THROWS_AS(c_of_theta(0.8, OmegaMode::UpperBound), Error);
  CHECK_THROWS_AS(c_of_theta(1.01, OmegaMode::UpperBound), Error);
  // a table too short for the integrand arguments
  const auto shortTable = solve_buchstab(3.0, 1e-4);
  CHECK_THROWS_AS(sieve_integral(Region::d8(p), OmegaSource::solved(shortTable), 1e-7), Error);
}

TEST_CASE("theta_s") {
  CHECK(theta_s(6) == Rational(17, 20));
  CHECK(boost::rational_cast<double>(theta_s(6)) == doctest::Approx(0.85));
  CHECK(theta_s(17) == Rational(19, 24));
  CHECK(theta_s(40) == Rational(19, 24));
  CHECK(boost::rational_cast<double>(theta_s(16)) == doctest::Approx(10.3 / 13.0).epsilon(1e-14));
  CHECK_THROWS_AS(theta_s(5), Error);
}

TEST_CASE("sigma_admissible") {
  CHECK(sigma_admissible(TheoremContext::Thm2, 0.9) == doctest::Approx(0.8 / 7));
  CHECK(sigma_admissible(TheoremContext::Thm3, 0.82) == doctest::Approx(0.045));
  CHECK(sigma_admissible(TheoremContext::Thm3, 0.95) == doctest::Approx(0.1125));
  CHECK(sigma_admissible(TheoremContext::Thm5, 0.9, 7) == doctest::Approx(0.125));
  try {
    sigma_admissible(TheoremContext::Thm2, 0.85);
    FAIL("expected domain error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Domain);
  }
  try {
    sigma_admissible(TheoremContext::Thm5, 0.8, 7);
    FAIL("expected infeasible");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Infeasible);
    CHECK(std::string(e.what()).find("(s-4)*sigma > 1-theta") != std::string::npos);
  }
  // feasibility switches exactly at theta_s for s <= 16
  for (int s = 6; s <= 16; ++s) {
    const double ts = boost::rational_cast<double>(theta_s(s));
    CHECK_NOTHROW(sigma_admissible(TheoremContext::Thm5, ts + 1e-6, s));
    CHECK_THROWS_AS(sigma_admissible(TheoremContext::Thm5, ts - 1e-6, s), Error);
  }
  CHECK_NOTHROW(sigma_admissible(TheoremContext::Thm5, 19.0 / 24.0, 17));
  CHECK_THROWS_AS(sigma_admissible(TheoremContext::Thm5, 0.79, 20), Error);
}
