#include <doctest.h>

#include <cmath>
#include <limits>

#include "aesq/buchstab.hpp"
#include "aesq/errors.hpp"

using namespace aesq;

namespace {

const BuchstabTable& table() {
  static const BuchstabTable t = solve_buchstab();
  return t;
}

}  // namespace

TEST_CASE("omega closed-form points") {
  const auto& t = table();
  CHECK(omega(1.5, t) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK(omega(2.5, t) == doctest::Approx((1.0 + std::log(1.5)) / 2.5).epsilon(1e-15));
  CHECK(omega(2.5, t) == doctest::Approx(0.56218604).epsilon(1e-8));
  CHECK(omega(2.0, t) == 0.5);
  CHECK(omega(3.0, t) == doctest::Approx((1.0 + std::log(2.0)) / 3.0).epsilon(1e-15));
  CHECK(omega(3.0, t) == doctest::Approx(0.56438239).epsilon(1e-8));
}

TEST_CASE("omega domain") {
  const auto& t = table();
  CHECK_THROWS_AS(omega(0.9, t), Error);
  CHECK_THROWS_AS(omega(t.u_max() + 0.1, t), Error);
  try {
    omega(0.9, t);
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Domain);
  }
}

TEST_CASE("omega_upper branches") {
  CHECK(omega_upper(1.2) == doctest::Approx(1.0 / 1.2).epsilon(1e-15));
  CHECK(omega_upper(3.5) == doctest::Approx(0.56438239).epsilon(1e-8));
  CHECK(omega_upper(2.5) == doctest::Approx(0.56218604).epsilon(1e-8));
  CHECK(omega_upper(100.0) == doctest::Approx((1.0 + std::log(2.0)) / 3.0));
  CHECK_THROWS_AS(omega_upper(0.99), Error);
}

TEST_CASE("solver arguments") {
  try {
    solve_buchstab(10.0, 2e-3);
    FAIL("expected tolerance error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::Tolerance);
  }
  CHECK_THROWS_AS(solve_buchstab(1.5, 1e-4), Error);
}

TEST_CASE("stored branches on (1, 3]") {
  const auto& t = table();
  const double eps = std::numeric_limits<double>::epsilon();
  for (std::size_t i = 1; i <= 2 * t.per_unit(); ++i) {
    const double u = t.grid_point(i);
    const double want = u <= 2.0 ? 1.0 / u : (1.0 + std::log(u - 1.0)) / u;
    if (u <= 2.0)
      REQUIRE(std::fabs(t.values()[i] - want) <= 10 * eps);
    else
      REQUIRE(std::fabs(t.values()[i] - want) <= 1e-9);
  }
}

TEST_CASE("positivity and the upper bound") {
  const auto& t = table();
  for (std::size_t i = 0; i < t.values().size(); ++i) {
    const double u = t.grid_point(i);
    REQUIRE(t.values()[i] > 0.0);
    REQUIRE(t.values()[i] <= omega_upper(u) + 1e-9);
  }
  for (double u = 1.0; u <= t.u_max(); u += 0.0137) REQUIRE(omega(u, t) <= omega_upper(u) + 1e-9);
}

TEST_CASE("Lipschitz bound on grid neighbours") {
  const auto& t = table();
  const double h = t.step();
  double K = 0.0;
  const std::size_t start = t.per_unit() / 2;  // u = 1.5
  for (std::size_t i = start + 1; i < t.values().size(); ++i)
    K = std::max(K, std::fabs(t.values()[i] - t.values()[i - 1]) / h);
  // |omega'| <= 1/u^2 on (1,2]; smaller beyond
  CHECK(K <= 1.0 / (1.5 * 1.5) + 1e-6);
  for (std::size_t i = start + 1; i < t.values().size(); ++i)
    REQUIRE(std::fabs(t.values()[i] - t.values()[i - 1]) <= K * h * (1 + 1e-12));
}

TEST_CASE("step halving on [1, 10]") {
  const BuchstabTable coarse(10.0, 1e-4);
  const BuchstabTable fine(10.0, 5e-5);
  double worst = 0.0;
  for (int k = 0; k <= 9000; ++k) {
    const double u = 1.0 + k * 1e-3;
    worst = std::max(worst, std::fabs(coarse.omega(u) - fine.omega(u)));
  }
  CHECK(worst <= 1e-8);
}

TEST_CASE("integral-form residual by composite Simpson") {
  const auto& t = table();
  const auto& w = t.values();
  const double h = t.step();
  const std::size_t n1 = t.per_unit();  // index of u = 2
  // I(u_j) = int_2^{u_j} omega(t - 1) dt on even offsets, from grid values of
  // omega at t - 1, i.e. index j - n1
  double I = 0.0;
  double worst = 0.0;
  for (std::size_t j = n1 + 2; j < w.size(); j += 2) {
    const std::size_t a = j - 2 - n1;
    I += h / 3.0 * (w[a] + 4.0 * w[a + 1] + w[a + 2]);
    const double u = t.grid_point(j);
    worst = std::max(worst, std::fabs(u * w[j] - 1.0 - I));
  }
  CHECK(worst <= 1e-8);
}

TEST_CASE("omega tends toward exp(-gamma)") {
  // sanity only: omega(u) -> e^{-gamma} = 0.5614594836
  CHECK(std::fabs(omega(19.0, table()) - 0.5614594836) < 1e-6);
}
