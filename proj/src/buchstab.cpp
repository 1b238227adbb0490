#include "aesq/buchstab.hpp"

#include <cmath>
#include <sstream>

#include "aesq/errors.hpp"

namespace aesq {

namespace {

std::string fmt_double(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

double omega_closed_form(double u) {
  if (u <= 2.0) return 1.0 / u;
  return (1.0 + std::log(u - 1.0)) / u;
}

double omega_upper(double u) {
  if (!(u >= 1.0)) fail(ErrorKind::Domain, "omega_upper: u=" + fmt_double(u) + " below 1");
  if (u <= 3.0) return omega_closed_form(u);
  return (1.0 + std::log(2.0)) / 3.0;
}

BuchstabTable::BuchstabTable(double u_max, double step) : u_max_(u_max), step_(step) {
  if (!(u_max >= 2.0)) fail(ErrorKind::Domain, "solve_buchstab: u_max must be >= 2");
  if (!(step > 0.0)) fail(ErrorKind::Domain, "solve_buchstab: step must be positive");
  if (step > 1e-3)
    fail(ErrorKind::Tolerance,
         "solve_buchstab: step=" + fmt_double(step) + " too coarse for the 1e-8 budget (max 1e-3)");
  const double inv = 1.0 / step;
  per_unit_ = static_cast<std::size_t>(std::llround(inv));
  // The delay t - 1 must land on stored grid points.
  if (std::abs(inv - static_cast<double>(per_unit_)) > 1e-9 * inv)
    fail(ErrorKind::Domain, "solve_buchstab: 1/step must be an integer");
  step_ = 1.0 / static_cast<double>(per_unit_);

  const std::size_t n = static_cast<std::size_t>(std::floor((u_max - 1.0) * per_unit_ + 1e-9)) + 1;
  values_.resize(n);
  const std::size_t closed_end = std::min(n, 2 * per_unit_ + 1);  // grid index of u = 3
  for (std::size_t i = 0; i < closed_end; ++i) values_[i] = omega_closed_form(grid_point(i));

  // Trapezoid on u*omega(u) = 1 + int_2^u omega(t - 1) dt.
  const double h = step_;
  for (std::size_t i = closed_end; i < n; ++i) {
    const double u = grid_point(i);
    const double prev = grid_point(i - 1) * values_[i - 1];
    const double delayed = 0.5 * h * (values_[i - 1 - per_unit_] + values_[i - per_unit_]);
    values_[i] = (prev + delayed) / u;
  }
}

double BuchstabTable::grid_point(std::size_t i) const {
  return 1.0 + static_cast<double>(i) / static_cast<double>(per_unit_);
}

double BuchstabTable::omega(double u) const {
  if (!(u >= 1.0) || u > u_max_ + 1e-12)
    fail(ErrorKind::Domain, "omega: u=" + fmt_double(u) + " outside [1, " + fmt_double(u_max_) + "]");
  if (u <= 3.0) return omega_closed_form(u);
  const double pos = (u - 1.0) * static_cast<double>(per_unit_);
  std::size_t i = static_cast<std::size_t>(pos);
  if (i + 1 >= values_.size()) return values_.back();
  const double frac = pos - static_cast<double>(i);
  return values_[i] + frac * (values_[i + 1] - values_[i]);
}

BuchstabTable solve_buchstab(double u_max, double step) { return BuchstabTable(u_max, step); }

double omega(double u, const BuchstabTable& table) { return table.omega(u); }

}  // namespace aesq
