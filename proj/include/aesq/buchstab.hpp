#pragma once

#include <cstddef>
#include <vector>

namespace aesq {

inline constexpr double kDefaultBuchstabStep = 1e-4;
inline constexpr double kDefaultBuchstabUMax = 20.0;

/// Buchstab's function omega on the grid u = 1, 1 + step, ..., u_max.
///
/// omega is the continuous solution of (u omega(u))' = omega(u - 1) for u > 2
/// with omega(u) = 1/u on (1, 2]. The branches on (1, 3] are stored in closed
/// form; beyond 3 the integral form u omega(u) = 1 + int_2^u omega(t - 1) dt is
/// advanced with the trapezoid rule on the grid.
class BuchstabTable {
 public:
  BuchstabTable(double u_max, double step);

  double u_max() const { return u_max_; }
  double step() const { return step_; }
  std::size_t per_unit() const { return per_unit_; }
  const std::vector<double>& values() const { return values_; }

  double grid_point(std::size_t i) const;

  /// Point evaluation on [1, u_max]; closed form on [1, 3], linear
  /// interpolation of the table beyond. u = 1 returns the right limit 1.
  double omega(double u) const;

 private:
  double u_max_;
  double step_;
  std::size_t per_unit_;
  std::vector<double> values_;
};

BuchstabTable solve_buchstab(double u_max = kDefaultBuchstabUMax,
                             double step = kDefaultBuchstabStep);

double omega(double u, const BuchstabTable& table);

/// Closed-form branches of omega, valid on [1, 3].
double omega_closed_form(double u);

/// Piecewise upper bound: 1/u on [1,2], (1 + log(u-1))/u on (2,3],
/// (1 + log 2)/3 beyond. Equality holds on [1, 3].
double omega_upper(double u);

}  // namespace aesq
