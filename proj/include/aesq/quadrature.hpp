#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <vector>

namespace aesq {

struct QuadResult {
  double value = 0.0;
  double error = 0.0;  // accumulated |S2 - S1| / 15 estimate
  std::size_t evaluations = 0;
  bool converged = true;
};

namespace detail {

template <class F>
void simpson_step(F& f, double a, double b, double fa, double fm, double fb, double whole,
                  double tol, int depth, QuadResult& acc) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  acc.evaluations += 2;
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double diff = left + right - whole;
  if (depth <= 0 || std::abs(diff) <= 15.0 * tol) {
    if (depth <= 0 && std::abs(diff) > 15.0 * tol) acc.converged = false;
    acc.value += left + right + diff / 15.0;
    acc.error += std::abs(diff) / 15.0;
    return;
  }
  simpson_step(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1, acc);
  simpson_step(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1, acc);
}

}  // namespace detail

/// Adaptive Simpson with Richardson correction. The interval is first split
/// into four panels so narrow features near the midpoint are not missed.
template <class F>
QuadResult adaptive_simpson(F&& f, double a, double b, double tol, int max_depth = 48) {
  QuadResult acc;
  if (!(b > a)) return acc;
  constexpr int kPanels = 4;
  const double h = (b - a) / kPanels;
  double x0 = a;
  double f0 = f(x0);
  acc.evaluations += 1;
  for (int i = 0; i < kPanels; ++i) {
    const double x1 = (i + 1 == kPanels) ? b : a + (i + 1) * h;
    const double xm = 0.5 * (x0 + x1);
    const double fm = f(xm);
    const double f1 = f(x1);
    acc.evaluations += 2;
    const double whole = (x1 - x0) / 6.0 * (f0 + 4.0 * fm + f1);
    detail::simpson_step(f, x0, x1, f0, fm, f1, whole, tol / kPanels, max_depth, acc);
    x0 = x1;
    f0 = f1;
  }
  return acc;
}

/// Adaptive Simpson over [a, b] split at the given interior breakpoints; the
/// tolerance is shared in proportion to panel length.
template <class F>
QuadResult integrate_piecewise(F&& f, double a, double b, std::vector<double> breaks, double tol) {
  QuadResult total;
  if (!(b > a)) return total;
  const double eps = 1e-14 * std::max(1.0, std::abs(b - a));
  std::vector<double> pts{a};
  std::sort(breaks.begin(), breaks.end());
  for (double x : breaks)
    if (x > pts.back() + eps && x < b - eps) pts.push_back(x);
  pts.push_back(b);
  for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
    const double share = tol * (pts[i + 1] - pts[i]) / (b - a);
    QuadResult r = adaptive_simpson(f, pts[i], pts[i + 1], share);
    total.value += r.value;
    total.error += r.error;
    total.evaluations += r.evaluations;
    total.converged = total.converged && r.converged;
  }
  return total;
}

}  // namespace aesq
