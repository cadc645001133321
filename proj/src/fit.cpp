#include "oldroyd/fit.hpp"

#include <cmath>
#include <stdexcept>

namespace oldroyd {

void FitResult::evaluate(double target_, double tolerance_, PassMode mode_,
                         double residual_tol) {
  target = target_;
  tolerance = tolerance_;
  mode = mode_;
  if (skipped) {
    pass = false;
    return;
  }
  const double slack = tolerance * std::abs(target);
  switch (mode) {
    case PassMode::two_sided:
      pass = std::abs(exponent - target) <= slack;
      break;
    case PassMode::at_most:
      pass = exponent <= target + slack;
      break;
    case PassMode::at_least:
      pass = exponent >= target - slack;
      break;
    case PassMode::report:
      pass = true;
      break;
  }
  if (residual_tol >= 0.0 && residual > residual_tol) pass = false;
}

FitResult fit_power_law(const std::vector<std::pair<double, double>>& series,
                        FitWindow window, FitAbscissa abscissa) {
  std::vector<double> xs, ys;
  for (const auto& [t, y] : series) {
    if (t < window.lo || t > window.hi) continue;
    if (!(y > 0.0))
      throw std::invalid_argument("fit_power_law: nonpositive value in window");
    xs.push_back(abscissa == FitAbscissa::log1p_t ? std::log1p(t) : std::log(t));
    ys.push_back(std::log(y));
  }
  const int n = static_cast<int>(xs.size());
  if (n < 8) throw std::invalid_argument("fit_power_law: fewer than 8 points in window");

  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (int i = 0; i < n; ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  const double det = n * sxx - sx * sx;
  if (det == 0.0) throw std::invalid_argument("fit_power_law: degenerate abscissa");

  FitResult r;
  r.exponent = (n * sxy - sx * sy) / det;
  r.intercept = (sy - r.exponent * sx) / n;
  r.window = window;
  r.points = n;
  double worst = 0.0;
  for (int i = 0; i < n; ++i) {
    const double fitted = std::exp(r.intercept + r.exponent * xs[i]);
    worst = std::max(worst, std::abs(std::exp(ys[i]) - fitted) / fitted);
  }
  r.residual = worst;
  return r;
}

FitResult fit_power_law_or_skip(
    const std::vector<std::pair<double, double>>& series, FitWindow window,
    FitAbscissa abscissa) {
  double peak = 0.0;
  int in_window = 0;
  for (const auto& [t, y] : series) {
    if (t < window.lo || t > window.hi) continue;
    ++in_window;
    peak = std::max(peak, std::abs(y));
  }
  const bool zero = peak < 1e-300;
  if (zero || in_window < 8) {
    FitResult r;
    r.window = window;
    r.points = in_window;
    r.skipped = true;
    r.pass = false;
    r.status = zero ? "skipped: series identically zero in window"
                    : "skipped: fewer than 8 points in window";
    return r;
  }
  return fit_power_law(series, window, abscissa);
}

}  // namespace oldroyd
