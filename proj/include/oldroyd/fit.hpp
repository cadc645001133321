#pragma once

#include <string>
#include <utility>
#include <vector>

namespace oldroyd {

/// Abscissa used for the log-log regression: time series regress against
/// log(1 + t); parameter sweeps (e.g. damping grids) against log(x).
enum class FitAbscissa { log1p_t, log_x };

/// How a fitted exponent is compared against its target.
///   two_sided : |exp - target| <= tol * |target|
///   at_most   : exp <= target + tol * |target|
///   at_least  : exp >= target - tol * |target|
///   report    : informational, always passes
enum class PassMode { two_sided, at_most, at_least, report };

struct FitWindow {
  double lo = 0.0;
  double hi = 0.0;
};

struct FitResult {
  std::string name;
  double exponent = 0.0;
  double intercept = 0.0;  // fitted log-prefactor
  double residual = 0.0;   // max relative deviation of the fitted line
  FitWindow window;
  int points = 0;

  double target = 0.0;
  double tolerance = 0.0;
  PassMode mode = PassMode::report;
  bool pass = true;
  bool skipped = false;
  std::string status = "ok";

  /// Recomputes pass from (exponent, target, tolerance, mode, residual);
  /// pass is a pure function of those fields.
  void evaluate(double target_, double tolerance_, PassMode mode_,
                double residual_tol = -1.0);
};

/// Least-squares slope of log y against the chosen abscissa over the window.
/// Requires >= 8 in-window points with y > 0; throws otherwise.
FitResult fit_power_law(const std::vector<std::pair<double, double>>& series,
                        FitWindow window,
                        FitAbscissa abscissa = FitAbscissa::log1p_t);

/// fit_power_law, but an all-(near-)zero series yields a skipped FitResult
/// instead of an error.
FitResult fit_power_law_or_skip(
    const std::vector<std::pair<double, double>>& series, FitWindow window,
    FitAbscissa abscissa = FitAbscissa::log1p_t);

}  // namespace oldroyd
