#include "oldroyd/experiments.hpp"

#include <cmath>
#include <stdexcept>

#include "oldroyd/oracle.hpp"
#include "oldroyd/spectral_ops.hpp"

namespace oldroyd {

void ExperimentResult::gate_on_fits() {
  for (const auto& f : fits)
    if (f.mode != PassMode::report && !f.pass) pass = false;
}

double finite_box_horizon(const Grid& g, double beta) {
  return std::pow(g.l / (4.0 * kPi), 2.0 * beta);
}

namespace {

FitWindow decay_window(const Scenario& scn) {
  double hi = scn.t_box();
  if (scn.fit_t_max > 0.0) hi = std::min(hi, scn.fit_t_max);
  hi = std::min(hi, scn.stepper.t_end);
  return {scn.fit_t_min, hi};
}

std::vector<std::pair<double, double>> column(
    const std::vector<FunctionalReport>& reports,
    const std::function<double(const FunctionalReport&)>& get) {
  std::vector<std::pair<double, double>> out;
  out.reserve(reports.size());
  for (const auto& r : reports) out.emplace_back(r.t, get(r));
  return out;
}

int s_index(const MonitorConfig& cfg, double s1) {
  for (std::size_t i = 0; i < cfg.s_list.size(); ++i)
    if (cfg.s_list[i] == s1) return static_cast<int>(i);
  throw std::logic_error("monitored s-list missing fitted order");
}

std::vector<double> log_times(double t_min, double t_max, int n) {
  if (!(t_min > 0.0 && t_max > t_min) || n < 2)
    throw std::invalid_argument("log_times: bad range");
  std::vector<double> out;
  out.reserve(n);
  for (int i = 0; i < n; ++i)
    out.push_back(t_min * std::pow(t_max / t_min, double(i) / (n - 1)));
  return out;
}

}  // namespace

ExperimentResult run_decay_experiment(const Scenario& scn_in, bool with_remainder) {
  Scenario scn = scn_in;
  scn.finalize();
  if (with_remainder && scn.params.a != 0.0)
    throw std::invalid_argument(
        "remainder experiment requires a = 0 (the linear reference is the "
        "undamped system)");

  ExperimentResult out;
  out.monitor_cfg = scn.monitors;

  const SimState initial = gen_initial_data(scn.init, scn.params.grid);
  const std::string warn =
      smallness_warning(initial, scn.monitors.s, scn.smallness_delta);
  if (!warn.empty()) out.warnings.push_back(warn);
  if (with_remainder &&
      scn.params.grid.dk() * (scn.params.grid.n / 3) < 2.0) {
    out.warnings.push_back(
        "dealias ball does not contain the compact-fourier support |xi| <= 2; "
        "the linear comparison will carry an O(eps) dealiasing bias");
  }

  ModelEngine eng(scn.params.grid);
  Stepper stepper(eng);

  Series rem_norm{"remainder_l2"}, lin_norm{"linear_l2"}, rem_ratio{"remainder_ratio"};
  double max_ratio = 0.0;
  double max_div_drift = 0.0, max_reality_drift = 0.0;

  stepper.integrate(initial, scn.params, scn.stepper, [&](const SimState& st) {
    out.reports.push_back(sample_report(eng, st, scn.params, scn.monitors));
    max_div_drift = std::max(max_div_drift, stepper.last_divergence_drift());
    max_reality_drift = std::max(max_reality_drift, stepper.last_reality_drift());
    if (with_remainder) {
      const SimState lin =
          linear_field_propagate(initial, scn.params.a, scn.params.beta, st.t);
      const double ln = state_l2(lin);
      const double rn = diff_norm(st, lin, 0.0);
      rem_norm.points.emplace_back(st.t, rn);
      lin_norm.points.emplace_back(st.t, ln);
      if (st.t > 0.0 && ln > 0.0) {
        rem_ratio.points.emplace_back(st.t, rn / ln);
        max_ratio = std::max(max_ratio, rn / ln);
      }
    }
  });

  const FitWindow w = decay_window(scn);
  for (double s1 : scn.fit_s1_list) {
    const int idx = s_index(scn.monitors, s1);
    FitResult f = fit_power_law_or_skip(
        column(out.reports, [idx](const FunctionalReport& r) { return r.hdots[idx]; }),
        w);
    f.name = "hdot(" + std::to_string(s1) + ")";
    if (f.skipped) {
      // Zero data: nothing to fit, nothing to gate.
      f.pass = true;
    } else if (scn.params.a == 0.0) {
      f.evaluate(-(1.0 + s1) / (2.0 * scn.params.beta), scn.fit_tolerance,
                 PassMode::two_sided);
    } else {
      f.evaluate(-(1.0 + s1) / 2.0, scn.fit_tolerance, PassMode::at_most);
    }
    out.fits.push_back(std::move(f));
  }
  {
    FitResult f = fit_power_law_or_skip(
        column(out.reports, [](const FunctionalReport& r) { return r.trtau; }), w);
    f.name = "trtau_l2";
    if (f.skipped)
      f.pass = true;
    else
      f.evaluate(-0.5 / scn.params.beta, scn.fit_tolerance, PassMode::at_most);
    out.fits.push_back(std::move(f));
  }

  out.add_scalar("t_box", scn.t_box());
  out.add_scalar("max_div_drift", max_div_drift);
  out.add_scalar("max_reality_drift", max_reality_drift);
  if (max_div_drift > 1e-10 || max_reality_drift > 1e-10) {
    out.pass = false;
    out.warnings.push_back("pre-enforcement drift exceeded 1e-10 per step");
  }

  if (with_remainder) {
    out.series.push_back(std::move(rem_norm));
    out.series.push_back(std::move(lin_norm));
    out.series.push_back(std::move(rem_ratio));
    out.add_scalar("remainder_max_ratio", max_ratio);
    out.add_scalar("remainder_fraction_gate", scn.remainder_fraction);
    if (!(max_ratio < scn.remainder_fraction)) {
      out.pass = false;
      out.warnings.push_back("remainder exceeded the configured fraction of the linear part");
    }
    FitResult f = fit_power_law_or_skip(rem_norm.points, w);
    f.name = "remainder_l2";
    if (f.skipped) f.pass = true;
    out.fits.push_back(std::move(f));
  }

  out.gate_on_fits();
  return out;
}

ExperimentResult run_integrability_check(const Scenario& scn_in) {
  Scenario scn = scn_in;
  scn.finalize();
  ExperimentResult out;
  out.monitor_cfg = scn.monitors;
  if (!(scn.monitors.s > 1.0 + scn.params.beta))
    out.warnings.push_back(
        "integrability check expects monitor.s > 1 + beta; the integrand may not decay");

  const SimState initial = gen_initial_data(scn.init, scn.params.grid);
  ModelEngine eng(scn.params.grid);
  Stepper stepper(eng);
  stepper.integrate(initial, scn.params, scn.stepper, [&](const SimState& st) {
    out.reports.push_back(sample_report(eng, st, scn.params, scn.monitors));
  });

  double total = 0.0, tail = 0.0;
  const double tail_start = scn.stepper.t_end * 0.9;
  for (std::size_t i = 1; i < out.reports.size(); ++i) {
    const double h = out.reports[i].t - out.reports[i - 1].t;
    const double inc = 0.5 * h * (out.reports[i].gradlinf + out.reports[i - 1].gradlinf);
    total += inc;
    if (out.reports[i - 1].t >= tail_start) tail += inc;
  }
  out.add_scalar("grad_linf_integral", total);
  out.add_scalar("last_decade_increment", tail);
  const bool flattening = total == 0.0 || tail < 0.10 * total;
  out.add_scalar("flattening", flattening ? 1.0 : 0.0);
  if (!flattening) {
    out.pass = false;
    out.warnings.push_back("integrability tail is not flattening");
  }
  return out;
}

namespace {

struct SweepAccumulator {
  std::vector<double> sup_alpha;
  double sup_trtau = 0.0;
};

// Advances the damped and reference trajectories with identical dt
// sequences and accumulates the sup of the difference norms over samples.
SweepAccumulator co_stepped_sups(const Scenario& scn, double a,
                                 const std::vector<double>& alphas,
                                 bool linear_only) {
  ModelParams pa = scn.params;
  pa.a = a;
  ModelParams p0 = scn.params;
  p0.a = 0.0;

  const SimState initial = gen_initial_data(scn.init, scn.params.grid);
  ModelEngine eng(scn.params.grid);
  Stepper stepper_a(eng), stepper_0(eng);

  SweepAccumulator acc;
  acc.sup_alpha.assign(alphas.size(), 0.0);

  SimState sa = initial, s0 = initial;
  for (double target : scn.stepper.sample_times) {
    while (sa.t < target - 1e-12 * std::max(1.0, target)) {
      const double dt = std::min(scn.stepper.dt, target - sa.t);
      sa = stepper_a.step(sa, pa, dt, scn.stepper.scheme, linear_only);
      s0 = stepper_0.step(s0, p0, dt, scn.stepper.scheme, linear_only);
    }
    sa.t = s0.t = target;
    for (std::size_t i = 0; i < alphas.size(); ++i)
      acc.sup_alpha[i] = std::max(acc.sup_alpha[i], diff_norm(sa, s0, alphas[i]));
    acc.sup_trtau = std::max(acc.sup_trtau, trtau_diff_l2(sa, s0));
  }
  return acc;
}

double log_correction(double a, double alpha) {
  return std::log(1.0 + std::pow(a, -2.0 / (1.0 + alpha)));
}

}  // namespace

ExperimentResult run_damping_sweep(const Scenario& scn_in) {
  Scenario scn = scn_in;
  scn.finalize();
  if (scn.stepper.dt_policy != DtPolicy::fixed)
    throw std::invalid_argument(
        "damping sweep requires the fixed dt policy (paired trajectories share "
        "one dt sequence)");
  for (double a : scn.sweep_a_grid)
    if (!(a > 0.0 && a <= 1.0))
      throw std::invalid_argument("sweep a-grid must lie in (0, 1]");

  ExperimentResult out;
  out.monitor_cfg = scn.monitors;
  const double beta = scn.params.beta;
  const bool endpoint = beta == 0.5;  // log-corrected regime of the endpoint case

  std::vector<Series> sup_series(scn.sweep_alphas.size());
  for (std::size_t i = 0; i < sup_series.size(); ++i) {
    sup_series[i].name = "sup_diff_alpha" + std::to_string(scn.sweep_alphas[i]);
    sup_series[i].x_label = "a";
  }
  Series trtau_series{"sup_trtau_diff", "a"};
  Series envelope_series{"oracle_trtau_envelope", "a"};

  for (double a : scn.sweep_a_grid) {
    const SweepAccumulator acc =
        co_stepped_sups(scn, a, scn.sweep_alphas, scn.sweep_linear_only);
    for (std::size_t i = 0; i < scn.sweep_alphas.size(); ++i)
      sup_series[i].points.emplace_back(a, acc.sup_alpha[i]);
    trtau_series.points.emplace_back(a, acc.sup_trtau);
    if (scn.sweep_linear_only) {
      const DampingEnvelope env =
          damping_envelope(a, beta, compact_trtau_profile(scn.init.epsilon));
      envelope_series.points.emplace_back(a, env.profile_sup);
    }
  }

  // Monotonicity of the grid sup in a (the (1 - e^{-a t}) envelope grows
  // with a); gated on the linear-only sweep where it is exact.
  if (scn.sweep_linear_only) {
    for (std::size_t i = 1; i < trtau_series.points.size(); ++i) {
      if (trtau_series.points[i].second <
          trtau_series.points[i - 1].second * (1.0 - 1e-9)) {
        out.pass = false;
        out.warnings.push_back("linear sweep sup is not monotone in a");
      }
    }
  }

  const FitWindow aw{scn.sweep_a_grid.front(), scn.sweep_a_grid.back()};

  // Exponent fits in a. All series need >= 8 points for fit_power_law; a
  // 5-point default grid is fitted with a relaxed minimum via direct
  // regression on all points.
  auto fit_sweep = [&](const Series& s, bool log_corrected,
                       double alpha) -> FitResult {
    std::vector<std::pair<double, double>> pts = s.points;
    if (log_corrected)
      for (auto& [a, y] : pts) y /= log_correction(a, alpha);
    // Pad by log-midpoint interpolation is not meaningful here; instead use
    // the dedicated small-series slope.
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = 0;
    for (const auto& [a, y] : pts) {
      if (!(y > 0.0)) continue;
      const double lx = std::log(a), ly = std::log(y);
      sx += lx;
      sy += ly;
      sxx += lx * lx;
      sxy += lx * ly;
      ++n;
    }
    FitResult f;
    f.name = s.name + (log_corrected ? "_logcorr" : "");
    f.window = aw;
    f.points = n;
    if (n < 2) {
      f.skipped = true;
      f.pass = false;
      f.status = "skipped: fewer than 2 positive sweep points";
      return f;
    }
    const double det = n * sxx - sx * sx;
    f.exponent = (n * sxy - sx * sy) / det;
    f.intercept = (sy - f.exponent * sx) / n;
    double worst = 0.0;
    for (const auto& [a, y] : pts) {
      if (!(y > 0.0)) continue;
      const double fitted = std::exp(f.intercept + f.exponent * std::log(a));
      worst = std::max(worst, std::abs(y - fitted) / fitted);
    }
    f.residual = worst;
    return f;
  };

  for (std::size_t i = 0; i < scn.sweep_alphas.size(); ++i) {
    const double alpha = scn.sweep_alphas[i];
    FitResult f = fit_sweep(sup_series[i], endpoint, alpha);
    if (!f.skipped) {
      if (endpoint && alpha == 0.0) {
        // Remark 5.5: a^{1-} after removing the log factor.
        f.evaluate(1.0, scn.sweep_exp_tolerance, PassMode::at_least);
      } else if (!endpoint && alpha == 0.0 && !scn.sweep_linear_only) {
        // Proven lower bound on the rate: beta(1+alpha)/(alpha beta+3 beta-1).
        f.evaluate(beta / (3.0 * beta - 1.0), scn.sweep_exp_tolerance,
                   PassMode::at_least);
      } else {
        f.evaluate(0.0, 0.0, PassMode::report);
      }
    }
    out.fits.push_back(std::move(f));
  }

  {
    FitResult f = fit_sweep(trtau_series, false, 0.0);
    if (!f.skipped) {
      if (!endpoint && !scn.sweep_linear_only)
        f.evaluate(0.5 / beta, scn.sweep_exp_tolerance, PassMode::two_sided);
      else
        f.evaluate(0.0, 0.0, PassMode::report);
    }
    out.fits.push_back(std::move(f));
  }

  if (scn.sweep_linear_only) {
    FitResult f = fit_sweep(envelope_series, false, 0.0);
    if (!f.skipped) f.evaluate(0.5 / beta, 0.05, PassMode::two_sided);
    f.name = "oracle_trtau_envelope";
    out.fits.push_back(std::move(f));
  }

  for (auto& s : sup_series) out.series.push_back(std::move(s));
  out.series.push_back(std::move(trtau_series));
  if (scn.sweep_linear_only) out.series.push_back(std::move(envelope_series));

  out.gate_on_fits();
  return out;
}

// ---------------------------------------------------------------------------
// Oracle experiments.
// ---------------------------------------------------------------------------

namespace {
const Profile& unit_plateau_profile() {
  static const Profile p = Profile::plateau(1.0, 2.0, 1.0);
  return p;
}
}  // namespace

ExperimentResult oracle_decay_experiment(double beta, double s1, double t_min,
                                         double t_max, int n_samples,
                                         double slope_tol) {
  ExperimentResult out;
  Series s{"linear_decay_integral"};
  for (double t : log_times(t_min, t_max, n_samples))
    s.points.emplace_back(t, linear_decay_integral(unit_plateau_profile(), s1, beta, t));
  FitResult f = fit_power_law(s.points, {t_min, t_max});
  f.name = "linear_decay_integral";
  f.evaluate(-(1.0 + s1) / beta, slope_tol, PassMode::two_sided);
  out.fits.push_back(f);
  out.series.push_back(std::move(s));
  out.add_scalar("beta", beta);
  out.add_scalar("s1", s1);
  out.gate_on_fits();
  return out;
}

ExperimentResult oracle_trtau_experiment(double beta, double a, double t_min,
                                         double t_max, int n_samples,
                                         double slope_tol) {
  ExperimentResult out;
  Series s{"trtau_linear_decay"};
  bool dominated = true;
  for (double t : log_times(t_min, t_max, n_samples)) {
    const double v = trtau_linear_decay(unit_plateau_profile(), a, beta, t);
    s.points.emplace_back(t, v);
    if (a > 0.0) {
      const double v0 = trtau_linear_decay(unit_plateau_profile(), 0.0, beta, t);
      if (v > v0 * (1.0 + 1e-12)) dominated = false;
    }
  }
  if (a == 0.0) {
    FitResult f = fit_power_law(s.points, {t_min, t_max});
    f.name = "trtau_linear_decay";
    f.evaluate(-0.5 / beta, slope_tol, PassMode::two_sided);
    out.fits.push_back(f);
  } else {
    out.add_scalar("dominated_by_a0", dominated ? 1.0 : 0.0);
    if (!dominated) {
      out.pass = false;
      out.warnings.push_back("damped tr tau curve exceeded the a = 0 curve");
    }
  }
  out.series.push_back(std::move(s));
  out.gate_on_fits();
  return out;
}

ExperimentResult oracle_envelope_experiment(double beta,
                                            const std::vector<double>& a_grid,
                                            double ratio_tol, double fit_tol) {
  ExperimentResult out;
  Series pure{"pure_envelope", "a"}, prof{"profile_envelope", "a"},
      ratios{"pure_envelope_ratio", "a"};
  const double ex = 0.5 / beta;
  for (double a : a_grid) {
    const DampingEnvelope env = damping_envelope(a, beta, unit_plateau_profile());
    pure.points.emplace_back(a, env.pure_sup);
    prof.points.emplace_back(a, env.profile_sup);
    ratios.points.emplace_back(a, env.pure_sup / std::pow(a, ex));
  }

  double rmin = ratios.points.front().second, rmax = rmin;
  for (const auto& [a, r] : ratios.points) {
    rmin = std::min(rmin, r);
    rmax = std::max(rmax, r);
  }
  const double spread = (rmax - rmin) / (0.5 * (rmax + rmin));
  out.add_scalar("ratio_spread", spread);
  out.add_scalar("m_beta", 0.5 * (rmax + rmin));
  if (!(spread <= ratio_tol)) {
    out.pass = false;
    out.warnings.push_back("pure envelope scaling ratio is not constant");
  }

  if (beta == 0.5) {
    double worst = 0.0;
    for (const auto& [a, v] : pure.points)
      worst = std::max(worst, std::abs(v - a) / a);
    out.add_scalar("beta_half_identity_err", worst);
    if (!(worst <= ratio_tol)) {
      out.pass = false;
      out.warnings.push_back("beta = 1/2 envelope does not equal a");
    }
  }

  {
    // The profile envelope carries an independent quadrature route; its
    // exponent must match 1/(2 beta) too.
    FitResult f;
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    int n = 0;
    for (const auto& [a, y] : prof.points) {
      const double lx = std::log(a), ly = std::log(y);
      sx += lx;
      sy += ly;
      sxx += lx * lx;
      sxy += lx * ly;
      ++n;
    }
    const double det = n * sxx - sx * sx;
    f.exponent = (n * sxy - sx * sy) / det;
    f.intercept = (sy - f.exponent * sx) / n;
    f.points = n;
    f.window = {a_grid.front(), a_grid.back()};
    f.name = "profile_envelope";
    double worst = 0.0;
    for (const auto& [av, y] : prof.points) {
      const double fitted = std::exp(f.intercept + f.exponent * std::log(av));
      worst = std::max(worst, std::abs(y - fitted) / fitted);
    }
    f.residual = worst;
    f.evaluate(ex, fit_tol, PassMode::two_sided);
    out.fits.push_back(f);
  }

  out.series.push_back(std::move(pure));
  out.series.push_back(std::move(prof));
  out.series.push_back(std::move(ratios));
  out.gate_on_fits();
  return out;
}

ExperimentResult oracle_convcheck_experiment(double s1, double s2, double t_max,
                                             double tail_tol) {
  ExperimentResult out;
  Series s{"convolution_ratio"};
  double max_ratio = 0.0;
  double tail_min = 1e300, tail_max = 0.0;
  for (double t : log_times(1.0, t_max, 61)) {
    const ConvolutionCheck c = convolution_bound_check(s1, s2, t);
    s.points.emplace_back(t, c.ratio);
    max_ratio = std::max(max_ratio, c.ratio);
    if (t >= t_max / 10.0) {
      tail_min = std::min(tail_min, c.ratio);
      tail_max = std::max(tail_max, c.ratio);
    }
  }
  const double tail_var = (tail_max - tail_min) / tail_max;
  out.add_scalar("max_ratio", max_ratio);
  out.add_scalar("tail_variation", tail_var);
  if (!std::isfinite(max_ratio) || !(tail_var < tail_tol)) {
    out.pass = false;
    out.warnings.push_back("convolution ratio unbounded or not settling");
  }
  out.series.push_back(std::move(s));
  return out;
}

ExperimentResult oracle_propagate_experiment(const Scenario& scn_in, double t,
                                             int n_samples) {
  Scenario scn = scn_in;
  scn.finalize();
  ExperimentResult out;
  const SimState initial = gen_initial_data(scn.init, scn.params.grid);
  Series l2{"linear_l2"}, trt{"linear_trtau_l2"};
  for (int i = 0; i <= n_samples; ++i) {
    const double ti = t * i / n_samples;
    const SimState st =
        linear_field_propagate(initial, scn.params.a, scn.params.beta, ti);
    l2.points.emplace_back(ti, state_l2(st));
    trt.points.emplace_back(ti, trtau_l2(st));
  }
  out.series.push_back(std::move(l2));
  out.series.push_back(std::move(trt));
  return out;
}

}  // namespace oldroyd
