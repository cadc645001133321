#include <doctest.h>

#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>

#include "oldroyd/experiments.hpp"
#include "oldroyd/oracle.hpp"
#include "oldroyd/report.hpp"
#include "oldroyd/selfcheck.hpp"

using namespace oldroyd;

namespace {

Scenario small_scenario() {
  Scenario s;
  scenario_set(s, "grid.n", "64");
  scenario_set(s, "grid.l", "100.53096491487338");  // 32 pi, T_box ~ 22.6
  scenario_set(s, "model.beta", "0.75");
  scenario_set(s, "model.a", "0");
  scenario_set(s, "init.kind", "compact-fourier");
  scenario_set(s, "init.epsilon", "1e-3");
  scenario_set(s, "stepper.dt", "0.2");
  scenario_set(s, "stepper.t_end", "12");
  scenario_set(s, "stepper.linear_only", "1");
  scenario_set(s, "output.sample_dt", "0.5");
  scenario_set(s, "fit.t_min", "1.5");
  scenario_set(s, "fit.tolerance", "0.2");
  scenario_set(s, "monitor.grad_linf", "0");
  return s;
}

}  // namespace

TEST_CASE("zero-data decay run skips the fits explicitly") {
  Scenario s = small_scenario();
  scenario_set(s, "init.epsilon", "0");
  scenario_set(s, "stepper.t_end", "3");
  const ExperimentResult r = run_decay_experiment(s, false);
  REQUIRE(!r.fits.empty());
  for (const auto& f : r.fits) {
    CHECK(f.skipped);
    CHECK(f.status.find("zero") != std::string::npos);
  }
  CHECK(r.pass);
}

TEST_CASE("linear-mode decay rates cross-check the quadrature oracle") {
  // Grid trajectory (linearized stepper) vs the exact R^2 quadrature rate,
  // fitted over the same window: tr tau decouples exactly, so its fitted
  // slope must track the oracle slope within 3%.
  Scenario s = small_scenario();
  const ExperimentResult r = run_decay_experiment(s, false);

  const FitResult* trtau = nullptr;
  for (const auto& f : r.fits)
    if (f.name == "trtau_l2") trtau = &f;
  REQUIRE(trtau != nullptr);

  std::vector<std::pair<double, double>> oracle_series;
  const Profile prof = compact_trtau_profile(1e-3);
  for (double t = 1.5; t <= 12.0; t *= 1.12)
    oracle_series.emplace_back(t, trtau_linear_decay(prof, 0.0, 0.75, t));
  const FitResult oracle_fit = fit_power_law(oracle_series, {1.5, 12.0});

  CHECK(std::abs(trtau->exponent - oracle_fit.exponent) <
        0.03 * std::abs(oracle_fit.exponent));
}

TEST_CASE("remainder experiment") {
  SUBCASE("zero data leaves a zero remainder") {
    Scenario s = small_scenario();
    scenario_set(s, "init.epsilon", "0");
    scenario_set(s, "stepper.t_end", "2");
    scenario_set(s, "stepper.linear_only", "0");
    const ExperimentResult r = run_decay_experiment(s, true);
    CHECK(r.scalars.at("remainder_max_ratio") == 0.0);
    CHECK(r.pass);
  }

  SUBCASE("epsilon ladder: halving epsilon halves the remainder ratio") {
    // The dealias ball (|xi| <= dk N/3 = 2.67) must contain the data support
    // (|xi| <= 2), or the linear comparison picks up an O(eps) dealiasing
    // difference instead of the O(eps^2) nonlinearity.
    Scenario s = small_scenario();
    scenario_set(s, "grid.n", "48");
    scenario_set(s, "grid.l", "37.699111843077517");  // 12 pi
    scenario_set(s, "stepper.linear_only", "0");
    scenario_set(s, "stepper.t_end", "4");
    scenario_set(s, "stepper.dt", "0.1");
    scenario_set(s, "init.epsilon", "2e-3");
    const double r1 =
        run_decay_experiment(s, true).scalars.at("remainder_max_ratio");
    scenario_set(s, "init.epsilon", "1e-3");
    const double r2 =
        run_decay_experiment(s, true).scalars.at("remainder_max_ratio");
    CHECK(r1 / r2 > 1.6);
    CHECK(r1 / r2 < 2.4);
    CHECK(r1 < 0.5);  // far below the acceptance fraction at this size
  }

  SUBCASE("requires a = 0") {
    Scenario s = small_scenario();
    scenario_set(s, "model.a", "0.5");
    CHECK_THROWS_AS(run_decay_experiment(s, true), std::invalid_argument);
  }
}

TEST_CASE("integrability check") {
  SUBCASE("zero data accumulates nothing and flattens") {
    Scenario s = small_scenario();
    scenario_set(s, "init.epsilon", "0");
    scenario_set(s, "stepper.t_end", "2");
    scenario_set(s, "monitor.grad_linf", "1");
    const ExperimentResult r = run_integrability_check(s);
    CHECK(r.scalars.at("grad_linf_integral") == 0.0);
    CHECK(r.scalars.at("flattening") == 1.0);
    CHECK(r.pass);
  }

  SUBCASE("trapezoid accumulation of an exponential integrand hits the closed form") {
    // Single trace mode under the exact linear flow: the integrand is
    // g0 e^{-lam t}, so the integral converges to g0 (1 - e^{-lam T}) / lam.
    const Grid g = make_grid(32, kTwoPi);
    TransformEngine fft(g);
    SimState init = zero_state(g);
    const Complex c{0.5, 0.0};
    init.tau.at(0, 1, 0) = init.tau.at(2, 1, 0) = c;
    init.tau.at(0, g.n - 1, 0) = init.tau.at(2, g.n - 1, 0) = std::conj(c);
    const double a = 0.2, beta = 0.75;
    const double lam = a + 1.0;  // |xi| = 1
    const double g0 = grad_linf(fft, init.tau);
    const double t_end = 6.0, dt = 0.01;
    double trap = 0.0, prev = g0;
    for (double t = dt; t <= t_end + 1e-12; t += dt) {
      const SimState st = linear_field_propagate(init, a, beta, t);
      const double cur = grad_linf(fft, st.tau);
      trap += 0.5 * dt * (prev + cur);
      prev = cur;
    }
    const double expect = g0 * (1.0 - std::exp(-lam * t_end)) / lam;
    CHECK(trap == doctest::Approx(expect).epsilon(1e-4));
  }

  SUBCASE("small-data linear run flattens") {
    Scenario s = small_scenario();
    scenario_set(s, "monitor.grad_linf", "1");
    const ExperimentResult r = run_integrability_check(s);
    CHECK(r.scalars.at("flattening") == 1.0);
    CHECK(r.scalars.at("grad_linf_integral") > 0.0);
  }
}

TEST_CASE("damping sweep") {
  SUBCASE("vanishing damping leaves vanishing differences") {
    Scenario s = small_scenario();
    scenario_set(s, "stepper.t_end", "3");
    scenario_set(s, "sweep.a_grid", "1e-14");
    scenario_set(s, "sweep.alphas", "0,1");
    scenario_set(s, "sweep.linear_only", "1");
    const ExperimentResult r = run_damping_sweep(s);
    for (const auto& series : r.series) {
      if (series.name.rfind("sup_", 0) != 0) continue;
      for (const auto& [a, v] : series.points) CHECK(v < 1e-10);
    }
  }

  SUBCASE("linear-only sweep: monotone sups and the oracle envelope exponent") {
    Scenario s = small_scenario();
    scenario_set(s, "stepper.t_end", "20");
    scenario_set(s, "stepper.dt", "0.1");
    scenario_set(s, "sweep.a_grid", "0.05,0.1,0.2,0.4,0.8");
    scenario_set(s, "sweep.alphas", "0");
    scenario_set(s, "sweep.linear_only", "1");
    const ExperimentResult r = run_damping_sweep(s);
    const FitResult* env = nullptr;
    for (const auto& f : r.fits)
      if (f.name == "oracle_trtau_envelope") env = &f;
    REQUIRE(env != nullptr);
    CHECK(env->pass);
    CHECK(std::abs(env->exponent - 2.0 / 3.0) < 0.05 * 2.0 / 3.0);
    CHECK(r.pass);
  }

  SUBCASE("sweep rejects a outside (0, 1] and non-fixed dt") {
    Scenario s = small_scenario();
    scenario_set(s, "sweep.a_grid", "0,0.1");
    CHECK_THROWS_AS(run_damping_sweep(s), std::invalid_argument);
    Scenario s2 = small_scenario();
    scenario_set(s2, "stepper.dt_policy", "cfl");
    CHECK_THROWS_AS(run_damping_sweep(s2), std::invalid_argument);
  }
}

TEST_CASE("report emission") {
  Scenario s = small_scenario();
  scenario_set(s, "stepper.t_end", "8");
  const ExperimentResult r = run_decay_experiment(s, true);

  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "oldroyd_report_test";
  fs::remove_all(dir);
  const auto written = emit_report(r, s, dir.string());
  CHECK(!written.empty());
  CHECK(fs::exists(dir / "series.csv"));
  CHECK(fs::exists(dir / "series.json"));
  CHECK(fs::exists(dir / "fits.json"));
  CHECK(fs::exists(dir / "summary.json"));
  CHECK(fs::exists(dir / "scenario.txt"));
  CHECK(fs::exists(dir / "remainder_ratio.csv"));
  // The JSON view carries the same sample count as the CSV.
  CHECK(functional_report_to_json(r.reports.front(), r.monitor_cfg).find("trtau_l2") !=
        std::string::npos);

  // CSV row count equals the sample count (+ header).
  std::ifstream in(dir / "series.csv");
  int lines = 0;
  std::string line;
  while (std::getline(in, line))
    if (!line.empty()) ++lines;
  CHECK(lines == static_cast<int>(r.reports.size()) + 1);

  // Scenario echo reparses to the same configuration.
  const Scenario back = load_scenario_file((dir / "scenario.txt").string());
  CHECK(scenario_get(back, "grid.n") == scenario_get(s, "grid.n"));
  fs::remove_all(dir);
}

TEST_CASE("fit result JSON round trip") {
  FitResult f;
  f.name = "hdot(0)";
  f.exponent = -0.667;
  f.intercept = 1.25;
  f.residual = 0.01;
  f.window = {10.0, 181.0};
  f.points = 43;
  f.evaluate(-2.0 / 3.0, 0.15, PassMode::two_sided);
  const FitResult g = fit_result_from_json(fit_result_to_json(f));
  CHECK(g.name == f.name);
  CHECK(g.exponent == f.exponent);
  CHECK(g.intercept == f.intercept);
  CHECK(g.residual == f.residual);
  CHECK(g.window.lo == f.window.lo);
  CHECK(g.points == f.points);
  CHECK(g.target == f.target);
  CHECK(g.mode == f.mode);
  CHECK(g.pass == f.pass);
}

TEST_CASE("empty result emits well-formed files") {
  ExperimentResult r;
  Scenario s;
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "oldroyd_empty_report";
  fs::remove_all(dir);
  const auto written = emit_report(r, s, dir.string());
  CHECK(fs::exists(dir / "fits.csv"));
  CHECK(fs::exists(dir / "summary.json"));
  const FitResult roundtrip =
      fit_result_from_json("{\"name\":\"x\",\"exponent\":1.0,\"intercept\":0.0,"
                           "\"residual\":0.0,\"window\":[0,1],\"points\":9,"
                           "\"target\":1.0,\"tolerance\":0.1,\"mode\":\"report\","
                           "\"pass\":true,\"skipped\":false,\"status\":\"ok\"}");
  CHECK(roundtrip.points == 9);
  fs::remove_all(dir);
}

TEST_CASE("property battery smoke run") {
  const BatteryResult b = run_property_battery(3, 20260810);
  for (const auto& o : b.outcomes) {
    INFO(o.name, " worst=", o.worst);
    CHECK(o.failures == 0);
  }
  CHECK(b.pass);
}
