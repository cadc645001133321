#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "oldroyd/functionals.hpp"
#include "oldroyd/initial_data.hpp"
#include "oldroyd/oracle.hpp"
#include "oldroyd/stepper.hpp"
#include "test_util.hpp"

using namespace oldroyd;
using testutil::random_field;
using testutil::single_mode;

TEST_CASE("step basics") {
  const Grid g = make_grid(16, kTwoPi);
  ModelEngine eng(g);
  Stepper st(eng);
  ModelParams p{0.3, 0.75, 0.0, g};

  SUBCASE("zero state stays zero") {
    const SimState out = st.step(zero_state(g), p, 0.5, Scheme::ifrk4);
    CHECK(out.u.max_abs() == 0.0);
    CHECK(out.tau.max_abs() == 0.0);
    CHECK(out.t == 0.5);
  }

  SUBCASE("decoupled trace mode decays exactly for any dt") {
    SimState s = zero_state(g);
    const Complex c{0.2, 0.1};
    s.tau = single_mode(g, Rank::symtensor, 1, 2, {c, Complex{0.0, 0.0}, c});
    const double xi2 = g.xi(1) * g.xi(1) + g.xi(2) * g.xi(2);
    const double lam = p.a + std::pow(xi2, p.beta);
    for (double dt : {0.05, 0.9, 3.7}) {
      const SimState out = st.step(s, p, dt, Scheme::ifrk4);
      const double decay = std::exp(-lam * dt);
      CHECK(std::abs(out.tau.at(0, 1, 2) - decay * c) < 1e-13);
      CHECK(out.u.max_abs() < 1e-15);
    }
  }

  SUBCASE("per-step drift stays below 1e-10") {
    std::mt19937_64 rng(47);
    SimState s = zero_state(g);
    s.u = leray_project(random_field(g, Rank::vector, rng, 5));
    s.tau = random_field(g, Rank::symtensor, rng, 5);
    s.u *= 1e-2;
    s.tau *= 1e-2;
    st.step(s, p, 0.1, Scheme::ifrk4);
    CHECK(st.last_divergence_drift() < 1e-10);
    CHECK(st.last_reality_drift() < 1e-10);
  }
}

TEST_CASE("linear convergence against the exact propagator") {
  const Grid g = make_grid(32, 8.0 * kPi);
  ModelEngine eng(g);
  Stepper st(eng);
  ModelParams p{0.2, 0.75, 0.0, g};
  const SimState init = gen_initial_data({InitKind::compact_fourier, 1e-2, 1}, g);
  const double t_end = 1.0;
  const SimState exact = linear_field_propagate(init, p.a, p.beta, t_end);

  auto global_error = [&](double dt, Scheme scheme) {
    SimState s = init;
    const int nsteps = static_cast<int>(std::round(t_end / dt));
    for (int i = 0; i < nsteps; ++i) s = st.step(s, p, dt, scheme, true);
    return diff_norm(s, exact, 0.0) / state_l2(exact);
  };

  SUBCASE("IF-RK4 is fourth order") {
    std::vector<double> errs;
    for (double dt : {0.2, 0.1, 0.05, 0.025}) errs.push_back(global_error(dt, Scheme::ifrk4));
    for (std::size_t i = 1; i < errs.size(); ++i) {
      const double ratio = errs[i - 1] / errs[i];
      CHECK(ratio > 8.0);
      CHECK(ratio < 32.0);
    }
  }

  SUBCASE("IF-RK2 is second order") {
    std::vector<double> errs;
    for (double dt : {0.2, 0.1, 0.05, 0.025}) errs.push_back(global_error(dt, Scheme::ifrk2));
    for (std::size_t i = 1; i < errs.size(); ++i) {
      const double ratio = errs[i - 1] / errs[i];
      CHECK(ratio > 2.0);
      CHECK(ratio < 8.0);
    }
  }
}

TEST_CASE("cfl_dt") {
  const Grid g = make_grid(32, kTwoPi);
  ModelEngine eng(g);
  Stepper st(eng);
  ModelParams p{0.0, 0.75, 0.0, g};

  SUBCASE("zero velocity caps at safety * dt_max") {
    CHECK(st.cfl_dt(zero_state(g), p, 0.5, 0.04) == doctest::Approx(0.02));
  }

  SUBCASE("doubling max|u| halves dt when CFL-binding") {
    SimState s = zero_state(g);
    // A single cosine of amplitude 2: max|u| = 2.
    s.u = single_mode(g, Rank::vector, 1, 0, {Complex{1.0, 0.0}, Complex{0.0, 0.0}});
    const double dt1 = st.cfl_dt(s, p, 1.0, 100.0);
    s.u *= 2.0;
    const double dt2 = st.cfl_dt(s, p, 1.0, 100.0);
    CHECK(dt1 == doctest::Approx(2.0 * dt2).epsilon(1e-12));
    CHECK(dt1 == doctest::Approx(g.dx() / 2.0).epsilon(1e-12));
  }

  SUBCASE("random state gives positive finite dt") {
    std::mt19937_64 rng(53);
    SimState s = zero_state(g);
    s.u = leray_project(random_field(g, Rank::vector, rng, 6));
    const double dt = st.cfl_dt(s, p, 0.9, 1.0);
    CHECK(dt > 0.0);
    CHECK(std::isfinite(dt));
  }
}

TEST_CASE("integrate") {
  const Grid g = make_grid(32, 8.0 * kPi);
  ModelEngine eng(g);
  Stepper st(eng);
  ModelParams p{0.0, 0.75, 0.0, g};
  const SimState init = gen_initial_data({InitKind::compact_fourier, 1e-3, 1}, g);

  SUBCASE("t_end = 0 yields the initial state only") {
    StepperConfig cfg;
    cfg.t_end = 0.0;
    cfg.sample_times = {0.0};
    int count = 0;
    st.integrate(init, p, cfg, [&](const SimState& s) {
      ++count;
      CHECK(s.t == 0.0);
      CHECK((s.u - init.u).max_abs() == 0.0);
    });
    CHECK(count == 1);
  }

  SUBCASE("samples land exactly and match the exact linear flow") {
    StepperConfig cfg;
    cfg.scheme = Scheme::ifrk4;
    cfg.dt = 0.01;
    cfg.t_end = 5.0;
    cfg.sample_times = {1.0, 2.5, 5.0};
    cfg.linear_only = true;
    std::vector<double> seen;
    st.integrate(init, p, cfg, [&](const SimState& s) {
      seen.push_back(s.t);
      const SimState exact = linear_field_propagate(init, p.a, p.beta, s.t);
      CHECK(diff_norm(s, exact, 0.0) / state_l2(exact) < 1e-6);
    });
    CHECK(seen == std::vector<double>{1.0, 2.5, 5.0});
  }

  SUBCASE("linear trajectories scale linearly in the data") {
    StepperConfig cfg;
    cfg.dt = 0.05;
    cfg.t_end = 1.0;
    cfg.sample_times = {1.0};
    cfg.linear_only = true;
    SimState scaled = init;
    scaled.u *= 0.25;
    scaled.tau *= 0.25;
    SimState out1, out2;
    st.integrate(init, p, cfg, [&](const SimState& s) { out1 = s; });
    st.integrate(scaled, p, cfg, [&](const SimState& s) { out2 = s; });
    out1.u *= 0.25;
    out1.tau *= 0.25;
    CHECK((out1.u - out2.u).max_abs() < 1e-15);
    CHECK((out1.tau - out2.tau).max_abs() < 1e-15);
  }
}

TEST_CASE("L2 balance along an integrated linear trajectory") {
  // d/dt (1/2)||(u,tau)||^2 = -||Lambda^beta tau||^2 - a ||tau||^2 along the
  // linear flow; finite differences of the sampled energy must track the
  // sampled dissipation up to the quadrature error of the time derivative.
  const Grid g = make_grid(32, 8.0 * kPi);
  ModelEngine eng(g);
  Stepper st(eng);
  const ModelParams p{0.15, 0.75, 0.0, g};
  const SimState init = gen_initial_data({InitKind::compact_fourier, 1e-2, 1}, g);
  StepperConfig cfg;
  cfg.dt = 0.02;
  cfg.t_end = 2.0;
  cfg.linear_only = true;
  for (double t = 0.0; t <= 2.0001; t += 0.02) cfg.sample_times.push_back(t);

  std::vector<double> ts, half_e, diss;
  st.integrate(init, p, cfg, [&](const SimState& s) {
    ts.push_back(s.t);
    half_e.push_back(0.5 * (hybrid_norm_sq(s.u, 0, 0) + hybrid_norm_sq(s.tau, 0, 0)));
    diss.push_back(hybrid_norm_sq(s.tau, p.beta, 0.0) +
                   p.a * hybrid_norm_sq(s.tau, 0.0, 0.0));
  });
  for (std::size_t i = 1; i + 1 < ts.size(); ++i) {
    const double fd = (half_e[i + 1] - half_e[i - 1]) / (ts[i + 1] - ts[i - 1]);
    CHECK(std::abs(fd + diss[i]) < 2e-3 * diss[i]);
  }
}

TEST_CASE("discrete energy inequality on a small nonlinear run") {
  const Grid g = make_grid(48, 8.0 * kPi);
  ModelEngine eng(g);
  Stepper st(eng);
  for (double a : {0.0, 0.1}) {
    ModelParams p{a, 0.75, 0.0, g};
    const SimState init = gen_initial_data({InitKind::compact_fourier, 1e-3, 1}, g);
    StepperConfig cfg;
    cfg.dt = 0.05;
    cfg.t_end = 3.0;
    for (double t = 0.0; t <= 3.0001; t += 0.25) cfg.sample_times.push_back(t);

    std::vector<double> ts, e0s, d0s, e1s, d1s;
    const double k = 0.01, s_mon = 1.95;
    st.integrate(init, p, cfg, [&](const SimState& s) {
      ts.push_back(s.t);
      e0s.push_back(energy_E0(s, p, k, s_mon));
      d0s.push_back(dissipation_D0(s, p, k, s_mon));
      e1s.push_back(energy_Ebar(s, p, k, 1, s_mon));
      d1s.push_back(dissipation_Dbar(s, p, k, 1, s_mon));
    });
    for (std::size_t i = 1; i + 1 < ts.size(); ++i) {
      const double h2 = ts[i + 1] - ts[i - 1];
      const double de0 = (e0s[i + 1] - e0s[i - 1]) / h2;
      const double de1 = (e1s[i + 1] - e1s[i - 1]) / h2;
      CHECK(de0 + d0s[i] <= 1e-6 * (std::abs(e0s[i]) + std::abs(d0s[i])));
      CHECK(de1 + d1s[i] <= 1e-6 * (std::abs(e1s[i]) + std::abs(d1s[i])));
    }
  }
}
