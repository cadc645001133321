#include "oldroyd/stepper.hpp"

#include <cmath>
#include <stdexcept>

#include "oldroyd/spectral_ops.hpp"

namespace oldroyd {

void StepperConfig::validate() const {
  if (!(dt > 0.0) || !(dt_max > 0.0))
    throw std::invalid_argument("StepperConfig: dt must be positive");
  if (!(safety > 0.0 && safety <= 1.0))
    throw std::invalid_argument("StepperConfig: safety must be in (0, 1]");
  if (!(t_end >= 0.0)) throw std::invalid_argument("StepperConfig: t_end < 0");
  double prev = -1.0;
  for (double s : sample_times) {
    if (!(s >= 0.0) || s > t_end + 1e-12 || s <= prev)
      throw std::invalid_argument(
          "StepperConfig: sample_times must be strictly increasing in [0, t_end]");
    prev = s;
  }
}

// Cached per-mode decay factors exp(-(a + |xi|^{2 beta}) h). The stiff
// diagonal is reapplied seven times per RK4 step, so the pow/exp tables are
// memoized on (a, beta) and the two step fractions in use.
void Stepper::refresh_cache(const ModelParams& p, double dt) const {
  const Grid& g = eng_.grid();
  if (cache_a_ != p.a || cache_beta_ != p.beta || lambda_.size() != g.size()) {
    lambda_.resize(g.size());
    for (int i = 0; i < g.n; ++i) {
      const double x1 = g.xi(i);
      for (int j = 0; j < g.n; ++j) {
        const double x2 = g.xi(j);
        const double r2 = x1 * x1 + x2 * x2;
        lambda_[g.at(i, j)] = p.a + (r2 == 0.0 ? 0.0 : std::pow(r2, p.beta));
      }
    }
    cache_a_ = p.a;
    cache_beta_ = p.beta;
    cache_dt_ = -1.0;
  }
  if (cache_dt_ != dt) {
    ehalf_.resize(lambda_.size());
    efull_.resize(lambda_.size());
    for (std::size_t k = 0; k < lambda_.size(); ++k) {
      ehalf_[k] = std::exp(-0.5 * dt * lambda_[k]);
      efull_[k] = ehalf_[k] * ehalf_[k];
    }
    cache_dt_ = dt;
  }
}

void Stepper::scale_tau(SpectralField& tau, const std::vector<double>& e) {
  for (int c = 0; c < 3; ++c) {
    auto s = tau.comp(c);
    for (std::size_t k = 0; k < s.size(); ++k) s[k] *= e[k];
  }
}

namespace {
struct Stage {
  SpectralField du;
  SpectralField dtau;
};
Stage to_stage(ModelEngine::Rhs&& r) { return {std::move(r.du), std::move(r.dtau)}; }
}  // namespace

SimState Stepper::combine_and_enforce(SimState&& y, double t_new) const {
  // Drift diagnostics before re-enforcement, relative to the field size.
  const double uscale = std::max(y.u.max_abs(), 1e-300);
  last_div_drift_ = divergence_defect(y.u) / uscale;
  last_reality_drift_ =
      std::max(reality_defect(y.u) / uscale,
               reality_defect(y.tau) / std::max(y.tau.max_abs(), 1e-300));
  y.u = leray_project(y.u);
  enforce_reality(y.u);
  enforce_reality(y.tau);
  y.t = t_new;
  if (!y.u.all_finite() || !y.tau.all_finite())
    throw std::runtime_error("step: non-finite state at t = " + std::to_string(t_new));
  return std::move(y);
}

SimState Stepper::step(const SimState& s, const ModelParams& p, double dt,
                       Scheme scheme, bool linear_only) const {
  if (!(dt > 0.0)) throw std::invalid_argument("step: dt must be positive");
  refresh_cache(p, dt);

  auto nonstiff = [&](const SimState& y) {
    return to_stage(eng_.rhs_nonstiff(y, p, linear_only));
  };
  auto half = [&](SpectralField tau) {
    scale_tau(tau, ehalf_);
    return tau;
  };
  auto full = [&](SpectralField tau) {
    scale_tau(tau, efull_);
    return tau;
  };

  if (scheme == Scheme::ifrk2) {
    // Lawson-Heun: y' = E y + dt/2 (E k1 + k2), k2 = N(E (y + dt k1)).
    Stage k1 = nonstiff(s);
    SimState y2{s.u + dt * k1.du, full(s.tau + dt * k1.dtau), s.t + dt};
    Stage k2 = nonstiff(y2);
    SimState out{s.u + 0.5 * dt * (k1.du + k2.du),
                 full(s.tau) + 0.5 * dt * (full(k1.dtau) + k2.dtau), 0.0};
    return combine_and_enforce(std::move(out), s.t + dt);
  }

  // Lawson-RK4:
  //   y2 = E_half (y + dt/2 k1)
  //   y3 = E_half y + dt/2 k2
  //   y4 = E_full y + dt E_half k3
  //   y' = E_full y + dt/6 (E_full k1 + 2 E_half (k2 + k3) + k4)
  Stage k1 = nonstiff(s);
  SimState y2{s.u + 0.5 * dt * k1.du, half(s.tau + 0.5 * dt * k1.dtau),
              s.t + 0.5 * dt};
  Stage k2 = nonstiff(y2);
  SimState y3{s.u + 0.5 * dt * k2.du, half(s.tau) + 0.5 * dt * k2.dtau,
              s.t + 0.5 * dt};
  Stage k3 = nonstiff(y3);
  SimState y4{s.u + dt * k3.du, full(s.tau) + dt * half(k3.dtau), s.t + dt};
  Stage k4 = nonstiff(y4);

  SpectralField u_new = s.u + (dt / 6.0) * (k1.du + 2.0 * (k2.du + k3.du) + k4.du);
  SpectralField tau_new =
      full(s.tau) +
      (dt / 6.0) * (full(k1.dtau) + 2.0 * half(k2.dtau + k3.dtau) + k4.dtau);
  return combine_and_enforce(SimState{std::move(u_new), std::move(tau_new), 0.0},
                             s.t + dt);
}

double Stepper::cfl_dt(const SimState& s, const ModelParams& p, double safety,
                       double dt_max) const {
  if (!(safety > 0.0 && safety <= 1.0))
    throw std::invalid_argument("cfl_dt: safety must be in (0, 1]");
  (void)p;  // the stiff term imposes no dt limit under the integrating factor
  const double umax = eng_.max_velocity(s);
  const double dx = s.u.grid().dx();
  const double dt = safety * std::min(dx / std::max(1.0, umax), dt_max);
  if (!std::isfinite(dt) || dt <= 0.0)
    throw std::runtime_error("cfl_dt: non-finite time step");
  return dt;
}

void Stepper::integrate(const SimState& initial, const ModelParams& p,
                        const StepperConfig& cfg,
                        const std::function<void(const SimState&)>& observer) const {
  cfg.validate();
  p.validate();

  SimState state = initial;
  for (double target : cfg.sample_times) {
    if (target < state.t - 1e-12) continue;
    while (state.t < target - 1e-12 * std::max(1.0, target)) {
      double dt = cfg.dt_policy == DtPolicy::fixed
                      ? cfg.dt
                      : cfl_dt(state, p, cfg.safety, cfg.dt_max);
      dt = std::min(dt, target - state.t);
      state = step(state, p, dt, cfg.scheme, cfg.linear_only);
    }
    state.t = target;  // land exactly
    if (observer) observer(state);
  }
}

}  // namespace oldroyd
