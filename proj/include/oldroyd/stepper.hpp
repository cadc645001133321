#pragma once

#include <functional>
#include <vector>

#include "oldroyd/model.hpp"

namespace oldroyd {

enum class Scheme { ifrk2, ifrk4 };
enum class DtPolicy { fixed, cfl };

struct StepperConfig {
  Scheme scheme = Scheme::ifrk4;
  DtPolicy dt_policy = DtPolicy::fixed;
  double dt = 0.01;     // fixed-policy step
  double dt_max = 0.5;  // cap for the CFL policy
  double safety = 0.5;
  double t_end = 1.0;
  std::vector<double> sample_times;  // strictly increasing, within [t0, t_end]
  bool linear_only = false;

  void validate() const;
};

/// Advances a SimState with the stiff diagonal -(a + |xi|^{2 beta}) tau
/// handled exactly by integrating factor and everything else by an explicit
/// Runge-Kutta stage loop (Lawson schemes of order 2 and 4).
///
/// Each step ends by re-projecting u and re-symmetrizing both fields; the
/// pre-enforcement drifts are recorded and can be polled after a step. One
/// Stepper drives one trajectory; concurrent trajectories need their own
/// Stepper + ModelEngine.
class Stepper {
 public:
  explicit Stepper(ModelEngine& engine) : eng_(engine) {}

  SimState step(const SimState& s, const ModelParams& p, double dt,
                Scheme scheme, bool linear_only = false) const;

  /// dt = safety * min(dx / max(1, max|u|), dt_max).
  double cfl_dt(const SimState& s, const ModelParams& p, double safety,
                double dt_max) const;

  /// Marches from `initial` to cfg.t_end, shrinking steps to land exactly on
  /// every sample time, and hands each landed state to the observer.
  /// A non-finite value aborts with an exception naming the last good time;
  /// all samples before it have already been observed.
  void integrate(const SimState& initial, const ModelParams& p,
                 const StepperConfig& cfg,
                 const std::function<void(const SimState&)>& observer) const;

  double last_divergence_drift() const { return last_div_drift_; }
  double last_reality_drift() const { return last_reality_drift_; }

 private:
  SimState combine_and_enforce(SimState&& y, double t_new) const;
  void refresh_cache(const ModelParams& p, double dt) const;
  static void scale_tau(SpectralField& tau, const std::vector<double>& e);

  ModelEngine& eng_;
  mutable double last_div_drift_ = 0.0;
  mutable double last_reality_drift_ = 0.0;

  // Integrating-factor tables, memoized on (a, beta, dt).
  mutable double cache_a_ = -1.0, cache_beta_ = -1.0, cache_dt_ = -1.0;
  mutable std::vector<double> lambda_, ehalf_, efull_;
};

}  // namespace oldroyd
