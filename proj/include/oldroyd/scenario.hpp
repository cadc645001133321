#pragma once

#include <string>
#include <vector>

#include "oldroyd/functionals.hpp"
#include "oldroyd/initial_data.hpp"
#include "oldroyd/stepper.hpp"

namespace oldroyd {

/// Everything one batch run needs, settable through a flat key = value
/// config file (or repeated --set key=value flags). The exact key list is
/// documented in the README and by scenario_keys().
struct Scenario {
  ModelParams params{0.0, 0.75, 0.0, Grid{128, 16.0 * kPi}};
  InitSpec init;
  StepperConfig stepper;
  MonitorConfig monitors;

  double sample_dt = 0.5;

  // Fit controls for decay experiments. fit_t_max <= 0 means "up to the
  // finite-box horizon T_box".
  double fit_t_min = 10.0;
  double fit_t_max = -1.0;
  double fit_tolerance = 0.15;
  std::vector<double> fit_s1_list = {0.0};

  // Damping-sweep defaults.
  std::vector<double> sweep_a_grid = {1e-3, 3e-3, 1e-2, 3e-2, 1e-1};
  std::vector<double> sweep_alphas = {0.0, 0.5, 1.0};
  bool sweep_linear_only = false;
  double sweep_exp_tolerance = 0.10;

  double remainder_fraction = 0.5;  // remainder/linear gate of the lower-bound run
  double smallness_delta = 1e-2;

  std::string out_dir;

  /// monitor.s left unset (<= 0) resolves to 1 + beta + 0.1.
  bool monitor_s_explicit = false;

  /// Fills derived defaults (monitor s, sample times, merged s-lists) and
  /// validates; call once after the last set().
  void finalize();

  /// Finite-box horizon T_box = (L / (4 pi))^{2 beta}.
  double t_box() const;
};

void scenario_set(Scenario& s, const std::string& key, const std::string& value);
std::string scenario_get(const Scenario& s, const std::string& key);
std::vector<std::string> scenario_keys();

/// Parses a flat "key = value" file ('#' comments, blank lines ignored).
Scenario load_scenario_file(const std::string& path);
Scenario parse_scenario_text(const std::string& text);
std::string scenario_to_text(const Scenario& s);

}  // namespace oldroyd
