// decay-lab: batch front end over the liboldroyd C API.
//
// Subcommands: sim, oracle {decay, trtau, envelope, convcheck, propagate},
// sweep-damping, fit, check-invariants. Every command prints a JSON report
// to stdout; the exit code is 0 only when every pass flag holds.

#include <CLI11.hpp>
#include <cstdio>
#include <memory>
#include <string>
#include <vector>

#include "oldroyd.h"

namespace {

struct ScenarioHandle {
  odb_scenario* p = nullptr;
  ~ScenarioHandle() { odb_scenario_free(p); }
};

struct ReportHandle {
  odb_report* p = nullptr;
  ~ReportHandle() { odb_report_free(p); }
};

int finish(int rc, const ReportHandle& rep) {
  if (rc != ODB_OK) {
    std::fprintf(stderr, "error: %s\n", odb_last_error());
    return 1;
  }
  std::printf("%s\n", odb_report_json(rep.p));
  return odb_report_pass(rep.p) ? 0 : 2;
}

bool build_scenario(ScenarioHandle& scn, const std::string& config,
                    const std::vector<std::string>& sets) {
  scn.p = config.empty() ? odb_scenario_create() : odb_scenario_load(config.c_str());
  if (!scn.p) {
    std::fprintf(stderr, "error: %s\n", odb_last_error());
    return false;
  }
  for (const auto& kv : sets) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) {
      std::fprintf(stderr, "error: --set expects key=value, got '%s'\n", kv.c_str());
      return false;
    }
    if (odb_scenario_set(scn.p, kv.substr(0, eq).c_str(),
                         kv.substr(eq + 1).c_str()) != ODB_OK) {
      std::fprintf(stderr, "error: %s\n", odb_last_error());
      return false;
    }
  }
  return true;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Pseudo-spectral decay laboratory for the 2D inviscid Oldroyd-B "
               "model with fractional stress diffusion"};
  app.require_subcommand(1);

  std::string config, out_dir, csv, column, mode = "report";
  std::vector<std::string> sets;
  bool remainder = false;
  double beta = 0.75, s1 = 0.0, s2 = 1.0, a = 0.0;
  double t_min = 1e2, t_max = 1e4, t = 10.0;
  double tol = 0.01, ratio_tol = 1e-6, tail_tol = 0.10, target = 0.0;
  int samples = 17, instances = 100;
  unsigned long long seed = 1;
  std::string a_grid = "1e-4,3.16e-4,1e-3,3.16e-3,1e-2,3.16e-2,1e-1";

  auto add_scenario_opts = [&](CLI::App* cmd) {
    cmd->add_option("--config", config, "scenario file (key = value)");
    cmd->add_option("--set", sets, "override a scenario key (key=value)")
        ->take_all();
    cmd->add_option("--out", out_dir, "directory for CSV/JSON artifacts");
  };

  auto* sim = app.add_subcommand("sim", "integrate one scenario and fit decay");
  add_scenario_opts(sim);
  sim->add_flag("--remainder", remainder,
                "also compare against the exact linear evolution (a = 0 only)");

  auto* integ = app.add_subcommand(
      "integrability", "accumulate the time integral of ||grad(u,tau)||_inf");
  add_scenario_opts(integ);

  auto* sweep =
      app.add_subcommand("sweep-damping", "vanishing-damping sweep over sweep.a_grid");
  add_scenario_opts(sweep);

  auto* oracle = app.add_subcommand("oracle", "exact linear-system oracle");
  oracle->require_subcommand(1);

  auto* odecay = oracle->add_subcommand("decay", "linear decay integral rate");
  odecay->add_option("--beta", beta)->required();
  odecay->add_option("--s1", s1);
  odecay->add_option("--t-min", t_min);
  odecay->add_option("--t-max", t_max);
  odecay->add_option("--samples", samples);
  odecay->add_option("--tol", tol, "relative slope tolerance");
  odecay->add_option("--out", out_dir);

  auto* otrtau = oracle->add_subcommand("trtau", "tr tau linear decay rate");
  otrtau->add_option("--beta", beta)->required();
  otrtau->add_option("--a", a);
  otrtau->add_option("--t-min", t_min);
  otrtau->add_option("--t-max", t_max);
  otrtau->add_option("--samples", samples);
  otrtau->add_option("--tol", tol);
  otrtau->add_option("--out", out_dir);

  double env_fit_tol = 0.05;
  auto* oenv = oracle->add_subcommand("envelope", "damping-envelope scaling");
  oenv->add_option("--beta", beta)->required();
  oenv->add_option("--a-grid", a_grid, "comma-separated damping values");
  oenv->add_option("--ratio-tol", ratio_tol);
  oenv->add_option("--fit-tol", env_fit_tol);
  oenv->add_option("--out", out_dir);

  auto* oconv = oracle->add_subcommand("convcheck", "time-convolution inequality");
  oconv->add_option("--s1", s1)->required();
  oconv->add_option("--s2", s2)->required();
  oconv->add_option("--t-max", t_max);
  oconv->add_option("--tail-tol", tail_tol);
  oconv->add_option("--out", out_dir);

  auto* oprop =
      oracle->add_subcommand("propagate", "exact linear evolution of initial data");
  add_scenario_opts(oprop);
  oprop->add_option("--t", t, "final time")->required();
  oprop->add_option("--samples", samples);

  auto* fit = app.add_subcommand("fit", "offline power-law regression on a CSV");
  fit->add_option("--csv", csv)->required();
  fit->add_option("--column", column)->required();
  fit->add_option("--t-min", t_min)->required();
  fit->add_option("--t-max", t_max)->required();
  fit->add_option("--target", target);
  fit->add_option("--tol", tol);
  fit->add_option("--mode", mode, "two_sided | at_most | at_least | report");

  auto* inv = app.add_subcommand("check-invariants", "property-test battery");
  inv->add_option("--instances", instances);
  inv->add_option("--seed", seed);

  CLI11_PARSE(app, argc, argv);

  ReportHandle rep;
  const char* od = out_dir.empty() ? nullptr : out_dir.c_str();

  if (sim->parsed() || integ->parsed() || sweep->parsed() || oprop->parsed()) {
    ScenarioHandle scn;
    if (!build_scenario(scn, config, sets)) return 1;
    int rc = ODB_OK;
    if (sim->parsed())
      rc = odb_run_sim(scn.p, remainder ? 1 : 0, od, &rep.p);
    else if (integ->parsed())
      rc = odb_run_integrability(scn.p, od, &rep.p);
    else if (sweep->parsed())
      rc = odb_run_damping_sweep(scn.p, od, &rep.p);
    else
      rc = odb_oracle_propagate(scn.p, t, samples, od, &rep.p);
    return finish(rc, rep);
  }
  if (odecay->parsed())
    return finish(odb_oracle_decay(beta, s1, t_min, t_max, samples, tol, od, &rep.p),
                  rep);
  if (otrtau->parsed())
    return finish(odb_oracle_trtau(beta, a, t_min, t_max, samples, tol, od, &rep.p),
                  rep);
  if (oenv->parsed())
    return finish(odb_oracle_envelope(beta, a_grid.c_str(), ratio_tol,
                                      env_fit_tol, od, &rep.p),
                  rep);
  if (oconv->parsed())
    return finish(odb_oracle_convcheck(s1, s2, t_max, tail_tol, od, &rep.p), rep);
  if (fit->parsed())
    return finish(odb_fit_csv(csv.c_str(), column.c_str(), t_min, t_max, target,
                              tol, mode.c_str(), &rep.p),
                  rep);
  if (inv->parsed())
    return finish(odb_check_invariants(instances, seed, &rep.p), rep);

  return 1;
}
