#include "oldroyd.h"

#include <cstring>
#include <fstream>
#include <json.hpp>
#include <sstream>
#include <string>

#include "oldroyd/experiments.hpp"
#include "oldroyd/report.hpp"
#include "oldroyd/selfcheck.hpp"

struct odb_scenario {
  oldroyd::Scenario s;
};

struct odb_report {
  std::string json;
  bool pass = false;
};

namespace {

thread_local std::string g_last_error = "no error";

int fail(int code, const std::string& msg) {
  g_last_error = msg;
  return code;
}

template <class F>
int wrap(F&& fn) {
  try {
    fn();
    return ODB_OK;
  } catch (const std::invalid_argument& e) {
    return fail(ODB_ERR_INVALID, e.what());
  } catch (const std::ios_base::failure& e) {
    return fail(ODB_ERR_IO, e.what());
  } catch (const std::exception& e) {
    return fail(ODB_ERR_RUNTIME, e.what());
  }
}

odb_report* make_report(const oldroyd::ExperimentResult& r) {
  auto* out = new odb_report;
  out->json = oldroyd::experiment_summary_json(r);
  out->pass = r.pass;
  return out;
}

void emit_if_requested(const oldroyd::ExperimentResult& r,
                       const oldroyd::Scenario& scn, const char* out_dir) {
  if (out_dir && *out_dir) oldroyd::emit_report(r, scn, out_dir);
}

std::vector<double> parse_grid_list(const char* csv) {
  if (!csv) throw std::invalid_argument("a_grid must not be NULL");
  std::vector<double> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ','))
    if (item.find_first_not_of(" \t") != std::string::npos)
      out.push_back(std::stod(item));
  if (out.empty()) throw std::invalid_argument("a_grid is empty");
  return out;
}

}  // namespace

extern "C" {

const char* odb_last_error(void) { return g_last_error.c_str(); }

odb_scenario* odb_scenario_create(void) { return new odb_scenario; }

odb_scenario* odb_scenario_load(const char* path) {
  odb_scenario* s = nullptr;
  const int rc = wrap([&] {
    if (!path) throw std::invalid_argument("path must not be NULL");
    s = new odb_scenario{oldroyd::load_scenario_file(path)};
  });
  return rc == ODB_OK ? s : nullptr;
}

int odb_scenario_set(odb_scenario* s, const char* key, const char* value) {
  return wrap([&] {
    if (!s || !key || !value) throw std::invalid_argument("NULL argument");
    oldroyd::scenario_set(s->s, key, value);
  });
}

int odb_scenario_get(const odb_scenario* s, const char* key, char* buf,
                     size_t bufsize) {
  return wrap([&] {
    if (!s || !key || !buf) throw std::invalid_argument("NULL argument");
    const std::string v = oldroyd::scenario_get(s->s, key);
    if (v.size() + 1 > bufsize)
      throw std::invalid_argument("buffer too small for value");
    std::memcpy(buf, v.c_str(), v.size() + 1);
  });
}

void odb_scenario_free(odb_scenario* s) { delete s; }

int odb_run_sim(const odb_scenario* s, int with_remainder, const char* out_dir,
                odb_report** out) {
  return wrap([&] {
    if (!s || !out) throw std::invalid_argument("NULL argument");
    const auto r = oldroyd::run_decay_experiment(s->s, with_remainder != 0);
    emit_if_requested(r, s->s, out_dir);
    *out = make_report(r);
  });
}

int odb_run_integrability(const odb_scenario* s, const char* out_dir,
                          odb_report** out) {
  return wrap([&] {
    if (!s || !out) throw std::invalid_argument("NULL argument");
    const auto r = oldroyd::run_integrability_check(s->s);
    emit_if_requested(r, s->s, out_dir);
    *out = make_report(r);
  });
}

int odb_run_damping_sweep(const odb_scenario* s, const char* out_dir,
                          odb_report** out) {
  return wrap([&] {
    if (!s || !out) throw std::invalid_argument("NULL argument");
    const auto r = oldroyd::run_damping_sweep(s->s);
    emit_if_requested(r, s->s, out_dir);
    *out = make_report(r);
  });
}

int odb_oracle_decay(double beta, double s1, double t_min, double t_max,
                     int n_samples, double slope_tol, const char* out_dir,
                     odb_report** out) {
  return wrap([&] {
    if (!out) throw std::invalid_argument("NULL argument");
    const auto r = oldroyd::oracle_decay_experiment(beta, s1, t_min, t_max,
                                                    n_samples, slope_tol);
    emit_if_requested(r, oldroyd::Scenario{}, out_dir);
    *out = make_report(r);
  });
}

int odb_oracle_trtau(double beta, double a, double t_min, double t_max,
                     int n_samples, double slope_tol, const char* out_dir,
                     odb_report** out) {
  return wrap([&] {
    if (!out) throw std::invalid_argument("NULL argument");
    const auto r =
        oldroyd::oracle_trtau_experiment(beta, a, t_min, t_max, n_samples, slope_tol);
    emit_if_requested(r, oldroyd::Scenario{}, out_dir);
    *out = make_report(r);
  });
}

int odb_oracle_envelope(double beta, const char* a_grid, double ratio_tol,
                        double fit_tol, const char* out_dir, odb_report** out) {
  return wrap([&] {
    if (!out) throw std::invalid_argument("NULL argument");
    const auto r = oldroyd::oracle_envelope_experiment(beta, parse_grid_list(a_grid),
                                                       ratio_tol, fit_tol);
    emit_if_requested(r, oldroyd::Scenario{}, out_dir);
    *out = make_report(r);
  });
}

int odb_oracle_convcheck(double s1, double s2, double t_max, double tail_tol,
                         const char* out_dir, odb_report** out) {
  return wrap([&] {
    if (!out) throw std::invalid_argument("NULL argument");
    const auto r = oldroyd::oracle_convcheck_experiment(s1, s2, t_max, tail_tol);
    emit_if_requested(r, oldroyd::Scenario{}, out_dir);
    *out = make_report(r);
  });
}

int odb_oracle_propagate(const odb_scenario* s, double t, int n_samples,
                         const char* out_dir, odb_report** out) {
  return wrap([&] {
    if (!s || !out) throw std::invalid_argument("NULL argument");
    const auto r = oldroyd::oracle_propagate_experiment(s->s, t, n_samples);
    emit_if_requested(r, s->s, out_dir);
    *out = make_report(r);
  });
}

int odb_fit_csv(const char* csv_path, const char* column, double t_min,
                double t_max, double target, double tolerance, const char* mode,
                odb_report** out) {
  return wrap([&] {
    if (!csv_path || !column || !mode || !out)
      throw std::invalid_argument("NULL argument");
    std::ifstream in(csv_path);
    if (!in) throw std::runtime_error(std::string("cannot open ") + csv_path);
    std::string header;
    if (!std::getline(in, header))
      throw std::invalid_argument("empty CSV file");
    int col = -1, ncol = 0;
    {
      std::stringstream hs(header);
      std::string name;
      while (std::getline(hs, name, ',')) {
        if (name == column) col = ncol;
        ++ncol;
      }
    }
    if (col <= 0)
      throw std::invalid_argument(std::string("column not found (or is the "
                                              "abscissa): ") +
                                  column);
    std::vector<std::pair<double, double>> series;
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty()) continue;
      std::stringstream ls(line);
      std::string cell;
      double t = 0.0, y = 0.0;
      for (int c = 0; c < ncol && std::getline(ls, cell, ','); ++c) {
        if (c == 0) t = std::stod(cell);
        if (c == col) y = std::stod(cell);
      }
      series.emplace_back(t, y);
    }
    oldroyd::FitResult f =
        oldroyd::fit_power_law(series, {t_min, t_max});
    f.name = column;
    oldroyd::PassMode pm = oldroyd::PassMode::report;
    if (std::string(mode) == "two_sided") pm = oldroyd::PassMode::two_sided;
    else if (std::string(mode) == "at_most") pm = oldroyd::PassMode::at_most;
    else if (std::string(mode) == "at_least") pm = oldroyd::PassMode::at_least;
    else if (std::string(mode) != "report")
      throw std::invalid_argument(std::string("unknown mode: ") + mode);
    f.evaluate(target, tolerance, pm);

    auto* rep = new odb_report;
    rep->json = oldroyd::fit_result_to_json(f);
    rep->pass = f.pass;
    *out = rep;
  });
}

int odb_check_invariants(int instances, unsigned long long seed,
                         odb_report** out) {
  return wrap([&] {
    if (!out) throw std::invalid_argument("NULL argument");
    if (instances <= 0) throw std::invalid_argument("instances must be positive");
    const oldroyd::BatteryResult b = oldroyd::run_property_battery(instances, seed);
    nlohmann::json j;
    j["pass"] = b.pass;
    j["properties"] = nlohmann::json::array();
    for (const auto& o : b.outcomes)
      j["properties"].push_back({{"name", o.name},
                                 {"instances", o.instances},
                                 {"failures", o.failures},
                                 {"worst", o.worst},
                                 {"threshold", o.threshold}});
    auto* rep = new odb_report;
    rep->json = j.dump(2);
    rep->pass = b.pass;
    *out = rep;
  });
}

int odb_report_pass(const odb_report* r) { return r && r->pass ? 1 : 0; }

const char* odb_report_json(const odb_report* r) {
  return r ? r->json.c_str() : "";
}

void odb_report_free(odb_report* r) { delete r; }

}  // extern "C"
