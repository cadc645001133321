#include "oldroyd/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <functional>
#include <map>
#include <sstream>
#include <stdexcept>

namespace oldroyd {

namespace {

std::vector<double> parse_list(const std::string& v) {
  std::vector<double> out;
  std::stringstream ss(v);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.find_first_not_of(" \t") == std::string::npos) continue;
    out.push_back(std::stod(item));
  }
  if (out.empty()) throw std::invalid_argument("empty list value");
  return out;
}

std::string format_list(const std::vector<double>& v) {
  std::ostringstream os;
  os.precision(17);
  for (std::size_t i = 0; i < v.size(); ++i) {
    if (i) os << ',';
    os << v[i];
  }
  return os.str();
}

bool parse_bool(const std::string& v) {
  if (v == "1" || v == "true" || v == "yes") return true;
  if (v == "0" || v == "false" || v == "no") return false;
  throw std::invalid_argument("expected boolean, got: " + v);
}

Scheme scheme_from_string(const std::string& v) {
  if (v == "ifrk2") return Scheme::ifrk2;
  if (v == "ifrk4") return Scheme::ifrk4;
  throw std::invalid_argument("unknown scheme: " + v);
}

struct KeyHandler {
  std::function<void(Scenario&, const std::string&)> set;
  std::function<std::string(const Scenario&)> get;
};

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

const std::map<std::string, KeyHandler>& handlers() {
  static const std::map<std::string, KeyHandler> h = {
      {"grid.n",
       {[](Scenario& s, const std::string& v) {
          s.params.grid = make_grid(std::stoi(v), s.params.grid.l > 0 ? s.params.grid.l : 1.0);
        },
        [](const Scenario& s) { return std::to_string(s.params.grid.n); }}},
      {"grid.l",
       {[](Scenario& s, const std::string& v) {
          s.params.grid = make_grid(s.params.grid.n >= 4 ? s.params.grid.n : 4, std::stod(v));
        },
        [](const Scenario& s) { return fmt(s.params.grid.l); }}},
      {"model.a",
       {[](Scenario& s, const std::string& v) { s.params.a = std::stod(v); },
        [](const Scenario& s) { return fmt(s.params.a); }}},
      {"model.beta",
       {[](Scenario& s, const std::string& v) { s.params.beta = std::stod(v); },
        [](const Scenario& s) { return fmt(s.params.beta); }}},
      {"model.b",
       {[](Scenario& s, const std::string& v) { s.params.b = std::stod(v); },
        [](const Scenario& s) { return fmt(s.params.b); }}},
      {"init.kind",
       {[](Scenario& s, const std::string& v) { s.init.kind = init_kind_from_string(v); },
        [](const Scenario& s) { return to_string(s.init.kind); }}},
      {"init.epsilon",
       {[](Scenario& s, const std::string& v) { s.init.epsilon = std::stod(v); },
        [](const Scenario& s) { return fmt(s.init.epsilon); }}},
      {"init.seed",
       {[](Scenario& s, const std::string& v) { s.init.seed = std::stoull(v); },
        [](const Scenario& s) { return std::to_string(s.init.seed); }}},
      {"stepper.scheme",
       {[](Scenario& s, const std::string& v) { s.stepper.scheme = scheme_from_string(v); },
        [](const Scenario& s) {
          return s.stepper.scheme == Scheme::ifrk2 ? "ifrk2" : "ifrk4";
        }}},
      {"stepper.dt_policy",
       {[](Scenario& s, const std::string& v) {
          if (v == "fixed")
            s.stepper.dt_policy = DtPolicy::fixed;
          else if (v == "cfl")
            s.stepper.dt_policy = DtPolicy::cfl;
          else
            throw std::invalid_argument("unknown dt policy: " + v);
        },
        [](const Scenario& s) {
          return s.stepper.dt_policy == DtPolicy::fixed ? "fixed" : "cfl";
        }}},
      {"stepper.dt",
       {[](Scenario& s, const std::string& v) { s.stepper.dt = std::stod(v); },
        [](const Scenario& s) { return fmt(s.stepper.dt); }}},
      {"stepper.dt_max",
       {[](Scenario& s, const std::string& v) { s.stepper.dt_max = std::stod(v); },
        [](const Scenario& s) { return fmt(s.stepper.dt_max); }}},
      {"stepper.safety",
       {[](Scenario& s, const std::string& v) { s.stepper.safety = std::stod(v); },
        [](const Scenario& s) { return fmt(s.stepper.safety); }}},
      {"stepper.t_end",
       {[](Scenario& s, const std::string& v) { s.stepper.t_end = std::stod(v); },
        [](const Scenario& s) { return fmt(s.stepper.t_end); }}},
      {"stepper.linear_only",
       {[](Scenario& s, const std::string& v) { s.stepper.linear_only = parse_bool(v); },
        [](const Scenario& s) { return s.stepper.linear_only ? "1" : "0"; }}},
      {"output.sample_dt",
       {[](Scenario& s, const std::string& v) { s.sample_dt = std::stod(v); },
        [](const Scenario& s) { return fmt(s.sample_dt); }}},
      {"output.dir",
       {[](Scenario& s, const std::string& v) { s.out_dir = v; },
        [](const Scenario& s) { return s.out_dir; }}},
      {"monitor.k",
       {[](Scenario& s, const std::string& v) { s.monitors.k = std::stod(v); },
        [](const Scenario& s) { return fmt(s.monitors.k); }}},
      {"monitor.s",
       {[](Scenario& s, const std::string& v) {
          s.monitors.s = std::stod(v);
          s.monitor_s_explicit = true;
        },
        [](const Scenario& s) { return fmt(s.monitors.s); }}},
      {"monitor.c2",
       {[](Scenario& s, const std::string& v) { s.monitors.c2 = std::stod(v); },
        [](const Scenario& s) { return fmt(s.monitors.c2); }}},
      {"monitor.s_list",
       {[](Scenario& s, const std::string& v) { s.monitors.s_list = parse_list(v); },
        [](const Scenario& s) { return format_list(s.monitors.s_list); }}},
      {"monitor.grad_linf",
       {[](Scenario& s, const std::string& v) {
          s.monitors.with_grad_linf = parse_bool(v);
        },
        [](const Scenario& s) { return s.monitors.with_grad_linf ? "1" : "0"; }}},
      {"fit.t_min",
       {[](Scenario& s, const std::string& v) { s.fit_t_min = std::stod(v); },
        [](const Scenario& s) { return fmt(s.fit_t_min); }}},
      {"fit.t_max",
       {[](Scenario& s, const std::string& v) { s.fit_t_max = std::stod(v); },
        [](const Scenario& s) { return fmt(s.fit_t_max); }}},
      {"fit.tolerance",
       {[](Scenario& s, const std::string& v) { s.fit_tolerance = std::stod(v); },
        [](const Scenario& s) { return fmt(s.fit_tolerance); }}},
      {"fit.s1_list",
       {[](Scenario& s, const std::string& v) { s.fit_s1_list = parse_list(v); },
        [](const Scenario& s) { return format_list(s.fit_s1_list); }}},
      {"sweep.a_grid",
       {[](Scenario& s, const std::string& v) { s.sweep_a_grid = parse_list(v); },
        [](const Scenario& s) { return format_list(s.sweep_a_grid); }}},
      {"sweep.alphas",
       {[](Scenario& s, const std::string& v) { s.sweep_alphas = parse_list(v); },
        [](const Scenario& s) { return format_list(s.sweep_alphas); }}},
      {"sweep.linear_only",
       {[](Scenario& s, const std::string& v) { s.sweep_linear_only = parse_bool(v); },
        [](const Scenario& s) { return s.sweep_linear_only ? "1" : "0"; }}},
      {"sweep.exp_tolerance",
       {[](Scenario& s, const std::string& v) { s.sweep_exp_tolerance = std::stod(v); },
        [](const Scenario& s) { return fmt(s.sweep_exp_tolerance); }}},
      {"remainder.fraction",
       {[](Scenario& s, const std::string& v) { s.remainder_fraction = std::stod(v); },
        [](const Scenario& s) { return fmt(s.remainder_fraction); }}},
      {"smallness.delta",
       {[](Scenario& s, const std::string& v) { s.smallness_delta = std::stod(v); },
        [](const Scenario& s) { return fmt(s.smallness_delta); }}},
  };
  return h;
}

}  // namespace

void scenario_set(Scenario& s, const std::string& key, const std::string& value) {
  auto it = handlers().find(key);
  if (it == handlers().end())
    throw std::invalid_argument("unknown scenario key: " + key);
  it->second.set(s, value);
}

std::string scenario_get(const Scenario& s, const std::string& key) {
  auto it = handlers().find(key);
  if (it == handlers().end())
    throw std::invalid_argument("unknown scenario key: " + key);
  return it->second.get(s);
}

std::vector<std::string> scenario_keys() {
  std::vector<std::string> out;
  for (const auto& [k, _] : handlers()) out.push_back(k);
  return out;
}

void Scenario::finalize() {
  params.validate();
  if (!monitor_s_explicit) monitors.s = 1.0 + params.beta + 0.1;

  // Every fitted homogeneous order must be a monitored column.
  for (double s1 : fit_s1_list) {
    bool found = false;
    for (double s : monitors.s_list)
      if (s == s1) found = true;
    if (!found) monitors.s_list.push_back(s1);
  }

  stepper.sample_times.clear();
  if (!(sample_dt > 0.0)) throw std::invalid_argument("output.sample_dt must be > 0");
  for (double t = 0.0; t < stepper.t_end + 0.5 * sample_dt; t += sample_dt)
    stepper.sample_times.push_back(std::min(t, stepper.t_end));
  if (stepper.sample_times.empty() || stepper.sample_times.back() < stepper.t_end)
    stepper.sample_times.push_back(stepper.t_end);
  // Deduplicate the possible t_end collision from the loop above.
  stepper.sample_times.erase(
      std::unique(stepper.sample_times.begin(), stepper.sample_times.end()),
      stepper.sample_times.end());
  stepper.validate();
}

double Scenario::t_box() const {
  return std::pow(params.grid.l / (4.0 * kPi), 2.0 * params.beta);
}

Scenario parse_scenario_text(const std::string& text) {
  Scenario s;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      if (line.find_first_not_of(" \t\r") != std::string::npos)
        throw std::invalid_argument("config line " + std::to_string(lineno) +
                                    ": expected key = value");
      continue;
    }
    auto trim = [](std::string v) {
      const auto b = v.find_first_not_of(" \t\r");
      if (b == std::string::npos) return std::string();
      const auto e = v.find_last_not_of(" \t\r");
      return v.substr(b, e - b + 1);
    };
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty() || value.empty())
      throw std::invalid_argument("config line " + std::to_string(lineno) +
                                  ": empty key or value");
    scenario_set(s, key, value);
  }
  return s;
}

Scenario load_scenario_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open scenario file: " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_scenario_text(buf.str());
}

std::string scenario_to_text(const Scenario& s) {
  std::ostringstream os;
  for (const auto& key : scenario_keys()) {
    const std::string v = scenario_get(s, key);
    if (!v.empty()) os << key << " = " << v << "\n";
  }
  return os.str();
}

}  // namespace oldroyd
