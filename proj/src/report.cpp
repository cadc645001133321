#include "oldroyd/report.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <json.hpp>

namespace oldroyd {

namespace {

using nlohmann::json;

const char* mode_name(PassMode m) {
  switch (m) {
    case PassMode::two_sided: return "two_sided";
    case PassMode::at_most: return "at_most";
    case PassMode::at_least: return "at_least";
    case PassMode::report: return "report";
  }
  return "?";
}

PassMode mode_from_name(const std::string& s) {
  if (s == "two_sided") return PassMode::two_sided;
  if (s == "at_most") return PassMode::at_most;
  if (s == "at_least") return PassMode::at_least;
  if (s == "report") return PassMode::report;
  throw std::invalid_argument("unknown pass mode: " + s);
}

json fit_to_json_obj(const FitResult& f) {
  return json{{"name", f.name},
              {"exponent", f.exponent},
              {"intercept", f.intercept},
              {"residual", f.residual},
              {"window", {f.window.lo, f.window.hi}},
              {"points", f.points},
              {"target", f.target},
              {"tolerance", f.tolerance},
              {"mode", mode_name(f.mode)},
              {"pass", f.pass},
              {"skipped", f.skipped},
              {"status", f.status}};
}

FitResult fit_from_json_obj(const json& j) {
  FitResult f;
  f.name = j.at("name").get<std::string>();
  f.exponent = j.at("exponent").get<double>();
  f.intercept = j.at("intercept").get<double>();
  f.residual = j.at("residual").get<double>();
  f.window = {j.at("window")[0].get<double>(), j.at("window")[1].get<double>()};
  f.points = j.at("points").get<int>();
  f.target = j.at("target").get<double>();
  f.tolerance = j.at("tolerance").get<double>();
  f.mode = mode_from_name(j.at("mode").get<std::string>());
  f.pass = j.at("pass").get<bool>();
  f.skipped = j.at("skipped").get<bool>();
  f.status = j.at("status").get<std::string>();
  return f;
}

void write_file(const std::filesystem::path& p, const std::string& text,
                std::vector<std::string>& written) {
  std::ofstream out(p);
  if (!out) throw std::runtime_error("cannot write " + p.string());
  out << text;
  written.push_back(p.string());
}

double json_safe(double v) {
  // JSON has no NaN/Inf literal; the CSV keeps the raw value.
  return std::isfinite(v) ? v : 0.0;
}

json report_to_json_obj(const oldroyd::FunctionalReport& r,
                        const oldroyd::MonitorConfig& cfg) {
  json j;
  j["t"] = r.t;
  j["l2"] = r.l2;
  for (std::size_t i = 0; i < cfg.s_list.size(); ++i) {
    j["hs"][std::to_string(cfg.s_list[i])] = r.hs[i];
    j["hdot"][std::to_string(cfg.s_list[i])] = r.hdots[i];
  }
  j["besov_m1"] = json_safe(r.besov_m1);
  j["besov_mhalf"] = json_safe(r.besov_mhalf);
  j["E0"] = r.e0;
  j["D0"] = r.d0;
  j["E_beta"] = r.e_beta;
  j["D_beta"] = r.d_beta;
  j["Etilde"] = r.etilde;
  j["Dtilde"] = r.dtilde;
  j["Ebar0"] = r.ebar0;
  j["Dbar0"] = r.dbar0;
  j["Ebar1"] = r.ebar1;
  j["Dbar1"] = r.dbar1;
  j["s1_mass"] = r.s1_mass;
  j["s0_mass"] = r.s0_mass;
  j["trtau_l2"] = r.trtau;
  j["grad_linf"] = r.gradlinf;
  j["max_u"] = r.max_u;
  j["div_defect_u"] = r.div_defect_u;
  return j;
}

}  // namespace

std::string fit_result_to_json(const FitResult& f) { return fit_to_json_obj(f).dump(2); }

std::string functional_report_to_json(const FunctionalReport& r,
                                      const MonitorConfig& cfg) {
  return report_to_json_obj(r, cfg).dump(2);
}

FitResult fit_result_from_json(const std::string& text) {
  return fit_from_json_obj(json::parse(text));
}

std::string experiment_summary_json(const ExperimentResult& r) {
  json j;
  j["pass"] = r.pass;
  j["fits"] = json::array();
  for (const auto& f : r.fits) j["fits"].push_back(fit_to_json_obj(f));
  j["scalars"] = r.scalars;
  j["warnings"] = r.warnings;
  j["samples"] = r.reports.size();
  return j.dump(2);
}

std::vector<std::string> emit_report(const ExperimentResult& r, const Scenario& scn,
                                     const std::string& dir) {
  namespace fs = std::filesystem;
  std::vector<std::string> written;
  if (dir.empty()) return written;
  fs::create_directories(dir);
  const fs::path base(dir);

  if (!r.reports.empty()) {
    std::string text = FunctionalReport::csv_header(r.monitor_cfg) + "\n";
    for (const auto& row : r.reports) text += row.csv_row() + "\n";
    write_file(base / "series.csv", text, written);

    json rows = json::array();
    for (const auto& row : r.reports)
      rows.push_back(report_to_json_obj(row, r.monitor_cfg));
    write_file(base / "series.json", rows.dump(1), written);
  }
  for (const auto& s : r.series) {
    std::string text = s.x_label + "," + s.name + "\n";
    char buf[64];
    for (const auto& [x, y] : s.points) {
      std::snprintf(buf, sizeof buf, "%.17g,%.17g\n", x, y);
      text += buf;
    }
    write_file(base / (s.name + ".csv"), text, written);
  }
  {
    std::string text =
        "name,exponent,intercept,residual,points,window_lo,window_hi,target,"
        "tolerance,mode,pass,status\n";
    char buf[256];
    for (const auto& f : r.fits) {
      std::snprintf(buf, sizeof buf, "%s,%.17g,%.17g,%.17g,%d,%.17g,%.17g,%.17g,%.17g,%s,%d,",
                    f.name.c_str(), f.exponent, f.intercept, f.residual, f.points,
                    f.window.lo, f.window.hi, f.target, f.tolerance,
                    mode_name(f.mode), f.pass ? 1 : 0);
      text += buf;
      text += "\"" + f.status + "\"\n";
    }
    write_file(base / "fits.csv", text, written);

    json jf = json::array();
    for (const auto& f : r.fits) jf.push_back(fit_to_json_obj(f));
    write_file(base / "fits.json", jf.dump(2), written);
  }
  write_file(base / "summary.json", experiment_summary_json(r), written);
  write_file(base / "scenario.txt", scenario_to_text(scn), written);
  return written;
}

}  // namespace oldroyd
