#pragma once

#include <string>
#include <vector>

#include "oldroyd/experiments.hpp"

namespace oldroyd {

std::string fit_result_to_json(const FitResult& f);
FitResult fit_result_from_json(const std::string& text);

/// One sample row as a JSON object (same fields as the CSV columns).
std::string functional_report_to_json(const FunctionalReport& r,
                                      const MonitorConfig& cfg);

/// Whole-result summary (pass flag, fits, scalars, warnings) as JSON text.
std::string experiment_summary_json(const ExperimentResult& r);

/// Writes series.csv (monitor rows), one two-column CSV per extra series,
/// fits.csv, fits.json, summary.json and a scenario echo under dir
/// (created if needed). Returns the paths written.
std::vector<std::string> emit_report(const ExperimentResult& r, const Scenario& scn,
                                     const std::string& dir);

}  // namespace oldroyd
