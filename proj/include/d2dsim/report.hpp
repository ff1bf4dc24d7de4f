#pragma once

#include <array>
#include <string>
#include <vector>

#include "d2dsim/evaluation.hpp"

namespace d2dsim {

inline constexpr const char* kReportHeader =
    "policy,p_A,mean_rate,stderr,served_fraction,mean_load,retained_fraction,"
    "n_realizations";

// CSV with the fixed header above; one row per (policy, p_A) cell. All
// numbers are formatted locale-independently.
std::string metrics_to_csv(const std::vector<MetricsRow>& rows);

// Parses a report produced by metrics_to_csv; throws std::invalid_argument
// on a malformed document (wrong header, bad row shape, bad numbers).
std::vector<MetricsRow> metrics_from_csv(const std::string& csv_text);

// One plottable series per policy: rows of (p_A, mean_rate, stderr).
struct PlotSeries {
  std::string policy;
  std::vector<std::array<double, 3>> points;
};

std::vector<PlotSeries> plot_series_from_rows(const std::vector<MetricsRow>& rows);

// Whitespace-separated columns: p_A mean_rate stderr.
std::string series_to_text(const PlotSeries& series);

}  // namespace d2dsim
