#include "d2dsim/report.hpp"

#include <array>
#include <sstream>
#include <stdexcept>

#include "d2dsim/format.hpp"

namespace d2dsim {

namespace {

std::vector<std::string> split(const std::string& line, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (;;) {
    const std::size_t pos = line.find(sep, start);
    if (pos == std::string::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

}  // namespace

std::string metrics_to_csv(const std::vector<MetricsRow>& rows) {
  std::string out = kReportHeader;
  out += '\n';
  for (const MetricsRow& row : rows) {
    out += to_string(row.policy);
    out += ',';
    out += format_double(row.p_access);
    out += ',';
    out += format_double(row.mean_rate);
    out += ',';
    out += format_double(row.std_err);
    out += ',';
    out += format_double(row.served_fraction);
    out += ',';
    out += format_double(row.mean_load);
    out += ',';
    out += format_double(row.retained_fraction);
    out += ',';
    out += std::to_string(row.n_realizations);
    out += '\n';
  }
  return out;
}

std::vector<MetricsRow> metrics_from_csv(const std::string& csv_text) {
  std::istringstream in(csv_text);
  std::string line;
  if (!std::getline(in, line)) {
    throw std::invalid_argument("report: empty document");
  }
  if (!line.empty() && line.back() == '\r') {
    line.pop_back();
  }
  if (line != kReportHeader) {
    throw std::invalid_argument("report: unexpected header '" + line + "'");
  }
  std::vector<MetricsRow> rows;
  int line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') {
      line.pop_back();
    }
    if (line.empty()) {
      continue;
    }
    const auto fields = split(line, ',');
    if (fields.size() != 8) {
      throw std::invalid_argument("report: line " + std::to_string(line_no) +
                                  ": expected 8 fields, got " +
                                  std::to_string(fields.size()));
    }
    MetricsRow row;
    const auto policy = policy_from_string(fields[0]);
    if (!policy) {
      throw std::invalid_argument("report: line " + std::to_string(line_no) +
                                  ": unknown policy '" + fields[0] + "'");
    }
    row.policy = *policy;
    try {
      row.p_access = parse_double(fields[1]);
      row.mean_rate = parse_double(fields[2]);
      row.std_err = parse_double(fields[3]);
      row.served_fraction = parse_double(fields[4]);
      row.mean_load = parse_double(fields[5]);
      row.retained_fraction = parse_double(fields[6]);
      row.n_realizations = static_cast<int>(parse_int(fields[7]));
    } catch (const std::exception& e) {
      throw std::invalid_argument("report: line " + std::to_string(line_no) + ": " +
                                  e.what());
    }
    rows.push_back(row);
  }
  return rows;
}

std::vector<PlotSeries> plot_series_from_rows(const std::vector<MetricsRow>& rows) {
  std::vector<PlotSeries> series;
  for (const MetricsRow& row : rows) {
    const std::string name = to_string(row.policy);
    PlotSeries* s = nullptr;
    for (PlotSeries& existing : series) {
      if (existing.policy == name) {
        s = &existing;
        break;
      }
    }
    if (s == nullptr) {
      series.push_back(PlotSeries{name, {}});
      s = &series.back();
    }
    s->points.push_back({row.p_access, row.mean_rate, row.std_err});
  }
  return series;
}

std::string series_to_text(const PlotSeries& series) {
  std::string out = "# policy ";
  out += series.policy;
  out += "\n# p_A mean_rate stderr\n";
  for (const auto& pt : series.points) {
    out += format_double(pt[0]);
    out += ' ';
    out += format_double(pt[1]);
    out += ' ';
    out += format_double(pt[2]);
    out += '\n';
  }
  return out;
}

}  // namespace d2dsim
