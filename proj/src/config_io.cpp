#include "d2dsim/config_io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include "d2dsim/format.hpp"

namespace d2dsim {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) {
    return {};
  }
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

[[noreturn]] void fail_line(int line_no, const std::string& what) {
  throw ConfigError("config: line " + std::to_string(line_no) + ": " + what);
}

double as_double(const std::string& key, const std::string& value) {
  try {
    return parse_double(value);
  } catch (const std::exception&) {
    throw ConfigError(key + ": expected a number, got '" + value + "'");
  }
}

long long as_int(const std::string& key, const std::string& value) {
  try {
    return parse_int(value);
  } catch (const std::exception&) {
    throw ConfigError(key + ": expected an integer, got '" + value + "'");
  }
}

}  // namespace

std::vector<double> parse_pa_grid(const std::string& text) {
  const auto first = text.find(':');
  const auto second = first == std::string::npos ? std::string::npos
                                                 : text.find(':', first + 1);
  if (first == std::string::npos || second == std::string::npos) {
    throw ConfigError("pa_grid: expected start:stop:step, got '" + text + "'");
  }
  double start = 0.0;
  double stop = 0.0;
  double step = 0.0;
  try {
    start = parse_double(trim(text.substr(0, first)));
    stop = parse_double(trim(text.substr(first + 1, second - first - 1)));
    step = parse_double(trim(text.substr(second + 1)));
  } catch (const std::exception&) {
    throw ConfigError("pa_grid: expected start:stop:step numbers, got '" + text + "'");
  }
  if (!(step > 0.0)) {
    throw ConfigError("pa_grid: step must be > 0");
  }
  if (stop < start) {
    throw ConfigError("pa_grid: stop must be >= start");
  }
  std::vector<double> grid;
  // Half-step slack keeps the endpoint when start + k*step lands on stop up
  // to round-off; snapping to 9 decimals keeps decimal grids exact.
  for (int k = 0;; ++k) {
    const double v = std::round((start + k * step) * 1e9) / 1e9;
    if (v > stop + 0.5 * step) {
      break;
    }
    grid.push_back(std::min(v, stop));
  }
  return grid;
}

std::vector<Policy> parse_policy_list(const std::string& text) {
  std::vector<Policy> out;
  std::size_t start = 0;
  while (start <= text.size()) {
    const auto pos = text.find(',', start);
    const std::string name =
        trim(pos == std::string::npos ? text.substr(start) : text.substr(start, pos - start));
    if (!name.empty()) {
      const auto policy = policy_from_string(name);
      if (!policy) {
        throw ConfigError("policies: unknown policy '" + name + "'");
      }
      out.push_back(*policy);
    }
    if (pos == std::string::npos) {
      break;
    }
    start = pos + 1;
  }
  if (out.empty()) {
    throw ConfigError("policies: list is empty");
  }
  return out;
}

ExperimentConfig parse_config(const std::string& text) {
  ExperimentConfig config;
  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto comment = raw.find('#');
    const std::string line = trim(comment == std::string::npos ? raw : raw.substr(0, comment));
    if (line.empty()) {
      continue;
    }
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      fail_line(line_no, "expected 'key = value', got '" + line + "'");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) {
      fail_line(line_no, "empty key");
    }
    if (value.empty()) {
      fail_line(line_no, "empty value for key '" + key + "'");
    }

    if (key == "window_x_min") {
      config.window.x_min = as_double(key, value);
    } else if (key == "window_x_max") {
      config.window.x_max = as_double(key, value);
    } else if (key == "window_y_min") {
      config.window.y_min = as_double(key, value);
    } else if (key == "window_y_max") {
      config.window.y_max = as_double(key, value);
    } else if (key == "boundary_mode") {
      if (value == "plain") {
        config.window.boundary = BoundaryMode::kPlain;
      } else if (value == "torus") {
        config.window.boundary = BoundaryMode::kTorus;
      } else {
        throw ConfigError("boundary_mode: expected plain|torus, got '" + value + "'");
      }
    } else if (key == "lambda_t") {
      config.lambda_t = as_double(key, value);
    } else if (key == "lambda_r") {
      config.lambda_r = as_double(key, value);
    } else if (key == "catalog_size") {
      config.catalog_size = static_cast<int>(as_int(key, value));
    } else if (key == "cache_size") {
      config.cache_size = static_cast<int>(as_int(key, value));
    } else if (key == "gamma_r") {
      config.gamma_r = as_double(key, value);
    } else if (key == "gamma_c") {
      config.gamma_c = as_double(key, value);
    } else if (key == "alpha") {
      config.channel.alpha = as_double(key, value);
    } else if (key == "mu") {
      config.channel.mu = as_double(key, value);
    } else if (key == "noise_power") {
      config.channel.noise_power = as_double(key, value);
    } else if (key == "sinr_threshold") {
      config.channel.sinr_threshold = as_double(key, value);
    } else if (key == "bandwidth") {
      config.channel.bandwidth = as_double(key, value);
    } else if (key == "r_d2d_mode") {
      if (value == "noise_limited") {
        config.r_d2d_mode = RangeMode::kNoiseLimited;
      } else if (value == "interference_limited") {
        config.r_d2d_mode = RangeMode::kInterferenceLimited;
      } else if (value == "fixed") {
        config.r_d2d_mode = RangeMode::kFixed;
      } else {
        throw ConfigError(
            "r_d2d_mode: expected noise_limited|interference_limited|fixed, got '" +
            value + "'");
      }
    } else if (key == "r_d2d_value") {
      config.r_d2d_value = as_double(key, value);
    } else if (key == "scoring_mode") {
      if (value == "exact") {
        config.scoring_mode = ScoringMode::kExact;
      } else if (value == "linearized") {
        config.scoring_mode = ScoringMode::kLinearized;
      } else {
        throw ConfigError("scoring_mode: expected exact|linearized, got '" + value + "'");
      }
    } else if (key == "policies") {
      config.policies = parse_policy_list(value);
    } else if (key == "pa_grid") {
      config.pa_grid = parse_pa_grid(value);
    } else if (key == "pa_list") {
      std::vector<double> grid;
      std::size_t start = 0;
      while (start <= value.size()) {
        const auto pos = value.find(',', start);
        const std::string item = trim(
            pos == std::string::npos ? value.substr(start) : value.substr(start, pos - start));
        if (!item.empty()) {
          grid.push_back(as_double(key, item));
        }
        if (pos == std::string::npos) {
          break;
        }
        start = pos + 1;
      }
      if (grid.empty()) {
        throw ConfigError("pa_list: list is empty");
      }
      config.pa_grid = grid;
    } else if (key == "n_realizations") {
      config.n_realizations = static_cast<int>(as_int(key, value));
    } else if (key == "seed") {
      config.seed = static_cast<std::uint64_t>(as_int(key, value));
    } else {
      fail_line(line_no, "unknown key '" + key + "'");
    }
  }
  return config;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("config: cannot open '" + path + "'");
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  ExperimentConfig config = parse_config(buf.str());
  config.validate();
  return config;
}

std::string config_to_document(const ExperimentConfig& config) {
  std::string out;
  auto kv = [&out](const std::string& key, const std::string& value) {
    out += key;
    out += " = ";
    out += value;
    out += '\n';
  };
  kv("window_x_min", format_double(config.window.x_min));
  kv("window_x_max", format_double(config.window.x_max));
  kv("window_y_min", format_double(config.window.y_min));
  kv("window_y_max", format_double(config.window.y_max));
  kv("boundary_mode", to_string(config.window.boundary));
  kv("lambda_t", format_double(config.lambda_t));
  kv("lambda_r", format_double(config.lambda_r));
  kv("catalog_size", std::to_string(config.catalog_size));
  kv("cache_size", std::to_string(config.cache_size));
  kv("gamma_r", format_double(config.gamma_r));
  kv("gamma_c", format_double(config.gamma_c));
  kv("alpha", format_double(config.channel.alpha));
  kv("mu", format_double(config.channel.mu));
  kv("noise_power", format_double(config.channel.noise_power));
  kv("sinr_threshold", format_double(config.channel.sinr_threshold));
  kv("bandwidth", format_double(config.channel.bandwidth));
  kv("r_d2d_mode", to_string(config.r_d2d_mode));
  kv("r_d2d_value", format_double(config.r_d2d_value));
  kv("scoring_mode", to_string(config.scoring_mode));
  std::string policies;
  for (std::size_t i = 0; i < config.policies.size(); ++i) {
    if (i > 0) {
      policies += ',';
    }
    policies += to_string(config.policies[i]);
  }
  kv("policies", policies);
  std::string grid;
  for (std::size_t i = 0; i < config.pa_grid.size(); ++i) {
    if (i > 0) {
      grid += ',';
    }
    grid += format_double(config.pa_grid[i]);
  }
  kv("pa_list", grid);
  kv("n_realizations", std::to_string(config.n_realizations));
  kv("seed", std::to_string(config.seed));
  return out;
}

}  // namespace d2dsim
