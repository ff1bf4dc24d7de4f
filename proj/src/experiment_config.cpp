#include "d2dsim/experiment_config.hpp"

namespace d2dsim {

std::string to_string(RangeMode mode) {
  switch (mode) {
    case RangeMode::kNoiseLimited:
      return "noise_limited";
    case RangeMode::kInterferenceLimited:
      return "interference_limited";
    case RangeMode::kFixed:
      return "fixed";
  }
  return "unknown";
}

std::string to_string(ScoringMode mode) {
  return mode == ScoringMode::kExact ? "exact" : "linearized";
}

std::string to_string(BoundaryMode mode) {
  return mode == BoundaryMode::kPlain ? "plain" : "torus";
}

void ExperimentConfig::validate() const {
  try {
    window.validate();
  } catch (const std::exception& e) {
    throw ConfigError(std::string("window_*: ") + e.what());
  }
  if (lambda_t < 0.0) {
    throw ConfigError("lambda_t must be >= 0");
  }
  if (lambda_r < 0.0) {
    throw ConfigError("lambda_r must be >= 0");
  }
  if (catalog_size < 1) {
    throw ConfigError("catalog_size must be >= 1");
  }
  if (cache_size < 0) {
    throw ConfigError("cache_size must be >= 0");
  }
  if (cache_size >= catalog_size) {
    throw ConfigError("cache_size must be < catalog_size");
  }
  if (gamma_r < 0.0) {
    throw ConfigError("gamma_r must be >= 0");
  }
  if (gamma_c < 0.0) {
    throw ConfigError("gamma_c must be >= 0");
  }
  try {
    channel.validate();
  } catch (const std::exception& e) {
    throw ConfigError(e.what());
  }
  if (r_d2d_mode == RangeMode::kFixed && !(r_d2d_value > 0.0)) {
    throw ConfigError("r_d2d_value must be > 0 when r_d2d_mode = fixed");
  }
  if (r_d2d_mode == RangeMode::kNoiseLimited && !(channel.noise_power > 0.0)) {
    throw ConfigError("noise_power must be > 0 when r_d2d_mode = noise_limited");
  }
  if (policies.empty()) {
    throw ConfigError("policies must not be empty");
  }
  if (pa_grid.empty()) {
    throw ConfigError("pa_grid must not be empty");
  }
  for (double pa : pa_grid) {
    if (pa < 0.0 || pa > 1.0) {
      throw ConfigError("pa_grid values must be in [0, 1]");
    }
  }
  if (n_realizations < 1) {
    throw ConfigError("n_realizations must be >= 1");
  }
}

}  // namespace d2dsim
