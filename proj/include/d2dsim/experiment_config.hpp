#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "d2dsim/channel.hpp"
#include "d2dsim/geometry.hpp"
#include "d2dsim/scheduling.hpp"

namespace d2dsim {

// How the communication radius is chosen for a sweep cell.
enum class RangeMode { kNoiseLimited, kInterferenceLimited, kFixed };

std::string to_string(RangeMode mode);
std::string to_string(ScoringMode mode);
std::string to_string(BoundaryMode mode);

// Raised by configuration parsing/validation; the message names the field.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Full experiment description. Defaults reproduce the reference setup:
// [-5,5]^2 window, lambda_t = lambda_r = 3, 100-file catalog with 10-file
// caches, alpha = 4, T = 0.01, sigma^2 = 10, mu = 1, W = 1 Hz, skewed
// placement (Zipf 2.5) and requests (Zipf 5).
struct ExperimentConfig {
  Window window{};
  double lambda_t{3.0};
  double lambda_r{3.0};
  int catalog_size{100};
  int cache_size{10};
  double gamma_r{5.0};
  double gamma_c{2.5};
  ChannelParams channel{};
  RangeMode r_d2d_mode{RangeMode::kNoiseLimited};
  double r_d2d_value{0.0};  // used when r_d2d_mode == kFixed
  ScoringMode scoring_mode{ScoringMode::kExact};
  std::vector<Policy> policies{Policy::kRandom, Policy::kMatern,
                               Policy::kBiddingMatern, Policy::kBidOrdering};
  std::vector<double> pa_grid{0.1, 0.2, 0.3, 0.4, 0.5, 0.6, 0.7, 0.8, 0.9, 1.0};
  int n_realizations{100};
  std::uint64_t seed{1};

  void validate() const;  // throws ConfigError naming the offending field
  bool operator==(const ExperimentConfig&) const = default;
};

}  // namespace d2dsim
