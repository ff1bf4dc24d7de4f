#pragma once

#include <cstdint>
#include <vector>

#include "d2dsim/experiment_config.hpp"
#include "d2dsim/realization.hpp"
#include "d2dsim/scheduling.hpp"

namespace d2dsim {

// Receiver-to-transmitter assignment for one retained set.
struct Association {
  std::vector<std::int32_t> server_of_rx;  // -1 when unserved
  std::vector<std::int32_t> load_of_tx;    // receivers associated per transmitter

  int served_count() const;
};

// Each receiver picks the nearest retained transmitter within r_d2d whose
// cache holds its requested file (lowest index on exact distance ties).
Association associate(const SpatialRealization& real, const RetainedSet& retained,
                      double r_d2d);

// One rate draw for receiver rx: (W / load) * log2(1 + SINR) when the
// realized SINR clears the threshold, else 0; 0 when unserved.
double user_rate(int rx, const Association& assoc, const RetainedSet& retained,
                 const SpatialRealization& real, const ChannelParams& p,
                 RandomStream& rng);

// Zero-truncated Poisson load law: P(N = k | N > 0) for mean mean_receivers.
double load_pmf(double mean_receivers, int k);

// Communication and exclusion radii for one sweep cell.
RangePair resolve_ranges(const ExperimentConfig& config, double p_access);

// Per-realization aggregates (receiver averages within one snapshot).
struct RealizationStats {
  double mean_rate{0.0};         // over all receivers, unserved counted as 0
  double mean_rate_served{0.0};  // over served receivers only
  double served_fraction{0.0};
  double mean_load{0.0};  // over transmitters serving at least one receiver
  double retained_fraction{0.0};
};

// Metrics for one (policy, p_access) cell.
struct MetricsRow {
  Policy policy{Policy::kRandom};
  double p_access{0.0};
  double mean_rate{0.0};
  double std_err{0.0};
  double served_fraction{0.0};
  double mean_load{0.0};
  double retained_fraction{0.0};
  int n_realizations{0};
  double mean_rate_served{0.0};  // reported on stdout, not part of the CSV schema
};

// Samples, schedules and rates one snapshot. Sub-streams are derived from
// (seed, realization_index), so two policies run with the same seed see the
// same snapshot and marks.
RealizationStats evaluate_realization(const ExperimentConfig& config, Policy policy,
                                      double p_access, std::uint64_t seed,
                                      int realization_index);

// Monte Carlo over n_realizations independent snapshots; realizations run in
// parallel and the aggregation is order-independent.
MetricsRow run_experiment(const ExperimentConfig& config, Policy policy,
                          double p_access, int n_realizations, std::uint64_t seed);

// Cross product (policies x pa_grid), each cell with its own derived seed.
std::vector<MetricsRow> sweep(const ExperimentConfig& config,
                              const std::vector<Policy>& policies,
                              const std::vector<double>& pa_grid);

}  // namespace d2dsim
