#include "d2dsim/evaluation.hpp"

#include <atomic>
#include <cmath>
#include <exception>
#include <mutex>
#include <stdexcept>
#include <thread>

#include "d2dsim/bidding.hpp"

namespace d2dsim {

namespace {

// Sub-stream labels under one (seed, realization) pair.
enum : std::uint64_t {
  kRealizationStream = 1,
  kMarkStream = 2,
  kCoinStream = 3,
  kFadeStream = 4,
};

}  // namespace

int Association::served_count() const {
  int c = 0;
  for (std::int32_t s : server_of_rx) {
    c += s >= 0 ? 1 : 0;
  }
  return c;
}

Association associate(const SpatialRealization& real, const RetainedSet& retained,
                      double r_d2d) {
  if (!(r_d2d > 0.0)) {
    throw std::invalid_argument("associate: r_d2d must be > 0");
  }
  Association assoc;
  assoc.server_of_rx.assign(static_cast<std::size_t>(real.n_rx()), -1);
  assoc.load_of_tx.assign(static_cast<std::size_t>(real.n_tx()), 0);
  if (real.n_tx() == 0 || real.n_rx() == 0) {
    return assoc;
  }
  const NeighborIndex tx_index(real.transmitters, real.window, r_d2d);
  for (int u = 0; u < real.n_rx(); ++u) {
    const FileId wanted = real.requests[static_cast<std::size_t>(u)];
    int best = -1;
    double best_dist = 0.0;
    for (int x : tx_index.ball(real.receivers[u], r_d2d)) {
      if (!retained.on[static_cast<std::size_t>(x)] ||
          !real.caches[static_cast<std::size_t>(x)].contains(wanted)) {
        continue;
      }
      const double d = distance(real.receivers[u], real.transmitters[x], real.window);
      if (best < 0 || d < best_dist) {
        best = x;
        best_dist = d;
      }
    }
    assoc.server_of_rx[static_cast<std::size_t>(u)] = best;
    if (best >= 0) {
      assoc.load_of_tx[static_cast<std::size_t>(best)] += 1;
    }
  }
  return assoc;
}

double user_rate(int rx, const Association& assoc, const RetainedSet& retained,
                 const SpatialRealization& real, const ChannelParams& p,
                 RandomStream& rng) {
  const std::int32_t server = assoc.server_of_rx[static_cast<std::size_t>(rx)];
  if (server < 0) {
    return 0.0;
  }
  const double sinr = realized_sinr(real.receivers[rx], server, retained.on,
                                    real.transmitters, real.window, p, rng);
  if (sinr < p.sinr_threshold) {
    return 0.0;
  }
  const double load = assoc.load_of_tx[static_cast<std::size_t>(server)];
  return p.bandwidth / load * std::log2(1.0 + sinr);
}

double load_pmf(double mean_receivers, int k) {
  if (!(mean_receivers > 0.0)) {
    throw std::invalid_argument("load_pmf: mean_receivers must be > 0");
  }
  if (k < 1) {
    throw std::invalid_argument("load_pmf: k must be >= 1 (zero-truncated)");
  }
  const double log_poisson = k * std::log(mean_receivers) - mean_receivers -
                             std::lgamma(static_cast<double>(k) + 1.0);
  return std::exp(log_poisson) / (1.0 - std::exp(-mean_receivers));
}

RangePair resolve_ranges(const ExperimentConfig& config, double p_access) {
  RangePair ranges;
  ranges.d_exclusion = p_access > 0.0
                           ? exclusion_radius_from_map(p_access, config.lambda_t)
                           : 0.0;
  switch (config.r_d2d_mode) {
    case RangeMode::kNoiseLimited:
      ranges.r_d2d = comm_range_noise_limited(config.channel);
      break;
    case RangeMode::kInterferenceLimited:
      ranges.r_d2d = comm_range_interference_limited(
          config.channel, p_access * config.lambda_t, ranges.d_exclusion);
      break;
    case RangeMode::kFixed:
      ranges.r_d2d = config.r_d2d_value;
      break;
  }
  return ranges;
}

RealizationStats evaluate_realization(const ExperimentConfig& config, Policy policy,
                                      double p_access, std::uint64_t seed,
                                      int realization_index) {
  if (p_access < 0.0 || p_access > 1.0) {
    throw std::invalid_argument("evaluate_realization: p_access must be in [0, 1]");
  }
  RealizationStats stats;
  if (p_access == 0.0) {  // nothing transmits; every receiver is unserved
    return stats;
  }

  const auto idx = static_cast<std::uint64_t>(realization_index);
  const ZipfPmf placement(config.gamma_c, config.catalog_size);
  const ZipfPmf request_pmf(config.gamma_r, config.catalog_size);
  const SpatialRealization real = sample_realization(
      config.window, config.lambda_t, config.lambda_r, placement, request_pmf,
      config.cache_size, derive_seed(seed, idx, kRealizationStream));

  const RangePair ranges = resolve_ranges(config, p_access);
  const double lambda_active = p_access * config.lambda_t;

  RetainedSet retained;
  switch (policy) {
    case Policy::kRandom: {
      RandomStream coin(derive_seed(seed, idx, kCoinStream));
      retained = thin_random(real.n_tx(), p_access, coin);
      break;
    }
    case Policy::kMatern: {
      RandomStream mark_rng(derive_seed(seed, idx, kMarkStream));
      const MarkAssignment marks = sample_marks(real.n_tx(), mark_rng);
      retained = thin_matern(real.transmitters, real.window, marks, ranges.d_exclusion);
      break;
    }
    case Policy::kBiddingMatern: {
      RandomStream mark_rng(derive_seed(seed, idx, kMarkStream));
      const MarkAssignment marks = sample_marks(real.n_tx(), mark_rng);
      const BidTable bids = compute_bid_table(real, ranges.r_d2d, lambda_active,
                                              config.channel, config.scoring_mode);
      retained = thin_bidding_matern(real.transmitters, real.window, bids, marks,
                                     ranges.d_exclusion);
      break;
    }
    case Policy::kBidOrdering: {
      RandomStream mark_rng(derive_seed(seed, idx, kMarkStream));
      const MarkAssignment marks = sample_marks(real.n_tx(), mark_rng);
      const BidTable bids = compute_bid_table(real, ranges.r_d2d, lambda_active,
                                              config.channel, config.scoring_mode);
      retained = thin_bid_ordering(bids, p_access, marks);
      break;
    }
  }

  const Association assoc = associate(real, retained, ranges.r_d2d);

  RandomStream fades(derive_seed(seed, idx, kFadeStream));
  double rate_sum = 0.0;
  double served_rate_sum = 0.0;
  int served = 0;
  for (int u = 0; u < real.n_rx(); ++u) {
    const double rate = user_rate(u, assoc, retained, real, config.channel, fades);
    rate_sum += rate;
    if (assoc.server_of_rx[static_cast<std::size_t>(u)] >= 0) {
      served += 1;
      served_rate_sum += rate;
    }
  }

  int loaded_tx = 0;
  long long load_sum = 0;
  for (std::int32_t load : assoc.load_of_tx) {
    if (load > 0) {
      loaded_tx += 1;
      load_sum += load;
    }
  }

  const int n_rx = real.n_rx();
  stats.mean_rate = n_rx > 0 ? rate_sum / n_rx : 0.0;
  stats.mean_rate_served = served > 0 ? served_rate_sum / served : 0.0;
  stats.served_fraction = n_rx > 0 ? static_cast<double>(served) / n_rx : 0.0;
  stats.mean_load = loaded_tx > 0 ? static_cast<double>(load_sum) / loaded_tx : 0.0;
  stats.retained_fraction = retained.fraction();
  return stats;
}

MetricsRow run_experiment(const ExperimentConfig& config, Policy policy,
                          double p_access, int n_realizations, std::uint64_t seed) {
  if (n_realizations < 1) {
    throw std::invalid_argument("run_experiment: n_realizations must be >= 1");
  }
  std::vector<RealizationStats> results(static_cast<std::size_t>(n_realizations));

  const unsigned hw = std::thread::hardware_concurrency();
  const int n_threads =
      std::max(1, std::min<int>(static_cast<int>(hw ? hw : 1), n_realizations));
  std::atomic<int> next{0};
  std::exception_ptr first_error;
  std::mutex error_mutex;

  auto worker = [&] {
    for (;;) {
      const int i = next.fetch_add(1);
      if (i >= n_realizations) {
        return;
      }
      try {
        results[static_cast<std::size_t>(i)] =
            evaluate_realization(config, policy, p_access, seed, i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(error_mutex);
        if (!first_error) {
          first_error = std::current_exception();
        }
        return;
      }
    }
  };

  if (n_threads == 1) {
    worker();
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(n_threads));
    for (int t = 0; t < n_threads; ++t) {
      pool.emplace_back(worker);
    }
    for (auto& t : pool) {
      t.join();
    }
  }
  if (first_error) {
    std::rethrow_exception(first_error);
  }

  // Order-fixed reduction keeps the report independent of thread timing.
  MetricsRow row;
  row.policy = policy;
  row.p_access = p_access;
  row.n_realizations = n_realizations;
  double sum = 0.0;
  double sum_sq = 0.0;
  for (const RealizationStats& s : results) {
    sum += s.mean_rate;
    sum_sq += s.mean_rate * s.mean_rate;
    row.served_fraction += s.served_fraction;
    row.mean_load += s.mean_load;
    row.retained_fraction += s.retained_fraction;
    row.mean_rate_served += s.mean_rate_served;
  }
  const double n = static_cast<double>(n_realizations);
  row.mean_rate = sum / n;
  row.served_fraction /= n;
  row.mean_load /= n;
  row.retained_fraction /= n;
  row.mean_rate_served /= n;
  if (n_realizations > 1) {
    const double var = std::max(0.0, (sum_sq - sum * sum / n) / (n - 1.0));
    row.std_err = std::sqrt(var / n);
  }
  return row;
}

std::vector<MetricsRow> sweep(const ExperimentConfig& config,
                              const std::vector<Policy>& policies,
                              const std::vector<double>& pa_grid) {
  if (pa_grid.empty()) {
    throw std::invalid_argument("sweep: pa_grid must not be empty");
  }
  std::vector<MetricsRow> rows;
  rows.reserve(policies.size() * pa_grid.size());
  for (const Policy policy : policies) {
    for (std::size_t j = 0; j < pa_grid.size(); ++j) {
      const std::uint64_t cell_seed =
          derive_seed(config.seed, static_cast<std::uint64_t>(policy) + 101,
                      static_cast<std::uint64_t>(j) + 1);
      rows.push_back(run_experiment(config, policy, pa_grid[j],
                                    config.n_realizations, cell_seed));
    }
  }
  return rows;
}

}  // namespace d2dsim
