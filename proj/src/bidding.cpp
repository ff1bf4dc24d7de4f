#include "d2dsim/bidding.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace d2dsim {

namespace {

double coverage_score(double r, double noise_coeff, double interf_coeff, double alpha,
                      ScoringMode mode) {
  const double terms = noise_coeff * std::pow(r, alpha) + interf_coeff * (r * r);
  return mode == ScoringMode::kExact ? std::exp(-terms) : std::max(0.0, 1.0 - terms);
}

}  // namespace

std::vector<int> bidder_set(int tx, const SpatialRealization& real, double r_d2d) {
  if (!(r_d2d > 0.0)) {
    throw std::invalid_argument("bidder_set: r_d2d must be > 0");
  }
  std::vector<int> out;
  const Point x = real.transmitters[tx];
  const CacheConfig& cache = real.caches[static_cast<std::size_t>(tx)];
  for (int u = 0; u < real.n_rx(); ++u) {
    if (distance(x, real.receivers[u], real.window) <= r_d2d &&
        cache.contains(real.requests[static_cast<std::size_t>(u)])) {
      out.push_back(u);
    }
  }
  return out;
}

std::map<FileId, double> local_request_pmf(int tx, const std::vector<int>& bidders,
                                           const SpatialRealization& real) {
  std::map<FileId, double> pmf;
  if (bidders.empty()) {
    return pmf;
  }
  std::map<FileId, int> counts;
  for (int u : bidders) {
    const FileId c = real.requests[static_cast<std::size_t>(u)];
    if (!real.caches[static_cast<std::size_t>(tx)].contains(c)) {
      throw std::invalid_argument("local_request_pmf: bidder requests an uncached file");
    }
    counts[c] += 1;
  }
  const double total = static_cast<double>(bidders.size());
  for (const auto& [file, count] : counts) {
    pmf[file] = static_cast<double>(count) / total;
  }
  return pmf;
}

double accumulated_bid(int tx, const std::vector<int>& bidders,
                       const std::map<FileId, double>& pmf,
                       const SpatialRealization& real, double lambda_active,
                       const ChannelParams& p, ScoringMode mode,
                       std::optional<double> rho_value) {
  if (bidders.empty()) {
    return 0.0;
  }
  p.validate();
  const double rho_ta = rho_value ? *rho_value : rho(p.sinr_threshold, p.alpha);
  const double noise_coeff = p.mu * p.sinr_threshold * p.noise_power;
  const double interf_coeff = std::numbers::pi * lambda_active * rho_ta;
  const Point x = real.transmitters[tx];
  double bid = 0.0;
  for (int u : bidders) {
    const auto it = pmf.find(real.requests[static_cast<std::size_t>(u)]);
    if (it == pmf.end()) {
      throw std::invalid_argument("accumulated_bid: pmf inconsistent with bidders");
    }
    const double r = distance(x, real.receivers[u], real.window);
    bid += it->second * coverage_score(r, noise_coeff, interf_coeff, p.alpha, mode);
  }
  return bid;
}

BidTable compute_bid_table(const SpatialRealization& real, double r_d2d,
                           double lambda_active, const ChannelParams& p,
                           ScoringMode mode) {
  if (!(r_d2d > 0.0)) {
    throw std::invalid_argument("compute_bid_table: r_d2d must be > 0");
  }
  p.validate();
  BidTable table;
  table.mode = mode;
  table.values.assign(static_cast<std::size_t>(real.n_tx()), 0.0);
  if (real.n_tx() == 0) {
    return table;
  }
  const double rho_ta = rho(p.sinr_threshold, p.alpha);
  const NeighborIndex rx_index(real.receivers, real.window, r_d2d);
  for (int tx = 0; tx < real.n_tx(); ++tx) {
    const CacheConfig& cache = real.caches[static_cast<std::size_t>(tx)];
    std::vector<int> bidders;
    for (int u : rx_index.ball(real.transmitters[tx], r_d2d)) {
      if (cache.contains(real.requests[static_cast<std::size_t>(u)])) {
        bidders.push_back(u);
      }
    }
    const auto pmf = local_request_pmf(tx, bidders, real);
    table.values[static_cast<std::size_t>(tx)] =
        accumulated_bid(tx, bidders, pmf, real, lambda_active, p, mode, rho_ta);
  }
  return table;
}

}  // namespace d2dsim
