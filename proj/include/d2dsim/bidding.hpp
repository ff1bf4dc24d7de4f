#pragma once

#include <map>
#include <optional>
#include <vector>

#include "d2dsim/channel.hpp"
#include "d2dsim/realization.hpp"

namespace d2dsim {

// The bid sums per-receiver coverage scores; exact uses the exponential
// coverage expression, linearized its clamped first-order expansion.
enum class ScoringMode { kExact, kLinearized };

// Accumulated bid per potential transmitter, in transmitter index order.
struct BidTable {
  std::vector<double> values;
  ScoringMode mode{ScoringMode::kExact};
};

// Receivers within r_d2d of transmitter tx whose requested file is cached
// there. Indices ascending.
std::vector<int> bidder_set(int tx, const SpatialRealization& real, double r_d2d);

// Empirical request frequencies among the bidders, over the cached files.
// Empty map when there are no bidders.
std::map<FileId, double> local_request_pmf(int tx, const std::vector<int>& bidders,
                                           const SpatialRealization& real);

// Bid(tx) = sum over bidders of pmf(c_u) * coverage score at distance r.
// rho_value optionally supplies a precomputed rho(T, alpha).
double accumulated_bid(int tx, const std::vector<int>& bidders,
                       const std::map<FileId, double>& pmf,
                       const SpatialRealization& real, double lambda_active,
                       const ChannelParams& p, ScoringMode mode,
                       std::optional<double> rho_value = std::nullopt);

// One bid per transmitter; deterministic given the realization.
BidTable compute_bid_table(const SpatialRealization& real, double r_d2d,
                           double lambda_active, const ChannelParams& p,
                           ScoringMode mode);

}  // namespace d2dsim
