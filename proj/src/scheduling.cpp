#include "d2dsim/scheduling.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace d2dsim {

std::string to_string(Policy policy) {
  switch (policy) {
    case Policy::kRandom:
      return "random";
    case Policy::kMatern:
      return "matern";
    case Policy::kBiddingMatern:
      return "bidding_matern";
    case Policy::kBidOrdering:
      return "bid_ordering";
  }
  return "unknown";
}

std::optional<Policy> policy_from_string(const std::string& name) {
  for (Policy p : kAllPolicies) {
    if (to_string(p) == name) {
      return p;
    }
  }
  return std::nullopt;
}

MarkAssignment sample_marks(int n, RandomStream& rng) {
  MarkAssignment m;
  m.marks.reserve(static_cast<std::size_t>(std::max(0, n)));
  for (int i = 0; i < n; ++i) {
    m.marks.push_back(rng.uniform01());
  }
  return m;
}

int RetainedSet::count() const {
  int c = 0;
  for (std::uint8_t e : on) {
    c += e ? 1 : 0;
  }
  return c;
}

double RetainedSet::fraction() const {
  return on.empty() ? 0.0 : static_cast<double>(count()) / static_cast<double>(on.size());
}

RetainedSet thin_random(int n_tx, double p_access, RandomStream& rng) {
  if (p_access < 0.0 || p_access > 1.0) {
    throw std::invalid_argument("thin_random: p_access must be in [0, 1]");
  }
  RetainedSet r;
  r.policy = Policy::kRandom;
  r.on.resize(static_cast<std::size_t>(n_tx));
  for (int i = 0; i < n_tx; ++i) {
    r.on[static_cast<std::size_t>(i)] = rng.uniform01() < p_access ? 1 : 0;
  }
  return r;
}

RetainedSet thin_matern(const PointSet& transmitters, const Window& window,
                        const MarkAssignment& marks, double d_exclusion) {
  if (d_exclusion < 0.0) {
    throw std::invalid_argument("thin_matern: d_exclusion must be >= 0");
  }
  if (marks.marks.size() != static_cast<std::size_t>(transmitters.size())) {
    throw std::invalid_argument("thin_matern: one mark per transmitter required");
  }
  RetainedSet r;
  r.policy = Policy::kMatern;
  r.on.assign(static_cast<std::size_t>(transmitters.size()), 1);
  if (transmitters.size() == 0 || d_exclusion == 0.0) {
    return r;
  }
  const NeighborIndex index(transmitters, window, d_exclusion);
  for (int x = 0; x < transmitters.size(); ++x) {
    for (int y : index.ball_around(x, d_exclusion)) {
      if (!(marks.marks[static_cast<std::size_t>(x)] <
            marks.marks[static_cast<std::size_t>(y)])) {
        r.on[static_cast<std::size_t>(x)] = 0;
        break;
      }
    }
  }
  return r;
}

namespace {

// Strictly-greater comparison on (bid, tiebreak); ties on both are not
// expected (marks are almost surely distinct).
bool key_greater(double bid_a, double tb_a, double bid_b, double tb_b) {
  if (bid_a != bid_b) {
    return bid_a > bid_b;
  }
  return tb_a > tb_b;
}

}  // namespace

RetainedSet thin_bidding_matern(const PointSet& transmitters, const Window& window,
                                const BidTable& bids, const MarkAssignment& tiebreak,
                                double d_exclusion) {
  if (d_exclusion < 0.0) {
    throw std::invalid_argument("thin_bidding_matern: d_exclusion must be >= 0");
  }
  const auto n = static_cast<std::size_t>(transmitters.size());
  if (bids.values.size() != n || tiebreak.marks.size() != n) {
    throw std::invalid_argument("thin_bidding_matern: bids/marks sized to transmitters required");
  }
  RetainedSet r;
  r.policy = Policy::kBiddingMatern;
  r.on.assign(n, 1);
  if (transmitters.size() == 0 || d_exclusion == 0.0) {
    return r;
  }
  const NeighborIndex index(transmitters, window, d_exclusion);
  for (int x = 0; x < transmitters.size(); ++x) {
    for (int y : index.ball_around(x, d_exclusion)) {
      if (!key_greater(bids.values[static_cast<std::size_t>(x)],
                       tiebreak.marks[static_cast<std::size_t>(x)],
                       bids.values[static_cast<std::size_t>(y)],
                       tiebreak.marks[static_cast<std::size_t>(y)])) {
        r.on[static_cast<std::size_t>(x)] = 0;
        break;
      }
    }
  }
  return r;
}

RetainedSet thin_bid_ordering(const BidTable& bids, double p_access,
                              const MarkAssignment& tiebreak) {
  if (p_access < 0.0 || p_access > 1.0) {
    throw std::invalid_argument("thin_bid_ordering: p_access must be in [0, 1]");
  }
  const auto n = bids.values.size();
  if (tiebreak.marks.size() != n) {
    throw std::invalid_argument("thin_bid_ordering: marks sized to bids required");
  }
  RetainedSet r;
  r.policy = Policy::kBidOrdering;
  r.on.assign(n, 0);
  // Small nudge so a p_access * n that is an integer up to round-off does
  // not lose a slot to floating point.
  const auto keep = static_cast<std::size_t>(
      std::floor(p_access * static_cast<double>(n) + 1e-9));
  if (keep == 0) {
    return r;
  }
  std::vector<int> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](int a, int b) {
    if (bids.values[static_cast<std::size_t>(a)] != bids.values[static_cast<std::size_t>(b)]) {
      return bids.values[static_cast<std::size_t>(a)] > bids.values[static_cast<std::size_t>(b)];
    }
    if (tiebreak.marks[static_cast<std::size_t>(a)] != tiebreak.marks[static_cast<std::size_t>(b)]) {
      return tiebreak.marks[static_cast<std::size_t>(a)] > tiebreak.marks[static_cast<std::size_t>(b)];
    }
    return a < b;
  });
  for (std::size_t k = 0; k < std::min(keep, n); ++k) {
    r.on[static_cast<std::size_t>(order[k])] = 1;
  }
  return r;
}

}  // namespace d2dsim
