#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "d2dsim/bidding.hpp"
#include "d2dsim/geometry.hpp"
#include "d2dsim/random.hpp"

namespace d2dsim {

enum class Policy { kRandom, kMatern, kBiddingMatern, kBidOrdering };

std::string to_string(Policy policy);
std::optional<Policy> policy_from_string(const std::string& name);
inline constexpr Policy kAllPolicies[] = {Policy::kRandom, Policy::kMatern,
                                          Policy::kBiddingMatern, Policy::kBidOrdering};

// Contention marks, iid uniform on [0, 1].
struct MarkAssignment {
  std::vector<double> marks;
};

MarkAssignment sample_marks(int n, RandomStream& rng);

// Medium access indicators e_x for one policy.
struct RetainedSet {
  std::vector<std::uint8_t> on;
  Policy policy{Policy::kRandom};

  int count() const;
  double fraction() const;  // 0 when there are no transmitters
};

// Independent thinning: each transmitter kept with probability p_access.
RetainedSet thin_random(int n_tx, double p_access, RandomStream& rng);

// Matern type-II: keep x iff its mark is strictly lowest within d_exclusion.
RetainedSet thin_matern(const PointSet& transmitters, const Window& window,
                        const MarkAssignment& marks, double d_exclusion);

// Keep x iff its (bid, tiebreak mark) pair is lexicographically strictly
// greatest within d_exclusion. With constant bids this degrades to uniform
// Matern contention on the tiebreak marks.
RetainedSet thin_bidding_matern(const PointSet& transmitters, const Window& window,
                                const BidTable& bids, const MarkAssignment& tiebreak,
                                double d_exclusion);

// Keep exactly floor(p_access * n) transmitters of highest (bid, tiebreak)
// rank; no exclusion region.
RetainedSet thin_bid_ordering(const BidTable& bids, double p_access,
                              const MarkAssignment& tiebreak);

}  // namespace d2dsim
