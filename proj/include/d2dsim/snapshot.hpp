#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "d2dsim/bidding.hpp"
#include "d2dsim/evaluation.hpp"
#include "d2dsim/realization.hpp"
#include "d2dsim/scheduling.hpp"

namespace d2dsim {

// One realization flattened for plotting: every transmitter with its bid,
// cache and retention flag, every receiver with its request and server.
// Line-oriented text format, lossless round-trip.
struct SnapshotDump {
  std::string policy_name;
  double p_access{0.0};
  double r_d2d{0.0};
  double d_exclusion{0.0};
  std::uint64_t seed{0};
  Window window{};

  struct TxRecord {
    double x{0.0};
    double y{0.0};
    double bid{0.0};
    bool retained{false};
    std::vector<FileId> cache;
    bool operator==(const TxRecord&) const = default;
  };
  struct RxRecord {
    double x{0.0};
    double y{0.0};
    FileId request{0};
    std::int32_t server{-1};
    bool operator==(const RxRecord&) const = default;
  };

  std::vector<TxRecord> transmitters;
  std::vector<RxRecord> receivers;

  bool operator==(const SnapshotDump&) const = default;
};

SnapshotDump make_snapshot(const SpatialRealization& real, const BidTable& bids,
                           const RetainedSet& retained, const Association& assoc,
                           double p_access, const RangePair& ranges,
                           std::uint64_t seed);

std::string serialize_snapshot(const SnapshotDump& snap);

// Throws std::invalid_argument with the line number on malformed input.
SnapshotDump parse_snapshot(const std::string& text);

}  // namespace d2dsim
