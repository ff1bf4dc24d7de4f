#pragma once

#include <cstdint>
#include <vector>

#include "d2dsim/content.hpp"
#include "d2dsim/geometry.hpp"

namespace d2dsim {

// One network snapshot: transmitter and receiver point patterns plus their
// marks (cache configurations, file requests).
struct SpatialRealization {
  Window window;
  PointSet transmitters;
  PointSet receivers;
  std::vector<CacheConfig> caches;  // one per transmitter
  std::vector<FileId> requests;     // one per receiver

  int n_tx() const { return transmitters.size(); }
  int n_rx() const { return receivers.size(); }
};

// Samples a full snapshot. Each ingredient draws from its own sub-stream
// (per-transmitter cache streams included) so that enlarging the cache size
// with the same seed extends every cache instead of reshuffling the rest of
// the realization.
SpatialRealization sample_realization(const Window& window, double lambda_t,
                                      double lambda_r, const ZipfPmf& placement,
                                      const ZipfPmf& request_pmf, int cache_size,
                                      std::uint64_t seed);

}  // namespace d2dsim
