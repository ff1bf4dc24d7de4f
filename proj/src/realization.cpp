#include "d2dsim/realization.hpp"

namespace d2dsim {

namespace {
enum : std::uint64_t { kTxPoints = 1, kRxPoints = 2, kCaches = 3, kRequests = 4 };
}

SpatialRealization sample_realization(const Window& window, double lambda_t,
                                      double lambda_r, const ZipfPmf& placement,
                                      const ZipfPmf& request_pmf, int cache_size,
                                      std::uint64_t seed) {
  SpatialRealization real;
  real.window = window;

  RandomStream tx_rng(derive_seed(seed, kTxPoints));
  real.transmitters = sample_ppp(lambda_t, window, tx_rng);

  RandomStream rx_rng(derive_seed(seed, kRxPoints));
  real.receivers = sample_ppp(lambda_r, window, rx_rng);

  real.caches.reserve(static_cast<std::size_t>(real.n_tx()));
  for (int k = 0; k < real.n_tx(); ++k) {
    RandomStream cache_rng(derive_seed(seed, kCaches, static_cast<std::uint64_t>(k)));
    real.caches.push_back(sample_cache(placement, cache_size, cache_rng));
  }

  RandomStream req_rng(derive_seed(seed, kRequests));
  real.requests = sample_requests(request_pmf, real.n_rx(), req_rng);
  return real;
}

}  // namespace d2dsim
