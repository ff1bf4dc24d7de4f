#pragma once

#include <cstdint>
#include <span>

#include "d2dsim/geometry.hpp"
#include "d2dsim/random.hpp"

namespace d2dsim {

// Path loss l(r) = r^-alpha diverges at 0; below this radius it is held
// constant so realized SINR stays finite.
inline constexpr double kPathLossMinRadius = 1e-3;

struct ChannelParams {
  double alpha{4.0};           // path-loss exponent, > 2
  double mu{1.0};              // fading rate; link gains ~ Exponential(mu)
  double noise_power{10.0};    // sigma^2
  double sinr_threshold{0.01}; // T
  double bandwidth{1.0};       // W in Hz

  void validate() const;  // throws std::invalid_argument naming the field
  bool operator==(const ChannelParams&) const = default;
};

struct RangePair {
  double r_d2d{0.0};        // communication radius
  double d_exclusion{0.0};  // contention / exclusion radius
};

// l(r) = r^-alpha, clamped below kPathLossMinRadius.
double path_loss(double r, double alpha);

// rho(T, alpha) = T^{2/alpha} * integral_{T^{-2/alpha}}^inf dz / (1 + z^{alpha/2}).
// Adaptive quadrature plus an analytic series for the far tail; throws
// std::runtime_error if the quadrature fails to converge.
double rho(double threshold, double alpha);

// P[SINR > T] for a link of length r against a PPP of active transmitters
// with intensity lambda_active: exp(-mu T sigma^2 r^alpha - pi lambda rho r^2).
double coverage_probability(double r, double lambda_active, const ChannelParams& p);

// First-order expansion of the same expression, clamped at 0.
double linearized_coverage(double r, double lambda_active, const ChannelParams& p);

// Mean interference of intensity-lambda transmitters kept outside radius d:
// 2 pi lambda d^{2-alpha} / (alpha - 2).
double mean_interference(double lambda_retained, double d_exclusion, double alpha);

// Communication radii at which SINR == T without fading variability.
double comm_range_noise_limited(const ChannelParams& p);
double comm_range_interference_limited(const ChannelParams& p, double lambda_active,
                                       double d_exclusion);

// Inverts the Matern type-II retention probability
//   p_A = (1 - exp(-lambda pi D^2)) / (lambda pi D^2)
// for D by bisection (relative tolerance 1e-10). p_A = 1 gives D = 0.
double exclusion_radius_from_map(double p_access, double lambda_potential);

// One realized SINR draw for receiver position rx against the serving
// transmitter, with every other active transmitter interfering. Fresh iid
// Exponential(mu) fades per link per call.
double realized_sinr(Point rx, int serving_tx, std::span<const std::uint8_t> active,
                     const PointSet& transmitters, const Window& window,
                     const ChannelParams& p, RandomStream& rng);

}  // namespace d2dsim
