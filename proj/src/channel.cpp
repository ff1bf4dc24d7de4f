#include "d2dsim/channel.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace d2dsim {

namespace {

constexpr double kPi = std::numbers::pi;

double integrand(double z, double half_alpha) { return 1.0 / (1.0 + std::pow(z, half_alpha)); }

// Recursive adaptive Simpson with Richardson correction.
double adaptive_simpson(double a, double b, double fa, double fm, double fb,
                        double whole, double eps, int depth, double half_alpha) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = integrand(lm, half_alpha);
  const double frm = integrand(rm, half_alpha);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (std::abs(delta) <= 15.0 * eps) {
    return left + right + delta / 15.0;
  }
  if (depth <= 0) {
    throw std::runtime_error("rho: quadrature failed to converge");
  }
  return adaptive_simpson(a, m, fa, flm, fm, left, 0.5 * eps, depth - 1, half_alpha) +
         adaptive_simpson(m, b, fm, frm, fb, right, 0.5 * eps, depth - 1, half_alpha);
}

double integrate_finite(double a, double b, double half_alpha, double eps) {
  if (b <= a) {
    return 0.0;
  }
  const double fa = integrand(a, half_alpha);
  const double fb = integrand(b, half_alpha);
  const double fm = integrand(0.5 * (a + b), half_alpha);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return adaptive_simpson(a, b, fa, fm, fb, whole, eps, 60, half_alpha);
}

// integral_Z^inf dz/(1+z^{alpha/2}) expanded as sum_k (-1)^k Z^{1-(k+1)alpha/2}
// / ((k+1)alpha/2 - 1); valid for Z^{alpha/2} > 1 and converges geometrically.
double integrate_tail(double z0, double half_alpha) {
  double sum = 0.0;
  double sign = 1.0;
  for (int k = 0; k < 200; ++k) {
    const double beta = half_alpha * (k + 1);
    const double term = std::pow(z0, 1.0 - beta) / (beta - 1.0);
    sum += sign * term;
    if (term < 1e-16 * std::max(1.0, std::abs(sum))) {
      break;
    }
    sign = -sign;
  }
  return sum;
}

}  // namespace

void ChannelParams::validate() const {
  if (!(alpha > 2.0)) {
    throw std::invalid_argument("channel: alpha must be > 2");
  }
  if (!(mu > 0.0)) {
    throw std::invalid_argument("channel: mu must be > 0");
  }
  if (!(noise_power >= 0.0)) {
    throw std::invalid_argument("channel: noise_power must be >= 0");
  }
  if (!(sinr_threshold > 0.0)) {
    throw std::invalid_argument("channel: sinr_threshold must be > 0");
  }
  if (!(bandwidth > 0.0)) {
    throw std::invalid_argument("channel: bandwidth must be > 0");
  }
}

double path_loss(double r, double alpha) {
  return std::pow(std::max(r, kPathLossMinRadius), -alpha);
}

double rho(double threshold, double alpha) {
  if (!(threshold > 0.0)) {
    throw std::invalid_argument("rho: threshold must be > 0");
  }
  if (!(alpha > 2.0)) {
    throw std::invalid_argument("rho: alpha must be > 2");
  }
  const double half_alpha = 0.5 * alpha;
  const double lower = std::pow(threshold, -2.0 / alpha);
  // Hand the far tail (where z^{alpha/2} >= 100) to the series; quadrature
  // covers the finite remainder.
  const double split = std::max(lower, std::pow(100.0, 2.0 / alpha));
  const double finite = integrate_finite(lower, split, half_alpha, 1e-12);
  const double tail = integrate_tail(split, half_alpha);
  return std::pow(threshold, 2.0 / alpha) * (finite + tail);
}

double coverage_probability(double r, double lambda_active, const ChannelParams& p) {
  p.validate();
  if (!(r > 0.0)) {
    throw std::invalid_argument("coverage_probability: r must be > 0");
  }
  if (lambda_active < 0.0) {
    throw std::invalid_argument("coverage_probability: lambda_active must be >= 0");
  }
  const double noise_term = p.mu * p.sinr_threshold * p.noise_power * std::pow(r, p.alpha);
  const double interf_term =
      lambda_active > 0.0
          ? kPi * lambda_active * rho(p.sinr_threshold, p.alpha) * (r * r)
          : 0.0;
  return std::exp(-noise_term - interf_term);
}

double linearized_coverage(double r, double lambda_active, const ChannelParams& p) {
  p.validate();
  if (!(r > 0.0)) {
    throw std::invalid_argument("linearized_coverage: r must be > 0");
  }
  const double noise_term = p.mu * p.sinr_threshold * p.noise_power * std::pow(r, p.alpha);
  const double interf_term =
      lambda_active > 0.0
          ? kPi * lambda_active * rho(p.sinr_threshold, p.alpha) * (r * r)
          : 0.0;
  return std::max(0.0, 1.0 - noise_term - interf_term);
}

double mean_interference(double lambda_retained, double d_exclusion, double alpha) {
  if (lambda_retained < 0.0) {
    throw std::invalid_argument("mean_interference: lambda must be >= 0");
  }
  if (!(d_exclusion > 0.0)) {
    throw std::invalid_argument("mean_interference: d_exclusion must be > 0");
  }
  if (!(alpha > 2.0)) {
    throw std::invalid_argument("mean_interference: alpha must be > 2");
  }
  return 2.0 * kPi * lambda_retained / (alpha - 2.0) * std::pow(d_exclusion, 2.0 - alpha);
}

double comm_range_noise_limited(const ChannelParams& p) {
  p.validate();
  if (!(p.noise_power > 0.0)) {
    throw std::invalid_argument("comm_range: noise-limited range is infinite at noise_power = 0");
  }
  return std::pow(p.mu * p.sinr_threshold * p.noise_power, -1.0 / p.alpha);
}

double comm_range_interference_limited(const ChannelParams& p, double lambda_active,
                                       double d_exclusion) {
  p.validate();
  if (!(lambda_active > 0.0)) {
    throw std::invalid_argument("comm_range: interference-limited range needs lambda > 0");
  }
  const double mean_i = mean_interference(lambda_active, d_exclusion, p.alpha);
  return std::pow(p.mu * p.sinr_threshold * mean_i, -1.0 / p.alpha);
}

double exclusion_radius_from_map(double p_access, double lambda_potential) {
  if (!(p_access > 0.0) || p_access > 1.0) {
    throw std::invalid_argument("exclusion_radius_from_map: p_access must be in (0, 1]");
  }
  if (!(lambda_potential > 0.0)) {
    throw std::invalid_argument("exclusion_radius_from_map: lambda_potential must be > 0");
  }
  if (p_access == 1.0) {
    return 0.0;
  }
  // Solve (1 - exp(-n)) / n = p_access for n = lambda pi D^2; the left side
  // decreases from 1 to 0, so bisection over a bracketing interval works.
  auto retention = [](double n) { return (1.0 - std::exp(-n)) / n; };
  double lo = 1e-12;
  if (retention(lo) <= p_access) {  // p_access within round-off of 1
    return std::sqrt(lo / (lambda_potential * kPi));
  }
  double hi = 1.0;
  while (retention(hi) > p_access) {
    hi *= 2.0;
    if (hi > 1e12) {
      throw std::runtime_error("exclusion_radius_from_map: failed to bracket");
    }
  }
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    if (retention(mid) > p_access) {
      lo = mid;
    } else {
      hi = mid;
    }
    if ((hi - lo) <= 1e-10 * hi) {
      break;
    }
  }
  const double n = 0.5 * (lo + hi);
  return std::sqrt(n / (lambda_potential * kPi));
}

double realized_sinr(Point rx, int serving_tx, std::span<const std::uint8_t> active,
                     const PointSet& transmitters, const Window& window,
                     const ChannelParams& p, RandomStream& rng) {
  if (!active[static_cast<std::size_t>(serving_tx)]) {
    throw std::invalid_argument("realized_sinr: serving transmitter is not active");
  }
  const double r_serving = distance(transmitters[serving_tx], rx, window);
  const double signal = rng.exponential(p.mu) * path_loss(r_serving, p.alpha);
  double denom = p.noise_power;
  for (int z = 0; z < transmitters.size(); ++z) {
    if (z == serving_tx || !active[static_cast<std::size_t>(z)]) {
      continue;
    }
    const double r = distance(transmitters[z], rx, window);
    denom += rng.exponential(p.mu) * path_loss(r, p.alpha);
  }
  return signal / denom;
}

}  // namespace d2dsim
