#include "va/signal.hpp"

#include <cmath>
#include <random>

namespace va {

void ChirpParams::validate() const {
  if (!(carrier_hz > 0)) throw std::invalid_argument("chirp: carrier_hz must be positive");
  if (bandwidth_hz < 0) throw std::invalid_argument("chirp: bandwidth_hz must be non-negative");
  if (!(duration_s > 0)) throw std::invalid_argument("chirp: duration_s must be positive");
  if (num_samples < 1) throw std::invalid_argument("chirp: num_samples must be >= 1");
  if (!(amplitude > 0)) throw std::invalid_argument("chirp: amplitude must be positive");
}

Eigen::VectorXd wavenumber_grid(const ChirpParams& chirp, double c) {
  chirp.validate();
  if (!(c > 0)) throw std::invalid_argument("wavenumber_grid: c must be positive");
  const int n = chirp.num_samples;
  Eigen::VectorXd k(n);
  const double two_pi = 2.0 * M_PI;
  // I == 1 degenerates to a single sample at t = 0
  const double dt = (n > 1) ? chirp.duration_s / (n - 1) : 0.0;
  for (int i = 0; i < n; ++i)
    k[i] = two_pi * (chirp.carrier_hz + chirp.chirp_rate() * (i * dt)) / c;
  return k;
}

DataCube add_awgn(const DataCube& cube, double snr_db, std::uint64_t seed) {
  if (std::isinf(snr_db) && snr_db > 0) return cube;
  const double power = cube.samples.squaredNorm() / static_cast<double>(cube.samples.size());
  if (power == 0.0) throw std::invalid_argument("add_awgn: SNR undefined for zero signal");
  const double variance = power / std::pow(10.0, snr_db / 10.0);
  const double sigma = std::sqrt(variance / 2.0);  // per real component

  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  DataCube out = cube;
  for (int i = 0; i < out.fast_len(); ++i)
    for (int m = 0; m < out.slow_len(); ++m) {
      const double re = gauss(rng);
      const double im = gauss(rng);
      out.samples(i, m) += Complex(sigma * re, sigma * im);
    }
  return out;
}

}  // namespace va
