#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <limits>

#include "va/core.hpp"

namespace va {

/// Linear-FM chirp descriptor. The dechirped model works purely with the
/// wavenumber grid derived from these parameters.
struct ChirpParams {
  double carrier_hz = 120e9;
  double bandwidth_hz = 10e9;
  double duration_s = 1e-6;
  int num_samples = 1024;
  double amplitude = 1.0;

  double chirp_rate() const { return bandwidth_hz / duration_s; }
  double wavelength(double c = kDefaultSpeedOfLight) const { return c / carrier_hz; }
  void validate() const;
};

/// Raw dechirped measurement: fast-time samples down the rows, slow-time
/// (virtual-source position) across the columns.
struct DataCube {
  Eigen::MatrixXcd samples;  // num_samples x slow_time_len
  ChirpParams chirp;

  int fast_len() const { return static_cast<int>(samples.rows()); }
  int slow_len() const { return static_cast<int>(samples.cols()); }
};

/// k_i = 2*pi*(f_c + gamma * t_i)/c with t_i spanning [0, T] inclusive.
Eigen::VectorXd wavenumber_grid(const ChirpParams& chirp, double c = kDefaultSpeedOfLight);

inline Complex point_response(double k, double path, double amplitude = 1.0) {
  return std::polar(amplitude, -k * path);
}

/// Sentinel SNR meaning "leave the cube untouched".
inline constexpr double kNoNoise = std::numeric_limits<double>::infinity();

/// Circularly symmetric complex Gaussian noise at the given SNR relative to
/// the mean sample power of the whole cube. Deterministic per seed; samples
/// are drawn in row-major order.
DataCube add_awgn(const DataCube& cube, double snr_db, std::uint64_t seed);

}  // namespace va
