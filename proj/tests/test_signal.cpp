#include <doctest.h>

#include <cmath>

#include "va/signal.hpp"

using namespace va;

namespace {
ChirpParams default_chirp() { return ChirpParams{120e9, 10e9, 1e-6, 1024, 1.0}; }
}  // namespace

TEST_CASE("wavenumber_grid endpoints cover the full sweep") {
  const auto k = wavenumber_grid(default_chirp(), 3e8);
  CHECK(k[0] == doctest::Approx(800.0 * M_PI).epsilon(1e-12));  // 2*pi*120e9/3e8
  CHECK(k[1023] == doctest::Approx(2.0 * M_PI * 130e9 / 3e8).epsilon(1e-12));
}

TEST_CASE("wavenumber_grid with zero bandwidth is constant") {
  ChirpParams chirp = default_chirp();
  chirp.bandwidth_hz = 0.0;
  const auto k = wavenumber_grid(chirp, 3e8);
  CHECK((k.array() - k[0]).abs().maxCoeff() == 0.0);
}

TEST_CASE("wavenumber_grid is affine in the sample index") {
  const auto k = wavenumber_grid(default_chirp(), 3e8);
  const double step = k[1] - k[0];
  for (int i = 1; i < k.size(); ++i)
    CHECK(std::abs((k[i] - k[i - 1]) - step) < 1e-9 * std::abs(step));
}

TEST_CASE("wavenumber_grid degenerates gracefully at one sample") {
  ChirpParams chirp = default_chirp();
  chirp.num_samples = 1;
  const auto k = wavenumber_grid(chirp, 3e8);
  REQUIRE(k.size() == 1);
  CHECK(k[0] == doctest::Approx(800.0 * M_PI));
}

TEST_CASE("point_response examples") {
  CHECK(std::abs(point_response(800.0 * M_PI, 1.0) - Complex(1, 0)) < 1e-9);
  CHECK(point_response(1234.5, 0.0, 2.5) == Complex(2.5, 0.0));
  CHECK(std::abs(point_response(M_PI, 1.0, 2.0) - Complex(-2, 0)) < 1e-12);
}

TEST_CASE("point_response: phase additivity along concatenated paths") {
  const double k = 2722.0;
  for (double r1 : {0.1, 1.7, 3.9})
    for (double r2 : {0.05, 2.2}) {
      const Complex combined = point_response(k, r1 + r2, 1.5);
      const Complex split = point_response(k, r1, 1.0) * point_response(k, r2, 1.5);
      CHECK(std::abs(combined - split) < 1e-12 * std::abs(combined));
    }
}

TEST_CASE("add_awgn: no-noise sentinel leaves the cube unchanged") {
  DataCube cube;
  cube.chirp = default_chirp();
  cube.samples = Eigen::MatrixXcd::Constant(8, 4, Complex(0.3, -0.7));
  const DataCube out = add_awgn(cube, kNoNoise, 123);
  CHECK(out.samples == cube.samples);
}

TEST_CASE("add_awgn is deterministic per seed") {
  DataCube cube;
  cube.chirp = default_chirp();
  cube.samples = Eigen::MatrixXcd::Constant(16, 8, Complex(1, 0));
  const DataCube a = add_awgn(cube, 20.0, 99);
  const DataCube b = add_awgn(cube, 20.0, 99);
  CHECK(a.samples == b.samples);
  const DataCube c = add_awgn(cube, 20.0, 100);
  CHECK(a.samples != c.samples);
}

TEST_CASE("add_awgn rejects an all-zero cube") {
  DataCube cube;
  cube.chirp = default_chirp();
  cube.samples = Eigen::MatrixXcd::Zero(4, 4);
  CHECK_THROWS_WITH_AS(add_awgn(cube, 20.0, 1), "add_awgn: SNR undefined for zero signal",
                       std::invalid_argument);
}

TEST_CASE("add_awgn: empirical noise variance matches 20 dB on a unit-power cube") {
  DataCube cube;
  cube.chirp = default_chirp();
  cube.samples = Eigen::MatrixXcd::Constant(1000, 1000, Complex(1, 0));
  const DataCube noisy = add_awgn(cube, 20.0, 7);
  const double variance =
      (noisy.samples - cube.samples).squaredNorm() / static_cast<double>(cube.samples.size());
  CHECK(variance == doctest::Approx(0.01).epsilon(0.01));
}

TEST_CASE("add_awgn: two seeds give a zero-mean difference") {
  DataCube cube;
  cube.chirp = default_chirp();
  cube.samples = Eigen::MatrixXcd::Constant(1000, 1000, Complex(1, 0));
  const DataCube a = add_awgn(cube, 20.0, 1);
  const DataCube b = add_awgn(cube, 20.0, 2);
  const Complex mean = (a.samples - b.samples).mean();
  const double sigma = 0.1;  // sqrt of the 20 dB noise variance on unit power
  CHECK(std::abs(mean) < 5.0 * sigma / 1000.0);
}
