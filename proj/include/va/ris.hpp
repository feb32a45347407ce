#pragma once

#include <Eigen/Dense>
#include <optional>
#include <vector>

#include "va/core.hpp"

namespace va {

/// Positions a virtual (image) source takes over slow time: an arc around
/// the array center with the radius of the radar-to-array distance.
struct VirtualTrajectory {
  std::vector<Vec2> positions;
  Vec2 arc_center;
  double radius = 0.0;
  double span = 0.0;  // radians
};

enum class WindowKind { Rectangular, Hamming, GaussianNearField };

struct WindowSpec {
  WindowKind kind = WindowKind::Rectangular;
  Vec2 reference_point{0.0, 0.0};  // GaussianNearField only
};

enum class ProgramMode { FarFieldLinear, NearFieldMirror };

/// Per-element reflection coefficients over slow time. Phases are stored as
/// equivalent path lengths (meters): weight(m, n, k) =
/// window[n] * exp(-j * k * extra_path(m, n)), with k either the per-sample
/// wavenumber (true-time-delay behaviour, the default) or the carrier
/// wavenumber when frequency_dependent is off.
struct RisProgram {
  Eigen::MatrixXd extra_path;  // M x N, meters
  Eigen::VectorXd window;      // N amplitude weights in (0, 1]
  VirtualTrajectory trajectory;
  WindowSpec window_spec;
  ProgramMode mode = ProgramMode::FarFieldLinear;
  bool frequency_dependent = true;
  double carrier_wavenumber = 0.0;  // used when !frequency_dependent

  int slow_len() const { return static_cast<int>(extra_path.rows()); }
  int num_elements() const { return static_cast<int>(extra_path.cols()); }

  Complex weight(int m, int n, double k) const {
    const double keff = frequency_dependent ? k : carrier_wavenumber;
    return std::polar(window[n], -keff * extra_path(m, n));
  }
};

VirtualTrajectory virtual_arc(const Vec2& radar, const RisArray& ris, double span_radians,
                              int num_positions);

Eigen::VectorXd hamming_weights(int n);

/// Gaussian taper over the round-trip sampling points
/// l_n = |radar - x_n| + |x_n - p| + |p - radar|, max-normalized. Population
/// variance of the l_n; a zero spread (e.g. N = 1) degenerates to all ones.
Eigen::VectorXd gaussian_window(const RisArray& ris, const Vec2& radar, const Vec2& reference);

/// Linear phase progression exp(-j k n d phi_m) per steering value phi_m.
RisProgram far_field_program(const RisArray& ris, const std::vector<double>& steering,
                             const WindowSpec& window, double carrier_wavenumber = 0.0);

/// True-time-delay emulation of a source at each trajectory position:
/// extra_path(m, n) = |v_m - x_n| - |radar - x_n|, zero at the mirror point.
RisProgram near_field_program(const RisArray& ris, const Vec2& radar,
                              const VirtualTrajectory& trajectory,
                              const std::optional<Eigen::VectorXd>& window = std::nullopt,
                              double carrier_wavenumber = 0.0);

/// Steering values phi_m = cos(theta_m) - cos(theta_mirror) for the arc
/// angles about the array center, measured from the array direction frame.
std::vector<double> steering_from_trajectory(const Vec2& radar, const RisArray& ris,
                                             const VirtualTrajectory& trajectory);

}  // namespace va
