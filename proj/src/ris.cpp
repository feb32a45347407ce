#include "va/ris.hpp"

#include <cmath>

namespace va {

namespace {
Vec2 normal_of(const Vec2& direction) { return Vec2(-direction.y(), direction.x()); }
}  // namespace

VirtualTrajectory virtual_arc(const Vec2& radar, const RisArray& ris, double span_radians,
                              int num_positions) {
  if (num_positions < 1) throw std::invalid_argument("virtual_arc: need at least one position");
  if (span_radians < 0) throw std::invalid_argument("virtual_arc: span must be non-negative");
  const double radius = path_length(radar, ris.center);
  if (radius <= 0) throw std::invalid_argument("virtual_arc: degenerate radius");

  const Vec2 axis = ris.direction;
  const Vec2 normal = normal_of(axis);
  const Vec2 mirror_rel = mirror_point(radar, ris) - ris.center;
  const double theta_mirror = std::atan2(mirror_rel.dot(normal), mirror_rel.dot(axis));

  VirtualTrajectory traj;
  traj.arc_center = ris.center;
  traj.radius = radius;
  traj.span = span_radians;
  traj.positions.reserve(num_positions);
  for (int m = 0; m < num_positions; ++m) {
    const double frac = (num_positions > 1) ? static_cast<double>(m) / (num_positions - 1) : 0.5;
    const double theta = theta_mirror + span_radians * (frac - 0.5);
    traj.positions.push_back(ris.center +
                             radius * (std::cos(theta) * axis + std::sin(theta) * normal));
  }
  return traj;
}

Eigen::VectorXd hamming_weights(int n) {
  Eigen::VectorXd w(n);
  if (n == 1) {
    w[0] = 1.0;
    return w;
  }
  for (int i = 0; i < n; ++i) w[i] = 0.54 - 0.46 * std::cos(2.0 * M_PI * i / (n - 1));
  return w;
}

Eigen::VectorXd gaussian_window(const RisArray& ris, const Vec2& radar, const Vec2& reference) {
  const int n = ris.num_elements;
  const double closing = path_length(reference, radar);
  Eigen::VectorXd l(n);
  for (int i = 0; i < n; ++i) {
    const Vec2 x = ris.element(i);
    if (path_length(x, reference) == 0.0)
      throw std::invalid_argument("gaussian_window: reference coincides with an element");
    l[i] = path_length(radar, x) + path_length(x, reference) + closing;
  }
  const double mean = l.mean();
  const double variance = (l.array() - mean).square().mean();  // population
  Eigen::VectorXd w(n);
  if (variance == 0.0) {
    w.setOnes();
    return w;
  }
  w = (-(l.array() - mean).square() / (2.0 * variance)).exp();
  w /= w.maxCoeff();  // passive surface: peak weight 1
  return w;
}

RisProgram far_field_program(const RisArray& ris, const std::vector<double>& steering,
                             const WindowSpec& window, double carrier_wavenumber) {
  if (window.kind == WindowKind::GaussianNearField)
    throw std::invalid_argument("far_field_program: Gaussian window is a near-field construct");
  RisProgram prog;
  prog.mode = ProgramMode::FarFieldLinear;
  prog.window_spec = window;
  prog.carrier_wavenumber = carrier_wavenumber;
  prog.window = (window.kind == WindowKind::Hamming)
                    ? hamming_weights(ris.num_elements)
                    : Eigen::VectorXd::Ones(ris.num_elements).eval();
  const int m_len = static_cast<int>(steering.size());
  prog.extra_path.resize(m_len, ris.num_elements);
  for (int m = 0; m < m_len; ++m)
    for (int n = 0; n < ris.num_elements; ++n)
      prog.extra_path(m, n) = n * ris.spacing * steering[m];
  return prog;
}

RisProgram near_field_program(const RisArray& ris, const Vec2& radar,
                              const VirtualTrajectory& trajectory,
                              const std::optional<Eigen::VectorXd>& window,
                              double carrier_wavenumber) {
  if (trajectory.positions.empty())
    throw std::invalid_argument("near_field_program: empty trajectory");
  if (window && window->size() != ris.num_elements)
    throw std::invalid_argument("near_field_program: window size mismatch");
  RisProgram prog;
  prog.mode = ProgramMode::NearFieldMirror;
  prog.trajectory = trajectory;
  prog.carrier_wavenumber = carrier_wavenumber;
  prog.window_spec.kind = window ? WindowKind::GaussianNearField : WindowKind::Rectangular;
  prog.window = window ? *window : Eigen::VectorXd::Ones(ris.num_elements).eval();
  const int m_len = static_cast<int>(trajectory.positions.size());
  prog.extra_path.resize(m_len, ris.num_elements);
  for (int m = 0; m < m_len; ++m) {
    const Vec2& v = trajectory.positions[m];
    for (int n = 0; n < ris.num_elements; ++n) {
      const Vec2 x = ris.element(n);
      prog.extra_path(m, n) = path_length(v, x) - path_length(radar, x);
    }
  }
  return prog;
}

std::vector<double> steering_from_trajectory(const Vec2& radar, const RisArray& ris,
                                             const VirtualTrajectory& trajectory) {
  const Vec2 mirror_rel = mirror_point(radar, ris) - ris.center;
  const double cos_mirror = ris.direction.dot(mirror_rel) / mirror_rel.norm();
  std::vector<double> steering;
  steering.reserve(trajectory.positions.size());
  for (const Vec2& v : trajectory.positions) {
    const Vec2 rel = v - ris.center;
    steering.push_back(ris.direction.dot(rel) / rel.norm() - cos_mirror);
  }
  return steering;
}

}  // namespace va
