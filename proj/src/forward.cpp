#include "va/forward.hpp"

#include <cmath>

namespace va {
namespace detail {

WavenumberRamp WavenumberRamp::from(const ChirpParams& chirp, double c) {
  WavenumberRamp ramp;
  const double two_pi = 2.0 * M_PI;
  ramp.k0 = two_pi * chirp.carrier_hz / c;
  ramp.dk = (chirp.num_samples > 1)
                ? two_pi * chirp.chirp_rate() * (chirp.duration_s / (chirp.num_samples - 1)) / c
                : 0.0;
  return ramp;
}

void add_phase_ramp(Eigen::VectorXcd& col, Complex coeff, double path,
                    const WavenumberRamp& ramp) {
  const Complex start = coeff * std::polar(1.0, -ramp.k0 * path);
  double cr = start.real(), ci = start.imag();
  const double sr = std::cos(-ramp.dk * path), si = std::sin(-ramp.dk * path);
  Complex* out = col.data();
  const Eigen::Index n = col.size();
  for (Eigen::Index i = 0; i < n; ++i) {
    out[i] += Complex(cr, ci);
    const double t = cr * sr - ci * si;
    ci = cr * si + ci * sr;
    cr = t;
  }
}

Complex correlate_phase_ramp(const Eigen::Ref<const Eigen::VectorXcd>& col, double path,
                             const WavenumberRamp& ramp) {
  double cr = std::cos(ramp.k0 * path), ci = std::sin(ramp.k0 * path);
  const double sr = std::cos(ramp.dk * path), si = std::sin(ramp.dk * path);
  double acc_r = 0.0, acc_i = 0.0;
  const Complex* y = col.data();
  const Eigen::Index n = col.size();
  for (Eigen::Index i = 0; i < n; ++i) {
    const double yr = y[i].real(), yi = y[i].imag();
    acc_r += yr * cr - yi * ci;
    acc_i += yr * ci + yi * cr;
    const double t = cr * sr - ci * si;
    ci = cr * si + ci * sr;
    cr = t;
  }
  return {acc_r, acc_i};
}

PathModel::PathModel(const Scene& s, PropagationMode m) : scene(&s), mode(m) {
  const int n_el = s.ris.num_elements;
  radar_to_element.resize(n_el);
  for (int n = 0; n < n_el; ++n) {
    radar_to_element[n] = (s.radar - s.ris.element(n)).norm();
    if (radar_to_element[n] == 0.0)
      throw std::invalid_argument("scene: radar coincides with a RIS element");
  }
  const Vec2 x0 = s.ris.element(0);
  cos_incident = s.ris.direction.dot(x0 - s.radar) / radar_to_element[0];
}

PathModel::PointGeometry PathModel::at(const Vec2& point) const {
  PointGeometry g;
  g.closing = (point - scene->radar).norm();
  if (mode == PropagationMode::FarFieldPlanar) {
    const Vec2 x0 = scene->ris.element(0);
    const Vec2 to_point = point - x0;
    const double s0 = to_point.norm();
    const double cos_scatter = scene->ris.direction.dot(to_point) / s0;
    g.base = radar_to_element[0] + s0 + g.closing;
    g.per_element = scene->ris.spacing * (cos_incident - cos_scatter);
  } else {
    g.base = g.closing;
  }
  return g;
}

}  // namespace detail

DataCube synthesize_ris_echo(const Scene& scene, const RisProgram& program,
                             const ChirpParams& chirp, PropagationMode mode) {
  chirp.validate();
  if (program.num_elements() != scene.ris.num_elements)
    throw std::invalid_argument("synthesize_ris_echo: program/array element count mismatch");
  if (scene.targets.empty())
    throw std::invalid_argument("synthesize_ris_echo: scene has no targets");

  const detail::PathModel model(scene, mode);
  const auto ramp = detail::WavenumberRamp::from(chirp, scene.speed_of_light);
  const int m_len = program.slow_len();
  const int n_el = scene.ris.num_elements;

  DataCube cube;
  cube.chirp = chirp;
  cube.samples.setZero(chirp.num_samples, m_len);

  Eigen::VectorXcd col(chirp.num_samples);
  for (int m = 0; m < m_len; ++m) {
    col.setZero();
    for (const Target& target : scene.targets) {
      const auto geom = model.at(target.position);
      for (int n = 0; n < n_el; ++n) {
        Complex coeff = target.reflectivity * chirp.amplitude * program.window[n];
        double path = model.path(geom, target.position, n);
        if (program.frequency_dependent)
          path += program.extra_path(m, n);
        else
          coeff *= std::polar(1.0, -program.carrier_wavenumber * program.extra_path(m, n));
        detail::add_phase_ramp(col, coeff, path, ramp);
      }
    }
    cube.samples.col(m) = col;
  }
  return cube;
}

DataCube synthesize_sar_echo(const std::vector<Target>& targets, const ChirpParams& chirp,
                             const std::vector<Vec2>& radar_positions, double c) {
  chirp.validate();
  if (radar_positions.empty())
    throw std::invalid_argument("synthesize_sar_echo: no radar positions");
  const auto ramp = detail::WavenumberRamp::from(chirp, c);

  DataCube cube;
  cube.chirp = chirp;
  cube.samples.setZero(chirp.num_samples, static_cast<Eigen::Index>(radar_positions.size()));

  Eigen::VectorXcd col(chirp.num_samples);
  for (std::size_t m = 0; m < radar_positions.size(); ++m) {
    col.setZero();
    for (const Target& target : targets) {
      const double round_trip = 2.0 * (radar_positions[m] - target.position).norm();
      detail::add_phase_ramp(col, target.reflectivity * chirp.amplitude, round_trip, ramp);
    }
    cube.samples.col(static_cast<Eigen::Index>(m)) = col;
  }
  return cube;
}

}  // namespace va
