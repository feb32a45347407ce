#pragma once

#include <Eigen/Dense>
#include <vector>

#include "va/core.hpp"
#include "va/ris.hpp"
#include "va/signal.hpp"

namespace va {

enum class PropagationMode {
  ExactSpherical,  // true spherical wavefronts, per-element norms
  FarFieldPlanar   // first-order planar expansion about element 0
};

namespace detail {

/// Affine wavenumber sweep k_i = k0 + dk * i.
struct WavenumberRamp {
  double k0 = 0.0;
  double dk = 0.0;
  static WavenumberRamp from(const ChirpParams& chirp, double c);
};

/// col += coeff * exp(-j * k_i * path) for every fast-time sample.
void add_phase_ramp(Eigen::VectorXcd& col, Complex coeff, double path, const WavenumberRamp& ramp);

/// sum_i col[i] * exp(+j * k_i * path) — the matched-filter inner product
/// against a unit-amplitude ramp of the given path length.
Complex correlate_phase_ramp(const Eigen::Ref<const Eigen::VectorXcd>& col, double path,
                             const WavenumberRamp& ramp);

/// Geometric path radar -> element n -> point -> radar under either
/// propagation model. Per-element radar distances are passed in to avoid
/// recomputing them across pixels/targets.
struct PathModel {
  const Scene* scene = nullptr;
  PropagationMode mode = PropagationMode::ExactSpherical;
  Eigen::VectorXd radar_to_element;  // r_n
  double cos_incident = 0.0;         // planar: projection of incoming ray on the array axis

  PathModel(const Scene& s, PropagationMode m);

  /// Planar-model quantities that depend only on the scatter point.
  struct PointGeometry {
    double closing = 0.0;     // |point - radar|
    double base = 0.0;        // exact: closing; planar: r0 + s0 + closing
    double per_element = 0.0; // planar: d * (cos_incident - cos_scatter)
  };
  PointGeometry at(const Vec2& point) const;

  double path(const PointGeometry& g, const Vec2& point, int n) const {
    if (mode == PropagationMode::FarFieldPlanar) return g.base + n * g.per_element;
    return radar_to_element[n] + (scene->ris.element(n) - point).norm() + g.closing;
  }
};

}  // namespace detail

/// Dechirped echo of the scene through the programmed surface: one bounce
/// radar -> RIS -> target -> radar, summed over elements and targets.
DataCube synthesize_ris_echo(const Scene& scene, const RisProgram& program,
                             const ChirpParams& chirp, PropagationMode mode);

/// Monostatic moving-radar baseline: round trip 2|q_m - target| per position.
DataCube synthesize_sar_echo(const std::vector<Target>& targets, const ChirpParams& chirp,
                             const std::vector<Vec2>& radar_positions,
                             double c = kDefaultSpeedOfLight);

}  // namespace va
