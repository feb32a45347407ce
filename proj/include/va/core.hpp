#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <vector>

namespace va {

using Vec2 = Eigen::Vector2d;
using Complex = std::complex<double>;

/// Propagation speed used throughout unless a scene overrides it.
/// 3.0e8 rather than the CODATA value: the half-wavelength element
/// spacing and the published aperture figures assume round numbers.
inline constexpr double kDefaultSpeedOfLight = 3.0e8;

/// Uniform linear array of reflecting elements, centered on `center`
/// and laid out along the unit vector `direction`.
struct RisArray {
  Vec2 center;
  Vec2 direction;  // unit vector along the element line
  int num_elements = 1;
  double spacing = 0.0;  // meters between adjacent elements

  RisArray(Vec2 c, Vec2 dir, int n, double d);

  /// Position of element n, for n in [0, num_elements).
  Vec2 element(int n) const {
    return center + (n - 0.5 * (num_elements - 1)) * spacing * direction;
  }
  double aperture_span() const { return (num_elements - 1) * spacing; }
};

struct Target {
  Vec2 position;
  Complex reflectivity{1.0, 0.0};
};

struct Scene {
  Vec2 radar;
  RisArray ris;
  std::vector<Target> targets;
  double speed_of_light = kDefaultSpeedOfLight;
};

std::vector<Vec2> element_positions(const RisArray& ris);

/// Reflection of p across the infinite line through ris.center with
/// direction ris.direction. Involution: mirror(mirror(p)) == p.
Vec2 mirror_point(const Vec2& p, const RisArray& ris);

inline double path_length(const Vec2& a, const Vec2& b) { return (a - b).norm(); }

}  // namespace va
