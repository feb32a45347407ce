#pragma once

#include <Eigen/Dense>
#include <vector>

#include "va/core.hpp"
#include "va/forward.hpp"
#include "va/ris.hpp"
#include "va/signal.hpp"

namespace va {

/// Rectangular pixel lattice; origin is the lower-left pixel center.
struct GridSpec {
  Vec2 origin{0.0, 0.0};
  double dx = 0.0, dy = 0.0;
  int nx = 0, ny = 0;

  void validate() const;
  Vec2 pixel_center(int ix, int iy) const { return origin + Vec2(ix * dx, iy * dy); }
};

struct ImageGrid {
  GridSpec spec;
  Eigen::MatrixXcd values;  // nx x ny, complex accumulator per pixel

  Vec2 pixel_center(int ix, int iy) const { return spec.pixel_center(ix, iy); }
  Eigen::MatrixXd magnitude() const { return values.cwiseAbs(); }
};

struct SubregionPlan {
  struct Block {
    int ix0 = 0, iy0 = 0;
    int nx = 0, ny = 0;
    Vec2 center{0.0, 0.0};
  };
  std::vector<Block> blocks;
  int gx = 0, gy = 0;
};

/// Relative floor for the filter-energy equalization in the backprojection
/// routines. Each pixel divides its correlation by the l2 norm of its own
/// filter so magnitudes compare across pixels (the best-matching pixel wins),
/// but never by less than this fraction of the strongest filter on the grid,
/// which keeps weakly illuminated pixels from amplifying into false
/// highlights. The ratio is deliberately small: any pixel whose filter energy
/// sits above it is exactly equalized, and clamped pixels stay bounded by the
/// data norm, so the floor only suppresses the model-starved fringe of the
/// grid.
inline constexpr double kFilterEnergyFloor = 0.05;

/// Matched-filter response sampled at arbitrary points instead of a pixel
/// lattice. `raw` holds the complex correlations before equalization and
/// `norms` the l2 norm of each point's filter.
struct PointResponse {
  std::vector<Complex> raw;
  std::vector<double> norms;

  /// Equalized magnitudes |raw| / max(norm, floor_ratio * max norm).
  std::vector<double> magnitudes(double floor_ratio = kFilterEnergyFloor) const;
};

/// Phase de-ramp by a known path offset: y'(i, m) = y(i, m) * exp(+j k_i r0).
DataCube focus(const DataCube& cube, double r0, const Eigen::VectorXd& wavenumbers);

/// Closed form of sum_{n=0}^{N-1} exp(-j k n d delta); returns N at the
/// 2*pi-periodic zeros of k*d*delta instead of dividing by zero.
Complex dirichlet_profile(double k, int num_elements, double spacing, double delta);

/// Per-pixel matched filter: the correlation sum_{i,m} y(i,m) * conj(model
/// echo of a unit target at q under the same program), divided by the filter
/// energy with the kFilterEnergyFloor floor. `filter_mode` selects the
/// propagation model inside the filter, independent of how the data were made.
ImageGrid backproject(const DataCube& cube, const Scene& scene, const RisProgram& program,
                      const GridSpec& grid, PropagationMode filter_mode);

/// Same response as backproject, evaluated at free points (`raw` keeps the
/// un-equalized correlations so callers choose the normalization).
PointResponse backproject_points(const DataCube& cube, const Scene& scene,
                                 const RisProgram& program, const std::vector<Vec2>& points,
                                 PropagationMode filter_mode);

/// Matched filter for the moving-radar baseline cube, equalized like
/// backproject (the SAR filter energy is position-independent, so the
/// equalization reduces to a global scale).
ImageGrid backproject_sar(const DataCube& cube, const std::vector<Vec2>& radar_positions,
                          const GridSpec& grid, double c = kDefaultSpeedOfLight);

PointResponse backproject_sar_points(const DataCube& cube,
                                     const std::vector<Vec2>& radar_positions,
                                     const std::vector<Vec2>& points,
                                     double c = kDefaultSpeedOfLight);

SubregionPlan subregion_centers(const GridSpec& grid, int gx, int gy);

/// Block-wise backprojection: each block's matched filter carries a Gaussian
/// element taper referenced at the block center. `window_override` replaces
/// the per-block taper with a fixed one (e.g. all-ones to disable tapering).
ImageGrid backproject_subregions(const DataCube& cube, const Scene& scene,
                                 const RisProgram& base_program, const SubregionPlan& plan,
                                 const GridSpec& grid, PropagationMode filter_mode,
                                 const Eigen::VectorXd* window_override = nullptr);

}  // namespace va
