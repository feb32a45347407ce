#include "va/imaging.hpp"

#include <algorithm>
#include <cmath>

namespace va {

void GridSpec::validate() const {
  if (nx < 1 || ny < 1) throw std::invalid_argument("grid: empty grid");
  if (!(dx > 0) || !(dy > 0)) throw std::invalid_argument("grid: pixel pitch must be positive");
  if (!origin.allFinite()) throw std::invalid_argument("grid: non-finite origin");
}

DataCube focus(const DataCube& cube, double r0, const Eigen::VectorXd& wavenumbers) {
  if (r0 < 0) throw std::invalid_argument("focus: r0 must be non-negative");
  if (wavenumbers.size() != cube.fast_len())
    throw std::invalid_argument("focus: wavenumber grid length mismatch");
  DataCube out = cube;
  for (int i = 0; i < out.fast_len(); ++i)
    out.samples.row(i) *= std::polar(1.0, wavenumbers[i] * r0);
  return out;
}

Complex dirichlet_profile(double k, int num_elements, double spacing, double delta) {
  if (num_elements < 1) throw std::invalid_argument("dirichlet_profile: N must be >= 1");
  const double x = std::remainder(k * spacing * delta, 2.0 * M_PI);
  if (std::abs(x) < 1e-12) return {static_cast<double>(num_elements), 0.0};
  return (1.0 - std::polar(1.0, -num_elements * x)) / (1.0 - std::polar(1.0, -x));
}

std::vector<double> PointResponse::magnitudes(double floor_ratio) const {
  double max_norm = 0.0;
  for (double n : norms) max_norm = std::max(max_norm, n);
  const double floor = floor_ratio * max_norm;
  std::vector<double> out;
  out.reserve(raw.size());
  for (std::size_t i = 0; i < raw.size(); ++i)
    out.push_back(floor > 0.0 ? std::abs(raw[i]) / std::max(norms[i], floor) : std::abs(raw[i]));
  return out;
}

namespace {

struct PointAccum {
  Complex raw{0.0, 0.0};
  double norm = 0.0;
};

// Correlation of the cube against the model echo of a unit target at q, plus
// the l2 norm of that model. `column` is caller-provided scratch of fast_len.
PointAccum point_response_accum(const DataCube& cube, const detail::PathModel& model,
                                const detail::WavenumberRamp& ramp, const RisProgram& program,
                                const Vec2& q, Eigen::VectorXcd& column) {
  const auto geom = model.at(q);
  const int n_el = program.num_elements();
  const double amp = cube.chirp.amplitude;
  PointAccum out;
  double norm2 = 0.0;
  for (int m = 0; m < cube.slow_len(); ++m) {
    column.setZero();
    for (int n = 0; n < n_el; ++n) {
      Complex coeff = amp * program.window[n];
      double path = model.path(geom, q, n);
      if (program.frequency_dependent)
        path += program.extra_path(m, n);
      else
        coeff *= std::polar(1.0, -program.carrier_wavenumber * program.extra_path(m, n));
      detail::add_phase_ramp(column, coeff, path, ramp);
    }
    out.raw += column.dot(cube.samples.col(m));  // sum_i y * conj(model)
    norm2 += column.squaredNorm();
  }
  out.norm = std::sqrt(norm2);
  return out;
}

// Shared pixel loop: raw matched-filter response and filter norm of `program`
// over the block [ix0, ix0+bnx) x [iy0, iy0+bny).
void backproject_block(ImageGrid& image, Eigen::MatrixXd& norms, const DataCube& cube,
                       const Scene& scene, const RisProgram& program, PropagationMode filter_mode,
                       int ix0, int iy0, int bnx, int bny) {
  const detail::PathModel model(scene, filter_mode);
  const auto ramp = detail::WavenumberRamp::from(cube.chirp, scene.speed_of_light);
  Eigen::VectorXcd column(cube.fast_len());
  for (int iy = iy0; iy < iy0 + bny; ++iy) {
    for (int ix = ix0; ix < ix0 + bnx; ++ix) {
      const auto acc =
          point_response_accum(cube, model, ramp, program, image.pixel_center(ix, iy), column);
      image.values(ix, iy) = acc.raw;
      norms(ix, iy) = acc.norm;
    }
  }
}

// Divide every pixel by its filter energy, floored at kFilterEnergyFloor of
// the strongest filter on the grid.
void equalize(ImageGrid& image, const Eigen::MatrixXd& norms) {
  const double floor = kFilterEnergyFloor * norms.maxCoeff();
  if (!(floor > 0.0)) return;
  image.values = image.values.cwiseQuotient(norms.cwiseMax(floor).cast<Complex>());
}

}  // namespace

ImageGrid backproject(const DataCube& cube, const Scene& scene, const RisProgram& program,
                      const GridSpec& grid, PropagationMode filter_mode) {
  grid.validate();
  if (program.num_elements() != scene.ris.num_elements)
    throw std::invalid_argument("backproject: program/array element count mismatch");
  if (program.slow_len() != cube.slow_len())
    throw std::invalid_argument("backproject: program/cube slow-time mismatch");

  ImageGrid image;
  image.spec = grid;
  image.values.setZero(grid.nx, grid.ny);
  Eigen::MatrixXd norms = Eigen::MatrixXd::Zero(grid.nx, grid.ny);
  backproject_block(image, norms, cube, scene, program, filter_mode, 0, 0, grid.nx, grid.ny);
  equalize(image, norms);
  return image;
}

PointResponse backproject_points(const DataCube& cube, const Scene& scene,
                                 const RisProgram& program, const std::vector<Vec2>& points,
                                 PropagationMode filter_mode) {
  if (program.num_elements() != scene.ris.num_elements)
    throw std::invalid_argument("backproject_points: program/array element count mismatch");
  if (program.slow_len() != cube.slow_len())
    throw std::invalid_argument("backproject_points: program/cube slow-time mismatch");
  const detail::PathModel model(scene, filter_mode);
  const auto ramp = detail::WavenumberRamp::from(cube.chirp, scene.speed_of_light);
  Eigen::VectorXcd column(cube.fast_len());
  PointResponse out;
  out.raw.reserve(points.size());
  out.norms.reserve(points.size());
  for (const Vec2& q : points) {
    const auto acc = point_response_accum(cube, model, ramp, program, q, column);
    out.raw.push_back(acc.raw);
    out.norms.push_back(acc.norm);
  }
  return out;
}

ImageGrid backproject_sar(const DataCube& cube, const std::vector<Vec2>& radar_positions,
                          const GridSpec& grid, double c) {
  grid.validate();
  if (static_cast<int>(radar_positions.size()) != cube.slow_len())
    throw std::invalid_argument("backproject_sar: positions/cube slow-time mismatch");
  const auto ramp = detail::WavenumberRamp::from(cube.chirp, c);

  // unit-magnitude ramps: every pixel's filter has the same energy
  const double norm = cube.chirp.amplitude *
                      std::sqrt(static_cast<double>(cube.fast_len()) * cube.slow_len());
  ImageGrid image;
  image.spec = grid;
  image.values.setZero(grid.nx, grid.ny);
  for (int iy = 0; iy < grid.ny; ++iy)
    for (int ix = 0; ix < grid.nx; ++ix) {
      const Vec2 q = grid.pixel_center(ix, iy);
      Complex acc(0.0, 0.0);
      for (int m = 0; m < cube.slow_len(); ++m) {
        const double round_trip = 2.0 * (radar_positions[m] - q).norm();
        acc += cube.chirp.amplitude *
               detail::correlate_phase_ramp(cube.samples.col(m), round_trip, ramp);
      }
      image.values(ix, iy) = norm > 0.0 ? acc / norm : acc;
    }
  return image;
}

PointResponse backproject_sar_points(const DataCube& cube,
                                     const std::vector<Vec2>& radar_positions,
                                     const std::vector<Vec2>& points, double c) {
  if (static_cast<int>(radar_positions.size()) != cube.slow_len())
    throw std::invalid_argument("backproject_sar_points: positions/cube slow-time mismatch");
  const auto ramp = detail::WavenumberRamp::from(cube.chirp, c);
  const double norm = cube.chirp.amplitude *
                      std::sqrt(static_cast<double>(cube.fast_len()) * cube.slow_len());
  PointResponse out;
  out.raw.reserve(points.size());
  out.norms.reserve(points.size());
  for (const Vec2& q : points) {
    Complex acc(0.0, 0.0);
    for (int m = 0; m < cube.slow_len(); ++m) {
      const double round_trip = 2.0 * (radar_positions[m] - q).norm();
      acc += cube.chirp.amplitude *
             detail::correlate_phase_ramp(cube.samples.col(m), round_trip, ramp);
    }
    out.raw.push_back(acc);
    out.norms.push_back(norm);
  }
  return out;
}

SubregionPlan subregion_centers(const GridSpec& grid, int gx, int gy) {
  grid.validate();
  if (gx < 1 || gy < 1 || gx > grid.nx || gy > grid.ny)
    throw std::invalid_argument("subregion_centers: block count must be in [1, pixels]");
  SubregionPlan plan;
  plan.gx = gx;
  plan.gy = gy;
  const int wx = grid.nx / gx, wy = grid.ny / gy;  // remainders go to the last block per axis
  for (int by = 0; by < gy; ++by)
    for (int bx = 0; bx < gx; ++bx) {
      SubregionPlan::Block b;
      b.ix0 = bx * wx;
      b.iy0 = by * wy;
      b.nx = (bx == gx - 1) ? grid.nx - b.ix0 : wx;
      b.ny = (by == gy - 1) ? grid.ny - b.iy0 : wy;
      b.center = grid.origin + Vec2((b.ix0 + 0.5 * (b.nx - 1)) * grid.dx,
                                    (b.iy0 + 0.5 * (b.ny - 1)) * grid.dy);
      plan.blocks.push_back(b);
    }
  return plan;
}

ImageGrid backproject_subregions(const DataCube& cube, const Scene& scene,
                                 const RisProgram& base_program, const SubregionPlan& plan,
                                 const GridSpec& grid, PropagationMode filter_mode,
                                 const Eigen::VectorXd* window_override) {
  grid.validate();
  if (base_program.mode != ProgramMode::NearFieldMirror)
    throw std::invalid_argument("backproject_subregions: base program must be near-field");
  if ((base_program.window.array() != 1.0).any())
    throw std::invalid_argument("backproject_subregions: base program must be unwindowed");
  int covered = 0;
  for (const auto& b : plan.blocks) {
    if (b.ix0 < 0 || b.iy0 < 0 || b.ix0 + b.nx > grid.nx || b.iy0 + b.ny > grid.ny)
      throw std::invalid_argument("backproject_subregions: block outside grid");
    covered += b.nx * b.ny;
  }
  if (covered != grid.nx * grid.ny)
    throw std::invalid_argument("backproject_subregions: plan does not tile the grid");

  ImageGrid image;
  image.spec = grid;
  image.values.setZero(grid.nx, grid.ny);
  Eigen::MatrixXd norms = Eigen::MatrixXd::Zero(grid.nx, grid.ny);
  for (const auto& b : plan.blocks) {
    RisProgram windowed = base_program;
    windowed.window =
        window_override ? *window_override : gaussian_window(scene.ris, scene.radar, b.center);
    windowed.window_spec = WindowSpec{WindowKind::GaussianNearField, b.center};
    backproject_block(image, norms, cube, scene, windowed, filter_mode, b.ix0, b.iy0, b.nx, b.ny);
  }
  equalize(image, norms);
  return image;
}

}  // namespace va
