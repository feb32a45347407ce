#include "va/metrics.hpp"

#include <algorithm>
#include <cmath>

namespace va {

namespace {

struct PeakPixel {
  int ix = 0, iy = 0;
  double value = 0.0;
};

PeakPixel find_peak(const ImageGrid& image) {
  PeakPixel best;
  bool any = false;
  // ties resolve toward the smallest (ix, iy) lexicographically
  for (int ix = 0; ix < image.spec.nx; ++ix)
    for (int iy = 0; iy < image.spec.ny; ++iy) {
      const double v = std::abs(image.values(ix, iy));
      if (!any || v > best.value) {
        best = {ix, iy, v};
        any = true;
      }
    }
  if (best.value == 0.0) throw std::invalid_argument("peak_location: all-zero image");
  return best;
}

double bilinear_magnitude(const ImageGrid& image, const Vec2& q) {
  const auto& g = image.spec;
  const double fx = (q.x() - g.origin.x()) / g.dx;
  const double fy = (q.y() - g.origin.y()) / g.dy;
  const int ix = std::clamp(static_cast<int>(std::floor(fx)), 0, g.nx - 2);
  const int iy = std::clamp(static_cast<int>(std::floor(fy)), 0, g.ny - 2);
  const double tx = fx - ix, ty = fy - iy;
  auto mag = [&](int a, int b) { return std::abs(image.values(a, b)); };
  return (1 - tx) * (1 - ty) * mag(ix, iy) + tx * (1 - ty) * mag(ix + 1, iy) +
         (1 - tx) * ty * mag(ix, iy + 1) + tx * ty * mag(ix + 1, iy + 1);
}

bool inside(const GridSpec& g, const Vec2& q) {
  return q.x() >= g.origin.x() && q.y() >= g.origin.y() &&
         q.x() <= g.origin.x() + (g.nx - 1) * g.dx && q.y() <= g.origin.y() + (g.ny - 1) * g.dy;
}

// One arc-length step along the constant (|q-fa| + |q-fb|) contour, with a
// Newton correction back onto the level set.
Vec2 iso_range_step(const Vec2& q, const Vec2& fa, const Vec2& fb, double level, double step,
                    bool forward) {
  auto gradient = [&](const Vec2& p) -> Vec2 {
    return (p - fa).normalized() + (p - fb).normalized();
  };
  Vec2 grad = gradient(q);
  Vec2 tangent(-grad.y(), grad.x());
  tangent.normalize();
  Vec2 next = q + (forward ? step : -step) * tangent;
  for (int it = 0; it < 3; ++it) {
    grad = gradient(next);
    const double err = (next - fa).norm() + (next - fb).norm() - level;
    next -= (err / grad.squaredNorm()) * grad;
  }
  return next;
}

}  // namespace

Vec2 peak_location(const ImageGrid& image) {
  const PeakPixel p = find_peak(image);
  return image.pixel_center(p.ix, p.iy);
}

AzimuthCut extract_cut(const ImageGrid& image, CutDirection direction, const Vec2& focus_a,
                       const Vec2& focus_b, double step) {
  const PeakPixel p = find_peak(image);
  const auto& g = image.spec;
  AzimuthCut cut;

  if (direction == CutDirection::Row) {
    for (int ix = 0; ix < g.nx; ++ix) {
      cut.coordinates.push_back(g.origin.x() + ix * g.dx);
      cut.magnitudes.push_back(std::abs(image.values(ix, p.iy)));
    }
    return cut;
  }
  if (direction == CutDirection::Column) {
    for (int iy = 0; iy < g.ny; ++iy) {
      cut.coordinates.push_back(g.origin.y() + iy * g.dy);
      cut.magnitudes.push_back(std::abs(image.values(p.ix, iy)));
    }
    return cut;
  }

  const Vec2 q0 = image.pixel_center(p.ix, p.iy);
  const Vec2 grad0 = (q0 - focus_a).normalized() + (q0 - focus_b).normalized();
  if (grad0.norm() < 1e-9)
    throw std::invalid_argument("extract_cut: degenerate iso-range geometry at the peak");
  if (step <= 0) step = 0.5 * std::min(g.dx, g.dy);
  const double level = (q0 - focus_a).norm() + (q0 - focus_b).norm();

  std::vector<std::pair<double, double>> samples{{0.0, std::abs(image.values(p.ix, p.iy))}};
  for (int sign = 0; sign < 2; ++sign) {
    Vec2 q = q0;
    for (int i = 1;; ++i) {
      q = iso_range_step(q, focus_a, focus_b, level, step, sign == 0);
      if (!inside(g, q)) break;
      samples.emplace_back((sign == 0 ? 1.0 : -1.0) * i * step, bilinear_magnitude(image, q));
    }
  }
  std::sort(samples.begin(), samples.end());
  for (const auto& [coord, mag] : samples) {
    cut.coordinates.push_back(coord);
    cut.magnitudes.push_back(mag);
  }
  return cut;
}

std::vector<Vec2> iso_range_points(const Vec2& focus_a, const Vec2& focus_b, const Vec2& through,
                                   double half_extent, double step,
                                   std::vector<double>* coordinates) {
  if (!(step > 0.0) || !(half_extent >= step))
    throw std::invalid_argument("iso_range_points: need step > 0 and half_extent >= step");
  const Vec2 grad0 = (through - focus_a).normalized() + (through - focus_b).normalized();
  if (grad0.norm() < 1e-9)
    throw std::invalid_argument("iso_range_points: degenerate geometry at the through point");
  const double level = (through - focus_a).norm() + (through - focus_b).norm();
  const int half_count = static_cast<int>(std::floor(half_extent / step + 1e-9));

  std::vector<Vec2> points(2 * half_count + 1);
  std::vector<double> coords(2 * half_count + 1);
  points[half_count] = through;
  coords[half_count] = 0.0;
  for (int sign = 0; sign < 2; ++sign) {
    Vec2 q = through;
    for (int i = 1; i <= half_count; ++i) {
      q = iso_range_step(q, focus_a, focus_b, level, step, sign == 0);
      const int idx = sign == 0 ? half_count + i : half_count - i;
      points[idx] = q;
      coords[idx] = (sign == 0 ? 1.0 : -1.0) * i * step;
    }
  }
  if (coordinates) *coordinates = std::move(coords);
  return points;
}

double mainlobe_width(const AzimuthCut& cut, double level_db) {
  const std::size_t n = cut.magnitudes.size();
  if (n < 3 || cut.coordinates.size() != n)
    throw std::invalid_argument("mainlobe_width: cut too short");
  const std::size_t peak =
      std::max_element(cut.magnitudes.begin(), cut.magnitudes.end()) - cut.magnitudes.begin();
  if (peak == 0 || peak == n - 1)
    throw std::invalid_argument("mainlobe_width: peak at cut endpoint");
  const double threshold = cut.magnitudes[peak] * std::pow(10.0, level_db / 20.0);

  auto crossing = [&](std::size_t inner, std::size_t outer) {
    const double m0 = cut.magnitudes[inner], m1 = cut.magnitudes[outer];
    const double t = (m0 - threshold) / (m0 - m1);
    return cut.coordinates[inner] + t * (cut.coordinates[outer] - cut.coordinates[inner]);
  };

  double left = 0.0, right = 0.0;
  bool found_left = false, found_right = false;
  for (std::size_t j = peak + 1; j < n; ++j)
    if (cut.magnitudes[j] < threshold) {
      right = crossing(j - 1, j);
      found_right = true;
      break;
    }
  for (std::size_t j = peak; j-- > 0;)
    if (cut.magnitudes[j] < threshold) {
      left = crossing(j + 1, j);
      found_left = true;
      break;
    }
  if (!found_left || !found_right)
    throw std::runtime_error("mainlobe_width: main lobe exceeds cut extent");
  return right - left;
}

double pslr(const AzimuthCut& cut) {
  const std::size_t n = cut.magnitudes.size();
  if (n < 3 || cut.coordinates.size() != n) throw std::invalid_argument("pslr: cut too short");
  const std::size_t peak =
      std::max_element(cut.magnitudes.begin(), cut.magnitudes.end()) - cut.magnitudes.begin();
  if (cut.magnitudes[peak] == 0.0) throw std::invalid_argument("pslr: all-zero cut");

  // excise the main lobe between the first flanking minima
  std::size_t right_edge = n;  // first index past the lobe on the right
  for (std::size_t j = peak + 1; j + 1 < n; ++j)
    if (cut.magnitudes[j] <= cut.magnitudes[j + 1]) {
      right_edge = j + 1;
      break;
    }
  std::size_t left_edge = 0;  // one past the lobe on the left (exclusive, counted down)
  bool has_left = false;
  for (std::size_t j = peak; j-- > 0;)
    if (j == 0) break;
    else if (cut.magnitudes[j] <= cut.magnitudes[j - 1]) {
      left_edge = j;
      has_left = true;
      break;
    }

  double sidelobe = 0.0;
  bool any = false;
  if (has_left)
    for (std::size_t j = 0; j <= left_edge; ++j) {
      sidelobe = std::max(sidelobe, cut.magnitudes[j]);
      any = true;
    }
  if (right_edge < n)
    for (std::size_t j = right_edge; j < n; ++j) {
      sidelobe = std::max(sidelobe, cut.magnitudes[j]);
      any = true;
    }
  if (!any || sidelobe == 0.0) throw std::runtime_error("pslr: no sidelobe found");
  return 20.0 * std::log10(sidelobe / cut.magnitudes[peak]);
}

}  // namespace va
