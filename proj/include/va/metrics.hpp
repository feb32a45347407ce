#pragma once

#include <vector>

#include "va/core.hpp"
#include "va/imaging.hpp"

namespace va {

/// 1D magnitude profile along some path through the image.
struct AzimuthCut {
  std::vector<double> coordinates;  // meters along the cut, strictly increasing
  std::vector<double> magnitudes;
};

enum class CutDirection { Row, Column, IsoRange };

inline double rar_resolution(double range, double wavelength, double aperture) {
  return range * wavelength / aperture;
}

inline double sar_resolution(double wavelength, double synthetic_aperture) {
  return wavelength / (2.0 * synthetic_aperture);
}

/// 2 D^2 / lambda with D the element-center span (N-1)*d.
inline double fraunhofer_distance(double aperture_span, double wavelength) {
  return 2.0 * aperture_span * aperture_span / wavelength;
}

Vec2 peak_location(const ImageGrid& image);

/// Profile through the peak pixel. Row/Column walk the grid axes; IsoRange
/// follows the constant-delay ellipse with foci `focus_a`/`focus_b` (the
/// azimuth direction of a two-station geometry), sampled bilinearly at
/// `step` intervals of arc length. Coordinates are signed distance from the
/// peak.
AzimuthCut extract_cut(const ImageGrid& image, CutDirection direction,
                       const Vec2& focus_a = Vec2(0, 0), const Vec2& focus_b = Vec2(0, 0),
                       double step = 0.0);

/// Points along the constant (|q - focus_a| + |q - focus_b|) contour passing
/// through `through`, spaced `step` apart in arc length and covering
/// [-half_extent, half_extent] around it. Coincident foci walk the circle
/// about them. Optionally returns the signed arc-length coordinates, which
/// match the points index-for-index.
std::vector<Vec2> iso_range_points(const Vec2& focus_a, const Vec2& focus_b, const Vec2& through,
                                   double half_extent, double step,
                                   std::vector<double>* coordinates = nullptr);

/// Width of the contiguous region around the global peak where the
/// magnitude stays above peak * 10^(level_db/20), crossings interpolated.
double mainlobe_width(const AzimuthCut& cut, double level_db = -3.0);

/// Peak sidelobe ratio in dB (negative): highest local maximum outside the
/// main lobe, which is excised between the first minima flanking the peak.
double pslr(const AzimuthCut& cut);

}  // namespace va
