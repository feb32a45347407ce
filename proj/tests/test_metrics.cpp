#include <doctest.h>

#include <cmath>

#include "va/imaging.hpp"
#include "va/metrics.hpp"

using namespace va;

TEST_CASE("rar_resolution reproduces the published 0.2795 m figure") {
  CHECK(rar_resolution(std::sqrt(5.0), 2.5e-3, 16 * 1.25e-3) ==
        doctest::Approx(0.279508).epsilon(1e-5));
  CHECK(rar_resolution(1.7, 2 * 2.5e-3, 0.02) ==
        doctest::Approx(2 * rar_resolution(1.7, 2.5e-3, 0.02)));
  CHECK(rar_resolution(1, 1, 1) == 1.0);
}

TEST_CASE("sar_resolution with the half-arc aperture reproduces 0.0032 m") {
  const double half_arc = std::sqrt(5.0) * (20.0 * M_PI / 180.0) / 2.0;
  CHECK(half_arc == doctest::Approx(0.390269).epsilon(1e-5));
  CHECK(sar_resolution(2.5e-3, half_arc) == doctest::Approx(0.003203).epsilon(1e-3));
  CHECK(sar_resolution(2.5e-3, 2 * half_arc) ==
        doctest::Approx(0.5 * sar_resolution(2.5e-3, half_arc)));
  CHECK(sar_resolution(1, 1) == 0.5);
}

TEST_CASE("fraunhofer_distance with the element-center span") {
  CHECK(fraunhofer_distance(15 * 1.25e-3, 2.5e-3) == doctest::Approx(0.28125).epsilon(1e-9));
  CHECK(fraunhofer_distance(127 * 1.25e-3, 2.5e-3) == doctest::Approx(20.161).epsilon(1e-3));
  CHECK(fraunhofer_distance(2.5e-3, 2.5e-3) == doctest::Approx(2 * 2.5e-3));
}

TEST_CASE("resolution formulas satisfy exact algebraic identities") {
  for (double r : {0.5, 2.2, 17.0})
    for (double lambda : {1e-3, 2.5e-3})
      for (double d : {0.01, 0.15}) {
        CHECK(rar_resolution(r, lambda, d) * d == r * lambda);
        CHECK(sar_resolution(lambda, d) * 2.0 * d == lambda);
        CHECK(fraunhofer_distance(d, lambda) * lambda == 2.0 * d * d);
      }
}

namespace {

AzimuthCut triangle_cut() {
  // peak 1 at x = 0, slope -1 per meter
  AzimuthCut cut;
  for (int i = -20; i <= 20; ++i) {
    const double x = i * 0.05;
    cut.coordinates.push_back(x);
    cut.magnitudes.push_back(std::max(0.0, 1.0 - std::abs(x)));
  }
  return cut;
}

AzimuthCut dirichlet_cut(int elements, double k, double d, bool hamming = false) {
  AzimuthCut cut;
  Eigen::VectorXd w = hamming ? hamming_weights(elements)
                              : Eigen::VectorXd::Ones(elements).eval();
  for (int i = -8000; i <= 8000; ++i) {
    const double delta = i * 1e-4;
    Complex sum(0, 0);
    for (int n = 0; n < elements; ++n) sum += w[n] * std::exp(Complex(0, -k * n * d * delta));
    cut.coordinates.push_back(delta);
    cut.magnitudes.push_back(std::abs(sum));
  }
  return cut;
}

}  // namespace

TEST_CASE("mainlobe_width: closed-form triangle") {
  const double expected = 2.0 * (1.0 - std::pow(10.0, -3.0 / 20.0));
  CHECK(mainlobe_width(triangle_cut(), -3.0) == doctest::Approx(expected).epsilon(1e-9));
  CHECK(expected == doctest::Approx(0.5829).epsilon(1e-3));
}

TEST_CASE("mainlobe_width is monotone in the level") {
  const auto cut = dirichlet_cut(16, 800.0 * M_PI, 1.25e-3);
  CHECK(mainlobe_width(cut, -3.0) <= mainlobe_width(cut, -6.0));
}

TEST_CASE("mainlobe_width of the Dirichlet cut matches a dense scan of the closed form") {
  const double k = 800.0 * M_PI, d = 1.25e-3;
  const auto cut = dirichlet_cut(16, k, d);
  const double width = mainlobe_width(cut, -3.0);
  // oracle: bisect |dirichlet| for the -3 dB crossing of the symmetric lobe
  const double threshold = 16.0 * std::pow(10.0, -3.0 / 20.0);
  double lo = 0.0, hi = 2.0 * M_PI / (16 * k * d);
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    (std::abs(dirichlet_profile(k, 16, d, mid)) >= threshold ? lo : hi) = mid;
  }
  CHECK(width == doctest::Approx(2.0 * lo).epsilon(1e-4));
}

TEST_CASE("mainlobe_width error cases") {
  AzimuthCut flat_peak_at_edge;
  for (int i = 0; i < 5; ++i) {
    flat_peak_at_edge.coordinates.push_back(i);
    flat_peak_at_edge.magnitudes.push_back(1.0 + i);
  }
  CHECK_THROWS_AS(mainlobe_width(flat_peak_at_edge), std::invalid_argument);

  AzimuthCut never_crossing;
  for (int i = 0; i < 5; ++i) {
    never_crossing.coordinates.push_back(i);
    never_crossing.magnitudes.push_back(i == 2 ? 1.0 : 0.99);
  }
  CHECK_THROWS_AS(mainlobe_width(never_crossing), std::runtime_error);
}

TEST_CASE("pslr: large-N Dirichlet first sidelobe is near -13.26 dB") {
  const auto cut = dirichlet_cut(128, 800.0 * M_PI, 1.25e-3);
  CHECK(pslr(cut) == doctest::Approx(-13.26).epsilon(0.01));
}

TEST_CASE("pslr: Hamming-weighted array factor stays below -40 dB") {
  const auto cut = dirichlet_cut(64, 800.0 * M_PI, 1.25e-3, true);
  CHECK(pslr(cut) <= -40.0);
}

TEST_CASE("pslr: Hamming beats rectangular for N >= 8") {
  for (int n : {8, 16, 32}) {
    const auto rect = dirichlet_cut(n, 800.0 * M_PI, 1.25e-3, false);
    const auto ham = dirichlet_cut(n, 800.0 * M_PI, 1.25e-3, true);
    CHECK(pslr(ham) < pslr(rect));
  }
}

TEST_CASE("pslr: degenerate cut errors out") {
  AzimuthCut tiny;
  tiny.coordinates = {0.0, 1.0};
  tiny.magnitudes = {1.0, 0.5};
  CHECK_THROWS(pslr(tiny));
}

TEST_CASE("peak_location: delta image and tie-breaking") {
  ImageGrid image;
  image.spec = GridSpec{Vec2(0, 0), 0.5, 0.5, 6, 6};
  image.values.setZero(6, 6);
  image.values(3, 4) = Complex(2, 0);
  CHECK(peak_location(image).isApprox(Vec2(1.5, 2.0)));

  ImageGrid uniform;
  uniform.spec = image.spec;
  uniform.values.setConstant(6, 6, Complex(1, 0));
  CHECK(peak_location(uniform).isApprox(Vec2(0, 0)));  // ties go to the origin pixel

  ImageGrid zero;
  zero.spec = image.spec;
  zero.values.setZero(6, 6);
  CHECK_THROWS_AS(peak_location(zero), std::invalid_argument);
}

TEST_CASE("extract_cut: row and column profiles pass through the peak") {
  ImageGrid image;
  image.spec = GridSpec{Vec2(0, 0), 1.0, 1.0, 5, 4};
  image.values.setZero(5, 4);
  for (int ix = 0; ix < 5; ++ix)
    for (int iy = 0; iy < 4; ++iy)
      image.values(ix, iy) = Complex(1.0 / (1.0 + std::abs(ix - 2) + std::abs(iy - 1)), 0);
  const auto row = extract_cut(image, CutDirection::Row);
  REQUIRE(row.coordinates.size() == 5);
  CHECK(row.magnitudes[2] == 1.0);
  const auto col = extract_cut(image, CutDirection::Column);
  REQUIRE(col.coordinates.size() == 4);
  CHECK(col.magnitudes[1] == 1.0);
}

TEST_CASE("extract_cut: iso-range cut stays on the ellipse level set") {
  ImageGrid image;
  image.spec = GridSpec{Vec2(2.5, 0.5), 0.025, 0.025, 41, 41};
  const Vec2 fa(1, 3), fb(0, 0);
  const Vec2 target(3, 1);
  const double level0 = (target - fa).norm() + (target - fb).norm();
  image.values.setZero(41, 41);
  for (int ix = 0; ix < 41; ++ix)
    for (int iy = 0; iy < 41; ++iy) {
      const Vec2 q = image.pixel_center(ix, iy);
      const double level = (q - fa).norm() + (q - fb).norm();
      // ridge along the iso-range contour through the target
      image.values(ix, iy) = Complex(std::exp(-std::pow((level - level0) / 0.2, 2)), 0);
    }
  const auto cut = extract_cut(image, CutDirection::IsoRange, fa, fb);
  REQUIRE(cut.coordinates.size() > 10);
  // along the ridge the magnitude stays near the peak
  for (double m : cut.magnitudes) CHECK(m > 0.9);
}

TEST_CASE("iso_range_points: coincident foci walk a circle at uniform arc spacing") {
  const Vec2 center(1, 2);
  const Vec2 through(4, 2);  // radius 3
  std::vector<double> s;
  const auto pts = iso_range_points(center, center, through, 0.5, 0.05, &s);
  REQUIRE(pts.size() == 21);
  REQUIRE(s.size() == 21);
  CHECK((pts[10] - through).norm() == 0.0);
  CHECK(s[10] == 0.0);
  for (std::size_t i = 0; i < pts.size(); ++i) {
    CHECK((pts[i] - center).norm() == doctest::Approx(3.0).epsilon(1e-9));
    if (i) CHECK((pts[i] - pts[i - 1]).norm() == doctest::Approx(0.05).epsilon(1e-4));
  }
  CHECK(s.front() == doctest::Approx(-0.5));
  CHECK(s.back() == doctest::Approx(0.5));
}

TEST_CASE("iso_range_points stays on the two-focus level set") {
  const Vec2 fa(1, 3), fb(0, 0), through(3, 1);
  const double level = (through - fa).norm() + (through - fb).norm();
  std::vector<double> s;
  const auto pts = iso_range_points(fa, fb, through, 0.8, 0.01, &s);
  REQUIRE(pts.size() == 161);
  double arc = 0.0;
  for (std::size_t i = 0; i < pts.size(); ++i) {
    const double l = (pts[i] - fa).norm() + (pts[i] - fb).norm();
    CHECK(l == doctest::Approx(level).epsilon(1e-9));
    if (i) arc += (pts[i] - pts[i - 1]).norm();
  }
  CHECK(arc == doctest::Approx(1.6).epsilon(1e-3));
}

TEST_CASE("iso_range_points rejects degenerate inputs") {
  CHECK_THROWS_AS(iso_range_points(Vec2(0, 0), Vec2(2, 0), Vec2(1, 0), 0.5, 0.1),
                  std::invalid_argument);  // through between the foci: zero gradient
  CHECK_THROWS_AS(iso_range_points(Vec2(0, 0), Vec2(2, 0), Vec2(1, 1), 0.0, 0.1),
                  std::invalid_argument);
  CHECK_THROWS_AS(iso_range_points(Vec2(0, 0), Vec2(2, 0), Vec2(1, 1), 0.5, 0.0),
                  std::invalid_argument);
}
