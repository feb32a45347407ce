#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "va/core.hpp"
#include "va/imaging.hpp"
#include "va/metrics.hpp"
#include "va/signal.hpp"

namespace va {

/// Invalid or inconsistent scenario input (CLI exit code 2).
struct ScenarioError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

enum class ScenarioMode { FarField, NearField, SarBaseline };
enum class ScenarioWindow { None, Rectangular, Hamming, Gaussian };

struct Scenario {
  ChirpParams chirp;
  Scene scene{Vec2(2, 2), RisArray(Vec2(3, 4), Vec2(1, 0), 16, 1.25e-3), {}, kDefaultSpeedOfLight};
  ScenarioMode mode = ScenarioMode::FarField;
  double span_degrees = 20.0;
  int num_positions = 20;
  ScenarioWindow window = ScenarioWindow::Rectangular;
  double snr_db = 20.0;  // kNoNoise disables the channel
  std::uint64_t seed = 0;
  GridSpec grid{Vec2(3.5, 1.5), 0.025, 0.025, 41, 41};
  int subregions_x = 4, subregions_y = 4;
  bool constant_phase = false;  // evaluate RIS phases at the carrier only
};

/// Strict parse of the documented JSON schema: unknown keys and invariant
/// violations are rejected with the offending key named. An empty object
/// yields the default far-field scenario.
Scenario parse_scenario(const std::string& text);

std::string serialize_scenario(const Scenario& scenario);

struct MetricsReport {
  double wavelength_m = 0.0;
  double rar_resolution_m = 0.0;
  double sar_resolution_m = 0.0;
  double fraunhofer_distance_m = 0.0;
  Vec2 peak{0.0, 0.0};
  std::optional<double> mainlobe_width_m;
  std::optional<double> pslr_db;
};

struct RunResult {
  DataCube cube;
  ImageGrid image;
  MetricsReport report;
};

RunResult run(const Scenario& scenario);

/// Writes image.pgm (dB-scaled, -60 dB floor, row 0 at max y), magnitude.csv,
/// metrics.json, and optionally cube_real.csv / cube_imag.csv.
void export_results(const RunResult& results, const std::string& out_dir, bool dump_cube = false);

std::string metrics_to_json(const MetricsReport& report);

}  // namespace va
