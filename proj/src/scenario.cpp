#include "va/scenario.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <json.hpp>
#include <optional>

#include "va/forward.hpp"
#include "va/ris.hpp"

namespace va {

using nlohmann::json;

namespace {

void check_keys(const json& obj, const std::string& context,
                std::initializer_list<const char*> allowed) {
  for (auto it = obj.begin(); it != obj.end(); ++it) {
    bool known = false;
    for (const char* key : allowed)
      if (it.key() == key) {
        known = true;
        break;
      }
    if (!known) throw ScenarioError("unknown key '" + context + it.key() + "'");
  }
}

double require_number(const json& v, const std::string& name) {
  if (!v.is_number()) throw ScenarioError("'" + name + "' must be a number");
  return v.get<double>();
}

int require_int(const json& v, const std::string& name) {
  if (!v.is_number_integer()) throw ScenarioError("'" + name + "' must be an integer");
  return v.get<int>();
}

Vec2 require_vec2(const json& v, const std::string& name) {
  if (!v.is_array() || v.size() != 2 || !v[0].is_number() || !v[1].is_number())
    throw ScenarioError("'" + name + "' must be a [x, y] pair");
  return {v[0].get<double>(), v[1].get<double>()};
}

ChirpParams parse_chirp(const json& obj) {
  check_keys(obj, "chirp.", {"carrier_hz", "bandwidth_hz", "duration_s", "num_samples",
                             "amplitude"});
  ChirpParams chirp;
  if (obj.contains("carrier_hz")) chirp.carrier_hz = require_number(obj["carrier_hz"], "chirp.carrier_hz");
  if (obj.contains("bandwidth_hz"))
    chirp.bandwidth_hz = require_number(obj["bandwidth_hz"], "chirp.bandwidth_hz");
  if (obj.contains("duration_s")) chirp.duration_s = require_number(obj["duration_s"], "chirp.duration_s");
  if (obj.contains("num_samples")) chirp.num_samples = require_int(obj["num_samples"], "chirp.num_samples");
  if (obj.contains("amplitude")) chirp.amplitude = require_number(obj["amplitude"], "chirp.amplitude");
  try {
    chirp.validate();
  } catch (const std::invalid_argument& e) {
    throw ScenarioError(e.what());
  }
  return chirp;
}

ScenarioWindow parse_window(const std::string& name) {
  if (name == "none") return ScenarioWindow::None;
  if (name == "rect") return ScenarioWindow::Rectangular;
  if (name == "hamming") return ScenarioWindow::Hamming;
  if (name == "gaussian") return ScenarioWindow::Gaussian;
  throw ScenarioError("'window' must be one of none|rect|hamming|gaussian");
}

const char* window_name(ScenarioWindow w) {
  switch (w) {
    case ScenarioWindow::None: return "none";
    case ScenarioWindow::Rectangular: return "rect";
    case ScenarioWindow::Hamming: return "hamming";
    case ScenarioWindow::Gaussian: return "gaussian";
  }
  return "rect";
}

const char* mode_name(ScenarioMode m) {
  switch (m) {
    case ScenarioMode::FarField: return "far";
    case ScenarioMode::NearField: return "near";
    case ScenarioMode::SarBaseline: return "sar";
  }
  return "far";
}

}  // namespace

Scenario parse_scenario(const std::string& text) {
  json root;
  try {
    root = json::parse(text);
  } catch (const json::exception& e) {
    throw ScenarioError(std::string("malformed scenario JSON: ") + e.what());
  }
  if (!root.is_object()) throw ScenarioError("scenario must be a JSON object");
  check_keys(root, "", {"chirp", "scene", "mode", "trajectory", "window", "snr_db", "seed",
                        "grid", "subregions", "constant_phase"});

  Scenario s;
  if (root.contains("chirp")) s.chirp = parse_chirp(root["chirp"]);
  const double wavelength = s.chirp.wavelength();

  Vec2 radar(2, 2), ris_center(3, 4), ris_direction(1, 0);
  int num_elements = 16;
  double spacing = wavelength / 2.0;
  double speed_of_light = kDefaultSpeedOfLight;
  std::vector<Target> targets{{Vec2(4, 2), Complex(1, 0)}};

  if (root.contains("scene")) {
    const json& sc = root["scene"];
    check_keys(sc, "scene.", {"radar", "ris", "targets", "speed_of_light"});
    if (sc.contains("radar")) radar = require_vec2(sc["radar"], "scene.radar");
    if (sc.contains("speed_of_light")) {
      speed_of_light = require_number(sc["speed_of_light"], "scene.speed_of_light");
      if (!(speed_of_light > 0)) throw ScenarioError("'scene.speed_of_light' must be positive");
      spacing = s.chirp.wavelength(speed_of_light) / 2.0;
    }
    if (sc.contains("ris")) {
      const json& r = sc["ris"];
      check_keys(r, "scene.ris.", {"center", "direction", "num_elements", "spacing_m"});
      if (r.contains("center")) ris_center = require_vec2(r["center"], "scene.ris.center");
      if (r.contains("direction"))
        ris_direction = require_vec2(r["direction"], "scene.ris.direction");
      if (r.contains("num_elements"))
        num_elements = require_int(r["num_elements"], "scene.ris.num_elements");
      if (r.contains("spacing_m")) spacing = require_number(r["spacing_m"], "scene.ris.spacing_m");
    }
    if (sc.contains("targets")) {
      if (!sc["targets"].is_array() || sc["targets"].empty())
        throw ScenarioError("'scene.targets' must be a non-empty array");
      targets.clear();
      for (const json& t : sc["targets"]) {
        check_keys(t, "scene.targets[].", {"position", "reflectivity"});
        Target target;
        if (!t.contains("position"))
          throw ScenarioError("'scene.targets[].position' is required");
        target.position = require_vec2(t["position"], "scene.targets[].position");
        if (t.contains("reflectivity")) {
          const Vec2 refl = require_vec2(t["reflectivity"], "scene.targets[].reflectivity");
          target.reflectivity = Complex(refl.x(), refl.y());
        }
        if (!std::isfinite(std::abs(target.reflectivity)))
          throw ScenarioError("'scene.targets[].reflectivity' must be finite");
        targets.push_back(target);
      }
    }
  }
  try {
    s.scene = Scene{radar, RisArray(ris_center, ris_direction, num_elements, spacing), targets,
                    speed_of_light};
  } catch (const std::invalid_argument& e) {
    throw ScenarioError(std::string("scene.ris: ") + e.what());
  }

  if (root.contains("mode")) {
    const std::string m = root["mode"].is_string() ? root["mode"].get<std::string>() : "";
    if (m == "far")
      s.mode = ScenarioMode::FarField;
    else if (m == "near")
      s.mode = ScenarioMode::NearField;
    else if (m == "sar")
      s.mode = ScenarioMode::SarBaseline;
    else
      throw ScenarioError("'mode' must be one of far|near|sar");
  }
  if (root.contains("trajectory")) {
    const json& t = root["trajectory"];
    check_keys(t, "trajectory.", {"span_degrees", "num_positions"});
    if (t.contains("span_degrees"))
      s.span_degrees = require_number(t["span_degrees"], "trajectory.span_degrees");
    if (t.contains("num_positions"))
      s.num_positions = require_int(t["num_positions"], "trajectory.num_positions");
    if (s.span_degrees < 0) throw ScenarioError("'trajectory.span_degrees' must be non-negative");
    if (s.num_positions < 1) throw ScenarioError("'trajectory.num_positions' must be >= 1");
  }
  if (root.contains("window")) {
    if (!root["window"].is_string()) throw ScenarioError("'window' must be a string");
    s.window = parse_window(root["window"].get<std::string>());
  }
  if (root.contains("snr_db")) {
    if (root["snr_db"].is_string() && root["snr_db"].get<std::string>() == "none")
      s.snr_db = kNoNoise;
    else
      s.snr_db = require_number(root["snr_db"], "snr_db");
  }
  if (root.contains("seed")) s.seed = static_cast<std::uint64_t>(require_int(root["seed"], "seed"));
  if (root.contains("grid")) {
    const json& g = root["grid"];
    check_keys(g, "grid.", {"origin", "dx", "dy", "nx", "ny"});
    if (g.contains("origin")) s.grid.origin = require_vec2(g["origin"], "grid.origin");
    if (g.contains("dx")) s.grid.dx = require_number(g["dx"], "grid.dx");
    if (g.contains("dy")) s.grid.dy = require_number(g["dy"], "grid.dy");
    if (g.contains("nx")) s.grid.nx = require_int(g["nx"], "grid.nx");
    if (g.contains("ny")) s.grid.ny = require_int(g["ny"], "grid.ny");
    try {
      s.grid.validate();
    } catch (const std::invalid_argument& e) {
      throw ScenarioError(e.what());
    }
  }
  if (root.contains("subregions")) {
    const json& g = root["subregions"];
    check_keys(g, "subregions.", {"gx", "gy"});
    if (g.contains("gx")) s.subregions_x = require_int(g["gx"], "subregions.gx");
    if (g.contains("gy")) s.subregions_y = require_int(g["gy"], "subregions.gy");
    if (s.subregions_x < 1 || s.subregions_y < 1)
      throw ScenarioError("'subregions' counts must be >= 1");
  }
  if (root.contains("constant_phase")) {
    if (!root["constant_phase"].is_boolean())
      throw ScenarioError("'constant_phase' must be a boolean");
    s.constant_phase = root["constant_phase"].get<bool>();
  }
  return s;
}

std::string serialize_scenario(const Scenario& s) {
  json root;
  root["chirp"] = {{"carrier_hz", s.chirp.carrier_hz},
                   {"bandwidth_hz", s.chirp.bandwidth_hz},
                   {"duration_s", s.chirp.duration_s},
                   {"num_samples", s.chirp.num_samples},
                   {"amplitude", s.chirp.amplitude}};
  json targets = json::array();
  for (const Target& t : s.scene.targets)
    targets.push_back({{"position", {t.position.x(), t.position.y()}},
                       {"reflectivity", {t.reflectivity.real(), t.reflectivity.imag()}}});
  root["scene"] = {{"radar", {s.scene.radar.x(), s.scene.radar.y()}},
                   {"ris",
                    {{"center", {s.scene.ris.center.x(), s.scene.ris.center.y()}},
                     {"direction", {s.scene.ris.direction.x(), s.scene.ris.direction.y()}},
                     {"num_elements", s.scene.ris.num_elements},
                     {"spacing_m", s.scene.ris.spacing}}},
                   {"targets", targets},
                   {"speed_of_light", s.scene.speed_of_light}};
  root["mode"] = mode_name(s.mode);
  root["trajectory"] = {{"span_degrees", s.span_degrees}, {"num_positions", s.num_positions}};
  root["window"] = window_name(s.window);
  if (std::isinf(s.snr_db))
    root["snr_db"] = "none";
  else
    root["snr_db"] = s.snr_db;
  root["seed"] = s.seed;
  root["grid"] = {{"origin", {s.grid.origin.x(), s.grid.origin.y()}},
                  {"dx", s.grid.dx},
                  {"dy", s.grid.dy},
                  {"nx", s.grid.nx},
                  {"ny", s.grid.ny}};
  root["subregions"] = {{"gx", s.subregions_x}, {"gy", s.subregions_y}};
  root["constant_phase"] = s.constant_phase;
  return root.dump(2) + "\n";
}

namespace {

// Azimuth cuts sample the matched-filter response continuously along the
// iso-range contour: the ridge through the peak can be much narrower than a
// pixel, so interpolating the gridded image would alias it.
constexpr double kCutHalfExtent = 1.4;   // meters of arc on each side of the peak
constexpr double kCutStep = 2.5e-3;      // meters between cut samples

// Cut samples are equalized against the filter energy at the peak itself:
// filters far along the contour can be arbitrarily weak or strong, and the
// anchor keeps the main lobe genuinely equalized while model-starved samples
// cannot amplify past it.
constexpr double kCutEnergyFloor = 0.3;

Vec2 containing_block_center(const SubregionPlan& plan, const GridSpec& g, const Vec2& q) {
  const int ix = std::clamp(static_cast<int>(std::lround((q.x() - g.origin.x()) / g.dx)), 0,
                            g.nx - 1);
  const int iy = std::clamp(static_cast<int>(std::lround((q.y() - g.origin.y()) / g.dy)), 0,
                            g.ny - 1);
  for (const auto& b : plan.blocks)
    if (ix >= b.ix0 && ix < b.ix0 + b.nx && iy >= b.iy0 && iy < b.iy0 + b.ny) return b.center;
  return plan.blocks.front().center;  // plans always tile, so this is unreachable
}

}  // namespace

RunResult run(const Scenario& s) {
  if (s.scene.targets.empty()) throw ScenarioError("scenario has no targets");
  const double c = s.scene.speed_of_light;
  const double wavelength = s.chirp.wavelength(c);
  const double carrier_k = 2.0 * M_PI * s.chirp.carrier_hz / c;
  const auto trajectory =
      virtual_arc(s.scene.radar, s.scene.ris, s.span_degrees * M_PI / 180.0, s.num_positions);

  RunResult result;
  Vec2 cut_focus_a = s.scene.ris.center;
  Vec2 cut_focus_b = s.scene.radar;
  std::optional<RisProgram> program;
  std::optional<SubregionPlan> plan;
  PropagationMode filter_mode = PropagationMode::ExactSpherical;

  if (s.mode == ScenarioMode::FarField) {
    if (s.window == ScenarioWindow::Gaussian)
      throw ScenarioError("gaussian window is a near-field option");
    WindowSpec window;
    window.kind =
        (s.window == ScenarioWindow::Hamming) ? WindowKind::Hamming : WindowKind::Rectangular;
    program = far_field_program(
        s.scene.ris, steering_from_trajectory(s.scene.radar, s.scene.ris, trajectory), window,
        carrier_k);
    program->trajectory = trajectory;
    program->frequency_dependent = !s.constant_phase;
    filter_mode = PropagationMode::FarFieldPlanar;
    result.cube = synthesize_ris_echo(s.scene, *program, s.chirp, PropagationMode::ExactSpherical);
    result.cube = add_awgn(result.cube, s.snr_db, s.seed);
    result.image = backproject(result.cube, s.scene, *program, s.grid, filter_mode);
  } else if (s.mode == ScenarioMode::NearField) {
    if (s.window == ScenarioWindow::Rectangular || s.window == ScenarioWindow::Hamming)
      throw ScenarioError("near-field mode supports window none|gaussian");
    program = near_field_program(s.scene.ris, s.scene.radar, trajectory, std::nullopt, carrier_k);
    program->frequency_dependent = !s.constant_phase;
    result.cube = synthesize_ris_echo(s.scene, *program, s.chirp, PropagationMode::ExactSpherical);
    result.cube = add_awgn(result.cube, s.snr_db, s.seed);
    if (s.window == ScenarioWindow::Gaussian) {
      plan = subregion_centers(s.grid, s.subregions_x, s.subregions_y);
      result.image = backproject_subregions(result.cube, s.scene, *program, *plan, s.grid,
                                            filter_mode);
    } else {
      result.image = backproject(result.cube, s.scene, *program, s.grid, filter_mode);
    }
  } else {
    result.cube = synthesize_sar_echo(s.scene.targets, s.chirp, trajectory.positions, c);
    result.cube = add_awgn(result.cube, s.snr_db, s.seed);
    result.image = backproject_sar(result.cube, trajectory.positions, s.grid, c);
    cut_focus_a = cut_focus_b = mirror_point(s.scene.radar, s.scene.ris);
  }

  MetricsReport& report = result.report;
  report.wavelength_m = wavelength;
  const double range = path_length(s.scene.ris.center, s.scene.targets.front().position);
  report.rar_resolution_m =
      rar_resolution(range, wavelength, s.scene.ris.num_elements * s.scene.ris.spacing);
  report.sar_resolution_m = sar_resolution(wavelength, trajectory.radius * trajectory.span / 2.0);
  report.fraunhofer_distance_m = fraunhofer_distance(s.scene.ris.aperture_span(), wavelength);
  report.peak = peak_location(result.image);
  try {
    std::vector<double> arc;
    const auto points =
        iso_range_points(cut_focus_a, cut_focus_b, report.peak, kCutHalfExtent, kCutStep, &arc);
    PointResponse response;
    if (s.mode == ScenarioMode::SarBaseline) {
      response = backproject_sar_points(result.cube, trajectory.positions, points, c);
    } else if (plan) {
      // each sample uses the taper of the subregion it falls in, like the image
      for (const Vec2& q : points) {
        RisProgram windowed = *program;
        windowed.window = gaussian_window(
            s.scene.ris, s.scene.radar, containing_block_center(*plan, s.grid, q));
        const auto one =
            backproject_points(result.cube, s.scene, windowed, {q}, filter_mode);
        response.raw.push_back(one.raw.front());
        response.norms.push_back(one.norms.front());
      }
    } else {
      response = backproject_points(result.cube, s.scene, *program, points, filter_mode);
    }
    AzimuthCut cut;
    cut.coordinates = std::move(arc);
    const double floor = kCutEnergyFloor * response.norms[points.size() / 2];  // at the peak
    cut.magnitudes.reserve(response.raw.size());
    for (std::size_t i = 0; i < response.raw.size(); ++i)
      cut.magnitudes.push_back(floor > 0.0
                                   ? std::abs(response.raw[i]) /
                                         std::max(response.norms[i], floor)
                                   : std::abs(response.raw[i]));
    try {
      report.mainlobe_width_m = mainlobe_width(cut);
    } catch (const std::exception&) {
    }
    try {
      report.pslr_db = pslr(cut);
    } catch (const std::exception&) {
    }
  } catch (const std::exception&) {
    // cut itself unavailable (degenerate geometry); widths stay unset
  }
  return result;
}

std::string metrics_to_json(const MetricsReport& r) {
  json out;
  out["wavelength_m"] = r.wavelength_m;
  out["rar_resolution_m"] = r.rar_resolution_m;
  out["sar_resolution_m"] = r.sar_resolution_m;
  out["fraunhofer_distance_m"] = r.fraunhofer_distance_m;
  out["peak_x_m"] = r.peak.x();
  out["peak_y_m"] = r.peak.y();
  out["mainlobe_width_m"] = r.mainlobe_width_m ? json(*r.mainlobe_width_m) : json(nullptr);
  out["pslr_db"] = r.pslr_db ? json(*r.pslr_db) : json(nullptr);
  return out.dump(2) + "\n";
}

namespace {

void write_file(const std::filesystem::path& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot open '" + path.string() + "' for writing");
  out << content;
  if (!out) throw std::runtime_error("write failed for '" + path.string() + "'");
}

std::string format_double(double v) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string matrix_csv(const Eigen::MatrixXd& m) {
  std::string out;
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) {
      if (c) out += ',';
      out += format_double(m(r, c));
    }
    out += '\n';
  }
  return out;
}

std::string image_pgm(const ImageGrid& image) {
  const Eigen::MatrixXd mag = image.magnitude();
  const double peak = mag.maxCoeff();
  std::string out = "P2\n" + std::to_string(image.spec.nx) + " " +
                    std::to_string(image.spec.ny) + "\n255\n";
  for (int iy = image.spec.ny - 1; iy >= 0; --iy) {  // row 0 at max y
    for (int ix = 0; ix < image.spec.nx; ++ix) {
      long value = 0;
      if (peak > 0 && mag(ix, iy) > 0) {
        const double db = 20.0 * std::log10(mag(ix, iy) / peak);
        value = std::lround(255.0 * (1.0 + db / 60.0));
        value = std::clamp(value, 0L, 255L);
      }
      if (ix) out += ' ';
      out += std::to_string(value);
    }
    out += '\n';
  }
  return out;
}

}  // namespace

void export_results(const RunResult& results, const std::string& out_dir, bool dump_cube) {
  const std::filesystem::path dir(out_dir);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw std::runtime_error("cannot create directory '" + dir.string() + "'");

  write_file(dir / "image.pgm", image_pgm(results.image));
  // magnitude.csv: one row per iy (ascending), columns ix ascending
  write_file(dir / "magnitude.csv", matrix_csv(results.image.magnitude().transpose()));
  write_file(dir / "metrics.json", metrics_to_json(results.report));
  if (dump_cube) {
    write_file(dir / "cube_real.csv", matrix_csv(results.cube.samples.real()));
    write_file(dir / "cube_imag.csv", matrix_csv(results.cube.samples.imag()));
  }
}

}  // namespace va
