#include <CLI11.hpp>
#include <fstream>
#include <iostream>
#include <sstream>

#include "va/scenario.hpp"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw va::ScenarioError("cannot read scenario file '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"RIS-aided virtual-source radar imaging"};
  app.require_subcommand(1);

  auto* run_cmd = app.add_subcommand("run", "synthesize, image, and export one scenario");
  std::string scenario_path, out_dir;
  std::string window_override, mode_override;
  std::int64_t seed_override = -1;
  bool dump_cube = false;
  run_cmd->add_option("--scenario", scenario_path, "scenario JSON file")->required();
  run_cmd->add_option("--out", out_dir, "output directory")->required();
  run_cmd->add_option("--seed", seed_override, "override the scenario seed");
  run_cmd->add_option("--window", window_override, "override the window: none|rect|hamming|gaussian");
  run_cmd->add_option("--mode", mode_override, "override the mode: far|near|sar");
  run_cmd->add_flag("--dump-cube", dump_cube, "also export the raw echo cube as CSV");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  try {
    std::string text = read_file(scenario_path);
    va::Scenario scenario = va::parse_scenario(text);
    if (seed_override >= 0) scenario.seed = static_cast<std::uint64_t>(seed_override);
    if (!window_override.empty() || !mode_override.empty()) {
      // route overrides through the parser so they get the same validation
      std::string patch = "{";
      if (!mode_override.empty()) patch += "\"mode\":\"" + mode_override + "\"";
      if (!window_override.empty()) {
        if (!mode_override.empty()) patch += ",";
        patch += "\"window\":\"" + window_override + "\"";
      }
      patch += "}";
      const va::Scenario patched = va::parse_scenario(patch);
      if (!mode_override.empty()) scenario.mode = patched.mode;
      if (!window_override.empty()) scenario.window = patched.window;
    }
    const va::RunResult results = va::run(scenario);
    va::export_results(results, out_dir, dump_cube);
    std::cout << va::metrics_to_json(results.report);
    return 0;
  } catch (const va::ScenarioError& e) {
    std::cerr << "scenario error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  }
}
