#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "obsint/config.hpp"
#include "obsint/quadrotor.hpp"
#include "obsint/record.hpp"

namespace obsint {

struct ScenarioInfo {
  std::string name;
  std::string description;
};

std::vector<ScenarioInfo> list_scenarios();

// Every key a scenario accepts, with its default value.
Config default_config(const std::string& scenario);

using Metrics = std::map<std::string, double>;

struct ScenarioResult {
  RunRecord record;
  Metrics metrics;
  std::vector<std::filesystem::path> files;
};

// Runs a built-in scenario. With a non-empty out_dir, writes data.csv,
// plot.svg, metrics.txt and config.txt there (Bode scenarios write one
// csv/svg pair per eps).
ScenarioResult run_scenario(const std::string& name, const Config& cfg, const std::filesystem::path& out_dir);

// Quadrotor settings from a quad-* config.
QuadSimConfig quad_config(const Config& cfg);

// Metric helpers shared with the acceptance checks.
Metrics integrator_metrics(const RunRecord& rec, double settle, double window);
Metrics quad_metrics(const RunRecord& rec, double settle, double window);

void write_metrics(const Metrics& m, const std::filesystem::path& path, const std::string& header = "");
Metrics read_metrics(const std::filesystem::path& path);

}  // namespace obsint
