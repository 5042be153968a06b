// obsint: scenario runner and quick Bode tool.

#include <CLI11.hpp>
#include <fmt/format.h>

#include <cstdio>
#include <iostream>

#include "obsint/error.hpp"
#include "obsint/freq.hpp"
#include "obsint/plot.hpp"
#include "obsint/scenarios.hpp"

namespace fs = std::filesystem;
using namespace obsint;

int main(int argc, char** argv) {
  CLI::App app{"Differentiation-integration observer toolkit"};
  app.require_subcommand(1);

  auto* list = app.add_subcommand("list", "List built-in scenarios");

  std::string scenario, config_file, out_dir, seed;
  std::vector<std::string> overrides;
  auto* run = app.add_subcommand("run", "Run a scenario and write CSV, SVG and metrics");
  run->add_option("scenario", scenario, "Scenario name")->required();
  run->add_option("--config", config_file, "key = value file overriding the defaults")->check(CLI::ExistingFile);
  run->add_option("--out", out_dir, "Output directory (default out/<scenario>)");
  run->add_option("--seed", seed, "Noise seed");
  run->add_option("--set", overrides, "Override one key, key=value (repeatable)");

  std::string dump_name;
  auto* defaults = app.add_subcommand("defaults", "Print a scenario's default configuration");
  defaults->add_option("scenario", dump_name, "Scenario name")->required();

  std::vector<double> k, eps{0.1};
  int p = 0, points = 400;
  double wmin = 1e-3, wmax = 1e3, tol = 0.05;
  std::string bode_out;
  auto* bode = app.add_subcommand("bode", "Frequency response of one observer");
  bode->add_option("--k", k, "Gains k1..kn")->required()->delimiter(',');
  bode->add_option("--p", p, "Sensor index")->required();
  bode->add_option("--eps", eps, "Perturbation values")->delimiter(',');
  bode->add_option("--omega-min", wmin);
  bode->add_option("--omega-max", wmax);
  bode->add_option("--points", points);
  bode->add_option("--tol", tol, "Passband deviation for the usable bandwidth");
  bode->add_option("--out", bode_out, "Directory for CSV and SVG output");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*list) {
      for (const auto& s : list_scenarios()) fmt::print("{:<16} {}\n", s.name, s.description);
    } else if (*defaults) {
      fmt::print("{}", default_config(dump_name).dump());
    } else if (*run) {
      Config cfg = default_config(scenario);
      if (!config_file.empty()) cfg.merge_file(config_file);
      for (const auto& o : overrides) {
        const auto eq = o.find('=');
        if (eq == std::string::npos) throw Error("--set expects key=value, got '" + o + "'");
        cfg.set(o.substr(0, eq), o.substr(eq + 1));
      }
      if (!seed.empty()) {
        if (!cfg.has("scenario.seed")) throw Error("scenario '" + scenario + "' takes no seed");
        cfg.set("scenario.seed", seed);
      }
      const fs::path out = out_dir.empty() ? fs::path("out") / scenario : fs::path(out_dir);
      const auto res = run_scenario(scenario, cfg, out);
      for (const auto& [key, v] : res.metrics) fmt::print("{} = {}\n", key, v);
      fmt::print("wrote {} files to {}\n", res.files.size(), out.string());
    } else if (*bode) {
      const auto omega = log_grid(wmin, wmax, points);
      for (double e : eps) {
        const ObserverGainSet g{static_cast<int>(k.size()), p, k, e};
        if (auto why = lemma1_violation(g)) throw Error("gain validity condition violated: " + *why);
        for (int j = 1; j <= g.n; ++j) {
          fmt::print("eps = {:<8} j = {}  usable bandwidth {:.4g} rad/s\n", e, j, usable_bandwidth(g, j, omega, tol));
        }
        if (!bode_out.empty()) {
          fs::create_directories(bode_out);
          const auto stem = fs::path(bode_out) / fmt::format("bode_eps{}", e);
          export_csv(bode_record(g, omega), stem.string() + ".csv");
          write_svg(bode_panels(g, omega), stem.string() + ".svg");
        }
      }
    }
  } catch (const std::exception& e) {
    std::fprintf(stderr, "obsint: error: %s\n", e.what());
    return 1;
  }
  return 0;
}
