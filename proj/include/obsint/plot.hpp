#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "obsint/poly.hpp"
#include "obsint/record.hpp"

namespace obsint {

struct Series {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
  bool dashed = false;
  int color = -1;  // palette index; -1 picks by position
};

struct Panel {
  std::string title;
  std::string xlabel;
  std::string ylabel;
  bool log_x = false;
  std::vector<Series> series;
};

// Self-contained SVG, panels stacked vertically, one legend per panel.
// Long series are reduced to per-pixel min/max pairs.
std::string render_svg(const std::vector<Panel>& panels, int width = 800, int panel_height = 320);
void write_svg(const std::vector<Panel>& panels, const std::filesystem::path& path);

// Overlay of the named columns against t.
void export_svg_plot(const RunRecord& record, const std::vector<std::string>& columns,
                     const std::filesystem::path& path, const std::string& title = "");

// Magnitude and phase panels: observer (solid) against s^{j-p} (dashed)
// for every j.
std::vector<Panel> bode_panels(const ObserverGainSet& g, const std::vector<double>& omega);

}  // namespace obsint
