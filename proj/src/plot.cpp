#include "obsint/plot.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <limits>

#include "obsint/error.hpp"
#include "obsint/freq.hpp"

namespace obsint {

namespace {

constexpr const char* kPalette[] = {"#1f77b4", "#d62728", "#2ca02c", "#ff7f0e", "#9467bd",
                                    "#8c564b", "#e377c2", "#17becf", "#7f7f7f", "#bcbd22"};

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      case '"': out += "&quot;"; break;
      default: out += c;
    }
  }
  return out;
}

// Nice tick step for a span.
double tick_step(double span) {
  const double raw = span / 5.0;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  for (double m : {1.0, 2.0, 5.0, 10.0}) {
    if (raw <= m * mag) return m * mag;
  }
  return 10.0 * mag;
}

struct Frame {
  double x0, x1, y0, y1;  // data range
  double px, py, pw, ph;  // plot box in pixels
  bool log_x;

  double sx(double x) const {
    const double u = log_x ? std::log10(x) : x;
    return px + (u - x0) / (x1 - x0) * pw;
  }
  double sy(double y) const { return py + ph - (y - y0) / (y1 - y0) * ph; }
};

void render_panel(fmt::memory_buffer& buf, const Panel& panel, double top, int width, int height) {
  double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y0 = x0, y1 = -x0;
  for (const auto& s : panel.series) {
    for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
      if (!std::isfinite(s.y[i]) || !std::isfinite(s.x[i])) continue;
      if (panel.log_x && !(s.x[i] > 0)) continue;
      const double u = panel.log_x ? std::log10(s.x[i]) : s.x[i];
      x0 = std::min(x0, u);
      x1 = std::max(x1, u);
      y0 = std::min(y0, s.y[i]);
      y1 = std::max(y1, s.y[i]);
    }
  }
  if (!std::isfinite(x0)) x0 = 0, x1 = 1, y0 = 0, y1 = 1;
  if (x1 == x0) x1 = x0 + 1;
  if (y1 == y0) y0 -= 1, y1 += 1;
  const double pad = 0.05 * (y1 - y0);
  y0 -= pad;
  y1 += pad;

  const Frame f{x0, x1, y0, y1, 70.0, top + 30.0, width - 90.0, height - 75.0, panel.log_x};
  auto out = std::back_inserter(buf);
  fmt::format_to(out, "<rect x=\"{:.1f}\" y=\"{:.1f}\" width=\"{:.1f}\" height=\"{:.1f}\" fill=\"none\" stroke=\"#444\"/>\n",
                 f.px, f.py, f.pw, f.ph);
  fmt::format_to(out, "<text x=\"{:.1f}\" y=\"{:.1f}\" text-anchor=\"middle\" font-size=\"14\">{}</text>\n",
                 f.px + f.pw / 2, top + 18, escape(panel.title));

  // Ticks.
  const double ys = tick_step(y1 - y0);
  for (double v = std::ceil(y0 / ys) * ys; v <= y1; v += ys) {
    fmt::format_to(out,
                   "<line x1=\"{0:.1f}\" x2=\"{1:.1f}\" y1=\"{2:.1f}\" y2=\"{2:.1f}\" stroke=\"#ddd\"/>"
                   "<text x=\"{3:.1f}\" y=\"{4:.1f}\" text-anchor=\"end\" font-size=\"10\">{5:g}</text>\n",
                   f.px, f.px + f.pw, f.sy(v), f.px - 4, f.sy(v) + 3, std::abs(v) < 1e-12 * ys ? 0.0 : v);
  }
  if (panel.log_x) {
    for (double d = std::ceil(x0); d <= x1; d += 1.0) {
      const double px = f.px + (d - x0) / (x1 - x0) * f.pw;
      fmt::format_to(out,
                     "<line x1=\"{0:.1f}\" x2=\"{0:.1f}\" y1=\"{1:.1f}\" y2=\"{2:.1f}\" stroke=\"#ddd\"/>"
                     "<text x=\"{0:.1f}\" y=\"{3:.1f}\" text-anchor=\"middle\" font-size=\"10\">1e{4:g}</text>\n",
                     px, f.py, f.py + f.ph, f.py + f.ph + 14, d);
    }
  } else {
    const double xs = tick_step(x1 - x0);
    for (double v = std::ceil(x0 / xs) * xs; v <= x1; v += xs) {
      fmt::format_to(out,
                     "<line x1=\"{0:.1f}\" x2=\"{0:.1f}\" y1=\"{1:.1f}\" y2=\"{2:.1f}\" stroke=\"#ddd\"/>"
                     "<text x=\"{0:.1f}\" y=\"{3:.1f}\" text-anchor=\"middle\" font-size=\"10\">{4:g}</text>\n",
                     f.sx(v), f.py, f.py + f.ph, f.py + f.ph + 14, v);
    }
  }
  fmt::format_to(out, "<text x=\"{:.1f}\" y=\"{:.1f}\" text-anchor=\"middle\" font-size=\"12\">{}</text>\n",
                 f.px + f.pw / 2, f.py + f.ph + 32, escape(panel.xlabel));
  fmt::format_to(out,
                 "<text x=\"16\" y=\"{0:.1f}\" text-anchor=\"middle\" font-size=\"12\" "
                 "transform=\"rotate(-90 16 {0:.1f})\">{1}</text>\n",
                 f.py + f.ph / 2, escape(panel.ylabel));

  // Curves, reduced to min/max per pixel column.
  for (std::size_t si = 0; si < panel.series.size(); ++si) {
    const auto& s = panel.series[si];
    const char* color = kPalette[(s.color >= 0 ? static_cast<std::size_t>(s.color) : si) % std::size(kPalette)];
    std::string pts;
    long long col = std::numeric_limits<long long>::min();
    double lo = 0, hi = 0, lo_x = 0;
    auto flush = [&] {
      if (col == std::numeric_limits<long long>::min()) return;
      pts += fmt::format("{:.1f},{:.1f} ", lo_x, f.sy(lo));
      if (hi != lo) pts += fmt::format("{:.1f},{:.1f} ", lo_x, f.sy(hi));
    };
    for (std::size_t i = 0; i < s.x.size() && i < s.y.size(); ++i) {
      if (!std::isfinite(s.y[i]) || (panel.log_x && !(s.x[i] > 0))) continue;
      const double px = f.sx(s.x[i]);
      const auto c = static_cast<long long>(std::floor(px));
      if (c != col) {
        flush();
        col = c;
        lo = hi = s.y[i];
        lo_x = px;
      } else {
        lo = std::min(lo, s.y[i]);
        hi = std::max(hi, s.y[i]);
      }
    }
    flush();
    fmt::format_to(out, "<polyline fill=\"none\" stroke=\"{}\" stroke-width=\"1.3\"{} points=\"{}\"/>\n", color,
                   s.dashed ? " stroke-dasharray=\"6,4\"" : "", pts);
    const double ly = f.py + 12 + 14 * static_cast<double>(si);
    fmt::format_to(out,
                   "<line x1=\"{0:.1f}\" x2=\"{1:.1f}\" y1=\"{2:.1f}\" y2=\"{2:.1f}\" stroke=\"{3}\" stroke-width=\"2\"{4}/>"
                   "<text x=\"{5:.1f}\" y=\"{6:.1f}\" font-size=\"11\">{7}</text>\n",
                   f.px + f.pw - 150, f.px + f.pw - 125, ly, color, s.dashed ? " stroke-dasharray=\"6,4\"" : "",
                   f.px + f.pw - 120, ly + 4, escape(s.label));
  }
}

}  // namespace

std::string render_svg(const std::vector<Panel>& panels, int width, int panel_height) {
  fmt::memory_buffer buf;
  const int height = panel_height * static_cast<int>(std::max<std::size_t>(panels.size(), 1));
  fmt::format_to(std::back_inserter(buf),
                 "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{0}\" height=\"{1}\" viewBox=\"0 0 {0} {1}\" "
                 "font-family=\"sans-serif\">\n<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n",
                 width, height);
  for (std::size_t i = 0; i < panels.size(); ++i) {
    render_panel(buf, panels[i], static_cast<double>(i) * panel_height, width, panel_height);
  }
  fmt::format_to(std::back_inserter(buf), "</svg>\n");
  return fmt::to_string(buf);
}

void write_svg(const std::vector<Panel>& panels, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot open " + path.string() + " for writing");
  out << render_svg(panels);
  if (!out) throw Error("write failed: " + path.string());
}

void export_svg_plot(const RunRecord& record, const std::vector<std::string>& columns,
                     const std::filesystem::path& path, const std::string& title) {
  Panel p{title, "t (s)", "", false, {}};
  const auto t = record.column(0);
  for (const auto& c : columns) p.series.push_back(Series{c, t, record.column(c), false});
  write_svg({p}, path);
}

std::vector<Panel> bode_panels(const ObserverGainSet& g, const std::vector<double>& omega) {
  Panel mag{fmt::format("Magnitude (n={}, p={}, eps={:g})", g.n, g.p, g.eps), "omega (rad/s)", "dB", true, {}};
  Panel ph{"Phase", "omega (rad/s)", "deg", true, {}};
  for (int j = 1; j <= g.n; ++j) {
    const auto obs = response(transfer_function(g, j), omega);
    const auto ideal = ideal_response(j - g.p, omega);
    mag.series.push_back(Series{fmt::format("x{}", j), omega, obs.magnitude_db, false, j - 1});
    mag.series.push_back(Series{fmt::format("s^{}", j - g.p), omega, ideal.magnitude_db, true, j - 1});
    ph.series.push_back(Series{fmt::format("x{}", j), omega, obs.phase_deg, false, j - 1});
    ph.series.push_back(Series{fmt::format("s^{}", j - g.p), omega, ideal.phase_deg, true, j - 1});
  }
  return {mag, ph};
}

}  // namespace obsint
