// SVG line plots of trace files. Plots are drawn from parsed traces only, so
// what is plotted is exactly what was written to disk.

#ifndef SYNATT_PLOT_HPP_
#define SYNATT_PLOT_HPP_

#include <string>
#include <vector>

#include "synatt/trace_io.hpp"

namespace synatt {

struct PlotSeries {
  std::string label;
  std::vector<double> x;
  std::vector<double> y;
};

struct PanelSpec {
  std::string title;
  std::string ylabel;
  std::vector<PlotSeries> series;
};

/// A standalone SVG document with axes, ticks, a legend and one polyline per
/// series. Long series are decimated to per-column min/max pairs.
std::string render_svg(const PanelSpec& panel);

enum class PanelKind { eta, logic, omega_norm, tau_norm };
std::string panel_name(PanelKind k);
PanelSpec make_panel(PanelKind k, const std::vector<std::pair<std::string, TraceFile>>& traces);

/// Writes <dir>/<stem>_<panel>.svg for the four panels and returns the paths.
std::vector<std::string> write_panels(const std::string& dir, const std::string& stem,
                                      const std::vector<std::pair<std::string, TraceFile>>& traces);

}  // namespace synatt

#endif  // SYNATT_PLOT_HPP_
