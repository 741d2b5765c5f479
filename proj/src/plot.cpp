#include "synatt/plot.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace synatt {

namespace {

constexpr double kWidth = 720, kHeight = 300;
constexpr double kLeft = 70, kRight = 20, kTop = 30, kBottom = 45;
constexpr int kColumns = 700;
const char* const kColors[] = {"#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e"};

std::string num(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2f", v);
  return buf;
}

std::string tick_label(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%g", std::abs(v) < 1e-12 ? 0.0 : v);
  return buf;
}

std::string escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    if (c == '<') out += "&lt;";
    else if (c == '>') out += "&gt;";
    else if (c == '&') out += "&amp;";
    else out += c;
  }
  return out;
}

// Roughly 5 ticks at 1, 2 or 5 times a power of ten.
std::vector<double> ticks(double lo, double hi) {
  const double span = hi - lo;
  const double raw = span / 5.0;
  const double mag = std::pow(10.0, std::floor(std::log10(raw)));
  double step = mag;
  for (double m : {1.0, 2.0, 5.0, 10.0}) {
    step = m * mag;
    if (span / step <= 6.0) break;
  }
  std::vector<double> out;
  for (double v = std::ceil(lo / step) * step; v <= hi + 1e-9 * span; v += step) out.push_back(v);
  return out;
}

// Keeps the first, min, max and last point of each pixel column, in order.
std::vector<std::pair<double, double>> decimate(const PlotSeries& s, double x0, double x1) {
  std::vector<std::pair<double, double>> out;
  const std::size_t n = std::min(s.x.size(), s.y.size());
  if (n <= 4 * static_cast<std::size_t>(kColumns)) {
    for (std::size_t i = 0; i < n; ++i) out.emplace_back(s.x[i], s.y[i]);
    return out;
  }
  std::size_t i = 0;
  while (i < n) {
    const int col = static_cast<int>((s.x[i] - x0) / (x1 - x0) * kColumns);
    std::size_t lo = i, hi = i, end = i;
    while (end < n && static_cast<int>((s.x[end] - x0) / (x1 - x0) * kColumns) == col) {
      if (s.y[end] < s.y[lo]) lo = end;
      if (s.y[end] > s.y[hi]) hi = end;
      ++end;
    }
    std::vector<std::size_t> keep = {i, lo, hi, end - 1};
    std::sort(keep.begin(), keep.end());
    keep.erase(std::unique(keep.begin(), keep.end()), keep.end());
    for (std::size_t k : keep) out.emplace_back(s.x[k], s.y[k]);
    i = end;
  }
  return out;
}

}  // namespace

std::string render_svg(const PanelSpec& panel) {
  double x0 = std::numeric_limits<double>::infinity(), x1 = -x0, y0 = x0, y1 = -x0;
  for (const PlotSeries& s : panel.series) {
    for (double v : s.x) x0 = std::min(x0, v), x1 = std::max(x1, v);
    for (double v : s.y) {
      if (std::isfinite(v)) y0 = std::min(y0, v), y1 = std::max(y1, v);
    }
  }
  if (!(x1 > x0)) x0 = 0.0, x1 = 1.0;
  if (!(y1 > y0)) {
    const double c = std::isfinite(y0) ? y0 : 0.0;
    y0 = c - 1.0, y1 = c + 1.0;
  }
  const double pad = 0.05 * (y1 - y0);
  y0 -= pad, y1 += pad;

  const double pw = kWidth - kLeft - kRight, ph = kHeight - kTop - kBottom;
  const auto px = [&](double x) { return kLeft + (x - x0) / (x1 - x0) * pw; };
  const auto py = [&](double y) { return kTop + (y1 - y) / (y1 - y0) * ph; };

  std::ostringstream o;
  o << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << kWidth << "\" height=\"" << kHeight
    << "\" font-family=\"sans-serif\" font-size=\"12\">\n";
  o << "<rect width=\"100%\" height=\"100%\" fill=\"white\"/>\n";
  o << "<text x=\"" << num(kWidth / 2) << "\" y=\"18\" text-anchor=\"middle\">" << escape(panel.title) << "</text>\n";
  for (double t : ticks(x0, x1)) {
    o << "<line x1=\"" << num(px(t)) << "\" y1=\"" << num(kTop) << "\" x2=\"" << num(px(t)) << "\" y2=\""
      << num(kTop + ph) << "\" stroke=\"#e0e0e0\"/>\n";
    o << "<text x=\"" << num(px(t)) << "\" y=\"" << num(kTop + ph + 16) << "\" text-anchor=\"middle\">"
      << tick_label(t) << "</text>\n";
  }
  for (double t : ticks(y0, y1)) {
    o << "<line x1=\"" << num(kLeft) << "\" y1=\"" << num(py(t)) << "\" x2=\"" << num(kLeft + pw) << "\" y2=\""
      << num(py(t)) << "\" stroke=\"#e0e0e0\"/>\n";
    o << "<text x=\"" << num(kLeft - 6) << "\" y=\"" << num(py(t) + 4) << "\" text-anchor=\"end\">" << tick_label(t)
      << "</text>\n";
  }
  o << "<rect x=\"" << num(kLeft) << "\" y=\"" << num(kTop) << "\" width=\"" << num(pw) << "\" height=\"" << num(ph)
    << "\" fill=\"none\" stroke=\"black\"/>\n";
  o << "<text x=\"" << num(kLeft + pw / 2) << "\" y=\"" << num(kHeight - 8) << "\" text-anchor=\"middle\">t [s]</text>\n";
  o << "<text transform=\"translate(16," << num(kTop + ph / 2) << ") rotate(-90)\" text-anchor=\"middle\">"
    << escape(panel.ylabel) << "</text>\n";

  for (std::size_t k = 0; k < panel.series.size(); ++k) {
    const char* color = kColors[k % std::size(kColors)];
    o << "<polyline fill=\"none\" stroke=\"" << color << "\" stroke-width=\"1.2\" points=\"";
    bool first = true;
    for (const auto& [x, y] : decimate(panel.series[k], x0, x1)) {
      if (!std::isfinite(y)) continue;
      o << (first ? "" : " ") << num(px(x)) << "," << num(py(y));
      first = false;
    }
    o << "\"/>\n";
    const double ly = kTop + 14 + 16 * static_cast<double>(k);
    o << "<line x1=\"" << num(kLeft + pw - 110) << "\" y1=\"" << num(ly - 4) << "\" x2=\"" << num(kLeft + pw - 90)
      << "\" y2=\"" << num(ly - 4) << "\" stroke=\"" << color << "\" stroke-width=\"2\"/>\n";
    o << "<text x=\"" << num(kLeft + pw - 84) << "\" y=\"" << num(ly) << "\">" << escape(panel.series[k].label)
      << "</text>\n";
  }
  o << "</svg>\n";
  return o.str();
}

std::string panel_name(PanelKind k) {
  switch (k) {
    case PanelKind::eta: return "eta";
    case PanelKind::logic: return "q";
    case PanelKind::omega_norm: return "omega";
    case PanelKind::tau_norm: return "tau";
  }
  return "unknown";
}

PanelSpec make_panel(PanelKind k, const std::vector<std::pair<std::string, TraceFile>>& traces) {
  PanelSpec p;
  switch (k) {
    case PanelKind::eta: p.title = "scalar part of the attitude quaternion", p.ylabel = "eta"; break;
    case PanelKind::logic: p.title = "logic variable", p.ylabel = "q"; break;
    case PanelKind::omega_norm: p.title = "angular velocity norm", p.ylabel = "|omega| [rad/s]"; break;
    case PanelKind::tau_norm: p.title = "torque norm", p.ylabel = "|tau| [N m]"; break;
  }
  for (const auto& [label, f] : traces) {
    PlotSeries s;
    s.label = label;
    for (const TraceSample& r : f.rows) {
      s.x.push_back(r.time.t);
      switch (k) {
        case PanelKind::eta: s.y.push_back(r.Q(0)); break;
        case PanelKind::logic: s.y.push_back(r.q.sign()); break;
        case PanelKind::omega_norm: s.y.push_back(r.omega.norm()); break;
        case PanelKind::tau_norm: s.y.push_back(r.tau.norm()); break;
      }
    }
    p.series.push_back(std::move(s));
  }
  return p;
}

std::vector<std::string> write_panels(const std::string& dir, const std::string& stem,
                                      const std::vector<std::pair<std::string, TraceFile>>& traces) {
  std::vector<std::string> paths;
  for (PanelKind k : {PanelKind::eta, PanelKind::logic, PanelKind::omega_norm, PanelKind::tau_norm}) {
    const std::string path = (std::filesystem::path(dir) / (stem + "_" + panel_name(k) + ".svg")).string();
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    out << render_svg(make_panel(k, traces));
    paths.push_back(path);
  }
  return paths;
}

}  // namespace synatt
