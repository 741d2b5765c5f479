#include "synatt/commands.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <ostream>
#include <sstream>
#include <stdexcept>

#include "synatt/numfmt.hpp"
#include "synatt/plot.hpp"
#include "synatt/trace_io.hpp"
#include "synatt/verify.hpp"

namespace synatt {

namespace fs = std::filesystem;

std::string artifact_version() { return SYNATT_VERSION; }

ScenarioSpec resolve_scenario(const std::string& name_or_path) {
  for (const std::string& n : builtin_scenario_names()) {
    if (n == name_or_path) return builtin_scenario(n);
  }
  if (fs::is_regular_file(name_or_path)) return load_scenario_file(name_or_path);
  std::string known;
  for (const std::string& n : builtin_scenario_names()) known += (known.empty() ? "" : ", ") + n;
  throw std::invalid_argument("unknown scenario '" + name_or_path + "' (built-in: " + known + ")");
}

std::vector<double> parse_number_list(const std::string& s) {
  std::vector<double> out;
  std::istringstream in(s);
  std::string item;
  while (std::getline(in, item, ',')) {
    const auto b = item.find_first_not_of(' ');
    const auto e = item.find_last_not_of(' ');
    if (b == std::string::npos) throw std::invalid_argument("empty entry in number list '" + s + "'");
    item = item.substr(b, e - b + 1);
    double v = 0.0;
    const auto r = std::from_chars(item.data(), item.data() + item.size(), v);
    if (r.ec != std::errc() || r.ptr != item.data() + item.size()) {
      throw std::invalid_argument("cannot parse number '" + item + "'");
    }
    out.push_back(v);
  }
  if (out.empty()) throw std::invalid_argument("empty number list");
  return out;
}

RunSummary summarize(const SimTrace& tr) {
  RunSummary s;
  s.jumps = tr.jumps.size();
  s.termination = tr.termination;
  for (const TraceSample& x : tr.samples) {
    s.max_tau = std::max(s.max_tau, x.tau.norm());
    if (!s.settle_time && std::abs(x.Q(0)) > 0.999 && x.omega.norm() < 1e-3) s.settle_time = x.time.t;
  }
  if (!tr.samples.empty()) s.final_eta = tr.samples.back().Q(0);
  return s;
}

namespace {

std::string settle_text(const RunSummary& s) {
  if (!s.settle_time) return "-";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3f", *s.settle_time);
  return buf;
}

TraceFile to_trace_file(const ScenarioSpec& s, const VariantRun& r) {
  TraceFile f;
  f.meta = {
      {"artifact", "synatt " + artifact_version()},
      {"scenario", s.name},
      {"variant", r.variant.label()},
      {"controller", to_string(r.variant.kind) + " q0=" + std::to_string(r.variant.q0.value())},
      {"seed", std::to_string(s.seed)},
      {"termination", to_string(r.trace.termination) + (r.trace.message.empty() ? "" : " (" + r.trace.message + ")")},
      {"jumps", std::to_string(r.trace.jumps.size())},
  };
  std::string echo = format_scenario(s);
  if (!echo.empty() && echo.back() == '\n') echo.pop_back();
  f.meta.emplace_back("config", echo);
  f.rows = r.trace.samples;
  return f;
}

void print_summary_header(std::ostream& out) {
  out << "variant   jumps  termination  settle[s]  final_eta       max|tau|\n";
}

void print_summary_row(std::ostream& out, const std::string& label, const RunSummary& s) {
  char buf[160];
  std::snprintf(buf, sizeof buf, "%-8s  %5zu  %-11s  %9s  %-14.10f  %.3e\n", label.c_str(), s.jumps,
                to_string(s.termination).c_str(), settle_text(s).c_str(), s.final_eta, s.max_tau);
  out << buf;
}

}  // namespace

int cmd_simulate(const SimulateOptions& o, std::ostream& out, std::ostream& err) {
  ScenarioSpec s;
  try {
    s = resolve_scenario(o.scenario);
    if (o.seed) s.seed = *o.seed;
    if (o.step) s.solver.h = *o.step;
    if (o.tmax) s.solver.t_max = *o.tmax;
    s.solver.validate();
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  try {
    fs::create_directories(o.out_dir);
    const std::vector<VariantRun> runs = run_scenario(s);
    bool aborted = false;
    std::vector<std::pair<std::string, TraceFile>> written;
    print_summary_header(out);
    for (const VariantRun& r : runs) {
      const std::string path = (fs::path(o.out_dir) / (s.name + "_" + r.variant.label() + ".csv")).string();
      save_trace(path, to_trace_file(s, r));
      // Plots are drawn from what was written, not from memory.
      written.emplace_back(r.variant.label(), load_trace(path));
      print_summary_row(out, r.variant.label(), summarize(r.trace));
      out << "  -> " << path << "\n";
      if (r.trace.termination == Termination::non_finite) {
        err << "error: " << r.variant.label() << ": " << r.trace.message << "\n";
        aborted = true;
      }
    }
    if (o.plots) {
      for (const std::string& p : write_panels(o.out_dir, s.name, written)) out << "  -> " << p << "\n";
    }
    return aborted ? kExitRuntime : kExitOk;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
}

int cmd_verify(const std::string& suite, std::ostream& out, std::ostream& err) {
  std::vector<std::string> names;
  if (suite == "all") {
    names = verify_suite_names();
  } else {
    for (const std::string& n : verify_suite_names()) {
      if (n == suite) names.push_back(n);
    }
    if (names.empty()) {
      err << "error: unknown suite '" << suite << "' (lemma1, gradients, consistency, critpoints, gap, lyapunov, all)\n";
      return kExitUsage;
    }
  }
  bool ok = true;
  try {
    for (const std::string& n : names) {
      const SuiteResult r = run_suite(n);
      out << format_suite(r);
      ok = ok && r.passed();
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return ok ? kExitOk : kExitVerifyFailed;
}

int cmd_critpoints(const CritpointsOptions& o, std::ostream& out, std::ostream& err) {
  ScenarioSpec s = builtin_scenario("sim1");
  if (o.k) s.k = *o.k;
  if (o.A_diag) s.A_diag = *o.A_diag;
  if (o.u) s.u = *o.u;
  std::optional<WarpParams> W;
  try {
    W.emplace(warp_params(s));
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }
  const CshFamily F(*W);
  char buf[256];
  std::snprintf(buf, sizeof buf, "A = diag(%g, %g, %g)  u = (%.6f, %.6f, %.6f)  k = %g\n", s.A_diag(0), s.A_diag(1),
                s.A_diag(2), W->axis()(0), W->axis()(1), W->axis()(2), s.k);
  out << buf;

  if (!F.certified_delta()) {
    err << "error: not synergistic: " << F.uncertified_reason() << "\n";
    if (const auto v = orthogonal_eigenvector(*W)) {
      const CriticalPoint c = critical_point_for_eigenvector(*W, *v, LogicState::plus());
      std::snprintf(buf, sizeof buf,
                    "witness: eigenvector (%.6f, %.6f, %.6f) orthogonal to u; critical point Q = [%.6f, %.6f, %.6f, "
                    "%.6f] has synergy gap %.3e\n",
                    (*v)(0), (*v)(1), (*v)(2), c.Q.vec()(0), c.Q.vec()(1), c.Q.vec()(2), c.Q.vec()(3),
                    F.synergy_gap(c.Q, c.q));
      out << buf;
    }
    return kExitRuntime;
  }

  const GapBound& b = F.bounds();
  if (b.closed_form) out << "closed-form gap bound: " << format_double(*b.closed_form) << "\n";
  out << "sharper gap bound:     " << format_double(b.sharper) << "\n";
  out << "kind       i  q   theta*               eta            eps1           eps2           eps3           U           "
         "   mu             |kappa|\n";
  for (const CriticalPoint& c : F.critical_points()) {
    const Vec4 x = c.Q.vec();
    std::snprintf(buf, sizeof buf, "%-9s  %s  %+d  %.17f  %+.10f  %+.10f  %+.10f  %+.10f  %.10f  %.10f  %.2e\n",
                  c.desired() ? "desired" : "undesired",
                  c.desired() ? "-" : std::to_string(c.eigen_index + 1).c_str(), c.q.value(), c.theta, x(0), x(1), x(2),
                  x(3), F.value(c.Q, c.q), F.synergy_gap(c.Q, c.q), feedback_kappa(F, c.Q, c.q).norm());
    out << buf;
  }
  return kExitOk;
}

int cmd_sweep(const SweepOptions& o, std::ostream& out, std::ostream& err) {
  if (o.param != "delta_h" && o.param != "k" && o.param != "n_max") {
    err << "error: unknown sweep parameter '" << o.param << "' (delta_h, k, n_max)\n";
    return kExitUsage;
  }
  if (o.values.empty()) {
    err << "error: empty sweep range\n";
    return kExitUsage;
  }
  ScenarioSpec base;
  try {
    base = resolve_scenario(o.scenario.value_or(o.param == "n_max" ? "sim4" : "sim1"));
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  }

  out << "scenario " << base.name << ", sweeping " << o.param << "\n";
  char vbuf[32];
  std::snprintf(vbuf, sizeof vbuf, "%-10s", o.param.c_str());
  out << vbuf;
  print_summary_header(out);
  for (double v : o.values) {
    ScenarioSpec s = base;
    if (o.param == "delta_h") {
      s.delta_h = v;
      s.experiment_mode = true;
    } else if (o.param == "k") {
      s.k = v;
    } else {
      s.measurement = GaussianDirectionMeasurement{v};
    }
    std::snprintf(vbuf, sizeof vbuf, "%-10g", v);
    try {
      for (const VariantRun& r : run_scenario(s)) {
        out << vbuf;
        print_summary_row(out, r.variant.label(), summarize(r.trace));
      }
    } catch (const std::exception& e) {
      // One bad point (e.g. a gain outside its admissible range) does not end
      // the sweep.
      out << vbuf << "rejected: " << e.what() << "\n";
    }
  }
  return kExitOk;
}

int cmd_plot(const std::vector<std::string>& traces, const std::string& out_dir, const std::string& stem,
             std::ostream& out, std::ostream& err) {
  if (traces.empty()) {
    err << "error: no trace files given\n";
    return kExitUsage;
  }
  try {
    std::vector<std::pair<std::string, TraceFile>> loaded;
    for (const std::string& p : traces) {
      TraceFile f = load_trace(p);
      std::string label = f.meta_value("variant");
      if (label.empty()) label = fs::path(p).stem().string();
      loaded.emplace_back(label, std::move(f));
    }
    fs::create_directories(out_dir);
    for (const std::string& p : write_panels(out_dir, stem, loaded)) out << p << "\n";
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitOk;
}

}  // namespace synatt
