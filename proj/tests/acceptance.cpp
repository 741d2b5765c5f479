// Acceptance gate: one PASS/FAIL line per criterion, nonzero exit if any
// criterion fails. Criterion 11 drives the built CLI, whose path is passed
// with --cli.

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "synatt/commands.hpp"
#include "synatt/lyapunov.hpp"
#include "synatt/verify.hpp"

using namespace synatt;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass;
  std::string detail;
};

std::string fmt(const char* f, double a) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, a);
  return buf;
}

Outcome suite_gate(const std::string& name, double max_seconds = INFINITY) {
  const SuiteResult r = run_suite(name);
  std::string failed;
  for (const CheckResult& c : r.checks) {
    if (!c.passed) failed += " " + c.name;
  }
  const bool pass = r.passed() && r.seconds < max_seconds;
  std::string d = std::to_string(r.checks.size()) + " checks in " + fmt("%.2f", r.seconds) + " s";
  if (std::isfinite(max_seconds)) d += " (limit " + fmt("%g", max_seconds) + " s)";
  if (!failed.empty()) d += "; failed:" + failed;
  return {pass, d};
}

const CshFamily& reference_family() {
  static const CshFamily F(warp_params(builtin_scenario("sim1")));
  return F;
}

SimTrace run_variant(const ScenarioSpec& s, ControllerKind kind) {
  for (const VariantSpec& v : s.variants) {
    if (v.kind == kind) return run(make_setup(s, v));
  }
  throw std::logic_error("scenario " + s.name + " has no variant " + to_string(kind));
}

// Samples at step boundaries, one per continuous time: the post-jump sample
// when jumps occur there. Makes traces with different jump counts comparable.
std::vector<const TraceSample*> time_aligned(const SimTrace& tr) {
  std::vector<const TraceSample*> out;
  for (const TraceSample& s : tr.samples) {
    if (!out.empty() && out.back()->time.t == s.time.t) out.back() = &s;
    else out.push_back(&s);
  }
  return out;
}

Outcome criterion1() { return suite_gate("lemma1", 5.0); }

Outcome criterion2() { return suite_gate("gradients", 10.0); }

Outcome criterion3() {
  const Outcome suite = suite_gate("consistency");
  const NcshFamily N;
  const UnitQuaternion Q = UnitQuaternion::from_vector(Vec4(0, 0.6, 0.8, 0));
  double witness = 0.0;
  for (LogicState q : {LogicState::plus(), LogicState::minus()}) {
    witness = std::max(witness, (feedback_kappa(N, Q, q) - feedback_kappa(N, -Q, q)).norm());
  }
  return {suite.pass && witness >= 0.1, suite.detail + "; NCSH witness |kappa(Q)-kappa(-Q)| = " + fmt("%.3g", witness)};
}

Outcome criterion4() {
  const CshFamily& F = reference_family();
  const GapBound& b = F.bounds();
  const double closed = b.closed_form.value_or(NAN);
  double brute = 1e9;
  int undesired = 0;
  for (const CriticalPoint& c : F.critical_points()) {
    if (c.desired()) continue;
    ++undesired;
    brute = std::min(brute, F.synergy_gap(c.Q, c.q));
  }
  const double dh = builtin_scenario("sim1").delta_h;
  const bool pass = std::abs(closed - 0.1137) <= 0.0005 && std::abs(b.sharper - 0.1272) <= 0.0005 && dh < closed &&
                    dh < b.sharper && undesired == 12 && brute >= b.sharper - 1e-9;
  return {pass, "closed form " + fmt("%.6f", closed) + ", sharper " + fmt("%.6f", b.sharper) + ", min gap over " +
                    std::to_string(undesired) + " points " + fmt("%.6f", brute) + ", delta_h " + fmt("%g", dh)};
}

Outcome criterion5() {
  const CshFamily& F = reference_family();
  double worst = 0.0;
  for (const CriticalPoint& c : F.critical_points()) {
    worst = std::max(worst, (projector(c.Q.vec()) * F.grad4(c.Q, c.q)).norm());
  }
  const Outcome suite = suite_gate("critpoints", 60.0);
  const bool pass = suite.pass && F.critical_points().size() == 16 && worst < 1e-9;
  return {pass, std::to_string(F.critical_points().size()) + " points, max residual " + fmt("%.2e", worst) + "; " +
                    suite.detail};
}

Outcome criterion6() {
  const ScenarioSpec s = builtin_scenario("sim1");
  const RunSummary csh = summarize(run_variant(s, ControllerKind::csh));
  const SimTrace fixed = run_variant(s, ControllerKind::cs_fixed);
  double tau = 0.0;
  for (const TraceSample& x : fixed.samples) tau = std::max(tau, x.tau.norm());
  const bool pass = csh.settle_time && *csh.settle_time <= 10.0 && tau < 1e-9;
  return {pass, "CSH settles at t = " + (csh.settle_time ? fmt("%.3f", *csh.settle_time) : std::string("never")) +
                    " s; CS-fixed max|tau| = " + fmt("%.2e", tau) + " over " + fmt("%g", s.solver.t_max) + " s"};
}

Outcome criterion7() {
  const ScenarioSpec flip = builtin_scenario("sim2");
  ScenarioSpec clean = flip;
  clean.measurement = CleanMeasurement{};

  const SimTrace nf = run_variant(flip, ControllerKind::ncsh);
  const SimTrace nc = run_variant(clean, ControllerKind::ncsh);
  std::size_t early = 0;
  for (const JumpMarker& m : nf.jumps) early += m.before.t <= 2.0;
  const auto a = time_aligned(nf), b = time_aligned(nc);
  double sup = 0.0;
  for (std::size_t i = 0; i < std::min(a.size(), b.size()); ++i) {
    sup = std::max(sup, std::abs(a[i]->omega.norm() - b[i]->omega.norm()));
  }

  const SimTrace cf = run_variant(flip, ControllerKind::csh);
  const SimTrace cc = run_variant(clean, ControllerKind::csh);
  double diff = cf.samples.size() == cc.samples.size() ? 0.0 : INFINITY;
  for (std::size_t i = 0; std::isfinite(diff) && i < cf.samples.size(); ++i) {
    const TraceSample& x = cf.samples[i];
    const TraceSample& y = cc.samples[i];
    if (x.time != y.time || x.q != y.q) diff = INFINITY;
    diff = std::max({diff, (x.Q - y.Q).cwiseAbs().maxCoeff(), (x.omega - y.omega).cwiseAbs().maxCoeff(),
                     (x.tau - y.tau).cwiseAbs().maxCoeff()});
  }
  const bool pass = early >= 5 && sup > 0.1 && diff <= 1e-12;
  return {pass, "NCSH jumps in [0, 2] s: " + std::to_string(early) + ", sup||w|flip - |w|clean| = " + fmt("%.3f", sup) +
                    "; CSH flip vs clean max diff " + fmt("%.2e", diff)};
}

double tau_norm_variance(const SimTrace& tr, double t0, double t1) {
  std::vector<double> v;
  for (const TraceSample& s : tr.samples) {
    if (s.time.t >= t0 && s.time.t <= t1) v.push_back(s.tau.norm());
  }
  double mean = 0.0;
  for (double x : v) mean += x;
  mean /= static_cast<double>(v.size());
  double var = 0.0;
  for (double x : v) var += (x - mean) * (x - mean);
  return var / static_cast<double>(v.size() - 1);
}

Outcome criterion8() {
  const ScenarioSpec s3 = builtin_scenario("sim3");
  const double eta_c = std::abs(run_variant(s3, ControllerKind::csh).samples.back().Q(0));
  const double eta_n = std::abs(run_variant(s3, ControllerKind::ncsh).samples.back().Q(0));

  const ScenarioSpec s4 = builtin_scenario("sim4");
  const SimTrace c4 = run_variant(s4, ControllerKind::csh);
  const SimTrace n4 = run_variant(s4, ControllerKind::ncsh);
  const double var_c = tau_norm_variance(c4, 2.0, 10.0);
  const double var_n = tau_norm_variance(n4, 2.0, 10.0);
  const bool pass = eta_c > 0.99 && eta_n > 0.99 && n4.jumps.size() > c4.jumps.size() && var_n > var_c;
  return {pass, "n_max 0.05: |eta(10)| CSH " + fmt("%.6f", eta_c) + ", NCSH " + fmt("%.6f", eta_n) +
                    "; n_max 0.13: jumps NCSH " + std::to_string(n4.jumps.size()) + " vs CSH " +
                    std::to_string(c4.jumps.size()) + ", var|tau| on [2, 10] s NCSH " + fmt("%.4g", var_n) +
                    " vs CSH " + fmt("%.4g", var_c) + " (seed " + std::to_string(s4.seed) + ")"};
}

Outcome criterion9() {
  int runs = 0, bad = 0;
  std::size_t jumps = 0;
  for (const std::string& name : builtin_scenario_names()) {
    ScenarioSpec s = builtin_scenario(name);
    s.measurement = CleanMeasurement{};
    for (const VariantSpec& v : s.variants) {
      const SimulationSetup setup = make_setup(s, v);
      const SimTrace tr = run(setup);
      const LyapunovReport r = lyapunov_monitor(tr, setup.loop, setup.controller.family(), setup.controller.gains().kp,
                                                setup.inertia, setup.controller.switching_config().delta_h());
      ++runs;
      bad += !r.ok();
      jumps += tr.jumps.size();
    }
  }
  return {bad == 0 && runs > 0, std::to_string(runs) + " clean runs, " + std::to_string(jumps) + " jumps, " +
                                    std::to_string(bad) + " with violations"};
}

Outcome criterion10() {
  ScenarioSpec s = builtin_scenario("sim1");
  s.A_diag = Vec3(0.6, 0.8, 0.8);
  s.Q0_critical.reset();
  const WarpParams W = warp_params(s);
  const CshFamily F(W);
  const auto v = orthogonal_eigenvector(W);
  double mu = INFINITY, dot = INFINITY;
  if (v) {
    dot = std::abs(v->dot(W.axis()));
    const CriticalPoint c = critical_point_for_eigenvector(W, *v, LogicState::plus());
    mu = F.synergy_gap(c.Q, c.q);
  }
  bool refused = false;
  try {
    make_controller(s, VariantSpec{ControllerKind::csh, LogicState::plus()});
  } catch (const NotSynergistic&) {
    refused = true;
  }
  const bool pass = v && dot < 1e-12 && mu < 1e-10 && refused && !F.certified_delta();
  return {pass, "|u.v| = " + fmt("%.1e", dot) + ", gap at witness point " + fmt("%.2e", mu) +
                    (refused ? ", controller assembly refused" : ", controller assembly NOT refused")};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

Outcome criterion11(const std::string& cli) {
  if (cli.empty()) return {false, "no --cli given"};
  const fs::path root = fs::temp_directory_path() / "synatt_acceptance";
  fs::remove_all(root);
  std::vector<std::string> files;
  for (const char* run : {"a", "b"}) {
    const std::string cmd = "\"" + cli + "\" simulate sim3 --seed 42 --no-plots --out \"" + (root / run).string() +
                            "\" > /dev/null";
    if (std::system(cmd.c_str()) != 0) return {false, "command failed: " + cmd};
  }
  std::size_t compared = 0, bytes = 0;
  bool same = true;
  for (const auto& e : fs::directory_iterator(root / "a")) {
    const std::string a = slurp(e.path());
    const std::string b = slurp(root / "b" / e.path().filename());
    same = same && a == b && !a.empty();
    ++compared;
    bytes += a.size();
  }
  fs::remove_all(root);
  return {same && compared == 2, std::to_string(compared) + " trace files, " + std::to_string(bytes) +
                                     " bytes, " + (same ? "identical" : "DIFFERENT")};
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Acceptance criteria"};
  std::string cli;
  app.add_option("--cli", cli, "Path to the synatt executable");
  CLI11_PARSE(app, argc, argv);

  const std::vector<std::pair<std::string, std::function<Outcome()>>> criteria = {
      {"identity suite", criterion1},
      {"gradient suite", criterion2},
      {"consistency", criterion3},
      {"gap bound", criterion4},
      {"critical-point certification", criterion5},
      {"simulation 1", criterion6},
      {"simulation 2", criterion7},
      {"simulations 3-4", criterion8},
      {"Lyapunov monitors", criterion9},
      {"degenerate spectrum witness", criterion10},
      {"determinism", [&] { return criterion11(cli); }},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    Outcome o;
    try {
      o = criteria[i].second();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    failed += !o.pass;
    std::printf("%s criterion %2zu %s: %s\n", o.pass ? "PASS" : "FAIL", i + 1, criteria[i].first.c_str(),
                o.detail.c_str());
  }
  std::printf("%zu/%zu criteria passed\n", criteria.size() - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
