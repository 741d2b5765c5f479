// synatt: command-line front end for the synergistic attitude controller
// library.

#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "synatt/commands.hpp"

namespace {

synatt::Vec3 parse_vec3(const std::string& flag, const std::string& s) {
  const std::vector<double> v = synatt::parse_number_list(s);
  if (v.size() != 3) throw std::invalid_argument(flag + " expects three comma-separated values");
  return synatt::Vec3(v[0], v[1], v[2]);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Synergistic hybrid attitude control: simulation and verification"};
  app.set_version_flag("--version", synatt::artifact_version());
  app.require_subcommand(1);

  synatt::SimulateOptions sim;
  std::uint64_t seed = 0;
  double step = 0.0, tmax = 0.0;
  bool no_plots = false;
  auto* simulate = app.add_subcommand("simulate", "Run a scenario and write traces and plots");
  simulate->add_option("scenario", sim.scenario, "Built-in scenario (sim1..sim4, chatter) or scenario file")->required();
  simulate->add_option("--out", sim.out_dir, "Output directory")->capture_default_str();
  auto* seed_opt = simulate->add_option("--seed", seed, "Override the scenario seed");
  auto* step_opt = simulate->add_option("--step", step, "Override the integration step h [s]");
  auto* tmax_opt = simulate->add_option("--tmax", tmax, "Override the final time [s]");
  simulate->add_flag("--no-plots", no_plots, "Skip the SVG plots");

  std::string suite;
  auto* verify = app.add_subcommand("verify", "Run a verification suite");
  verify->add_option("suite", suite, "lemma1, gradients, consistency, critpoints, gap, lyapunov or all")->required();

  std::string k_text, A_text, u_text;
  auto* crit = app.add_subcommand("critpoints", "List the critical points of the warped potential family");
  crit->add_option("--k", k_text, "Warp gain");
  crit->add_option("--A", A_text, "Diagonal of A, e.g. 0.6,0.8,1");
  crit->add_option("--u", u_text, "Warp axis, e.g. 1,1,1 (normalized)");

  synatt::SweepOptions sw;
  std::string values_text, sweep_scenario;
  auto* sweep = app.add_subcommand("sweep", "Run a scenario over a parameter range");
  sweep->add_option("param", sw.param, "delta_h, k or n_max")->required();
  sweep->add_option("values", values_text, "Comma-separated values, e.g. 0,0.05,0.1,0.5")->required();
  auto* sweep_scen_opt = sweep->add_option("--scenario", sweep_scenario, "Scenario name or file");

  std::vector<std::string> traces;
  std::string plot_out = ".", plot_stem = "plot";
  auto* plot = app.add_subcommand("plot", "Plot existing trace files");
  plot->add_option("traces", traces, "Trace files")->required();
  plot->add_option("--out", plot_out, "Output directory")->capture_default_str();
  plot->add_option("--stem", plot_stem, "File name prefix")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return synatt::kExitUsage;
  }

  try {
    if (*simulate) {
      if (*seed_opt) sim.seed = seed;
      if (*step_opt) sim.step = step;
      if (*tmax_opt) sim.tmax = tmax;
      sim.plots = !no_plots;
      return synatt::cmd_simulate(sim, std::cout, std::cerr);
    }
    if (*verify) return synatt::cmd_verify(suite, std::cout, std::cerr);
    if (*crit) {
      synatt::CritpointsOptions o;
      if (!k_text.empty()) {
        const auto k = synatt::parse_number_list(k_text);
        if (k.size() != 1) throw std::invalid_argument("--k expects one value");
        o.k = k[0];
      }
      if (!A_text.empty()) o.A_diag = parse_vec3("--A", A_text);
      if (!u_text.empty()) o.u = parse_vec3("--u", u_text).normalized();
      return synatt::cmd_critpoints(o, std::cout, std::cerr);
    }
    if (*sweep) {
      sw.values = synatt::parse_number_list(values_text);
      if (*sweep_scen_opt) sw.scenario = sweep_scenario;
      return synatt::cmd_sweep(sw, std::cout, std::cerr);
    }
    if (*plot) return synatt::cmd_plot(traces, plot_out, plot_stem, std::cout, std::cerr);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return synatt::kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return synatt::kExitRuntime;
  }
  return synatt::kExitUsage;
}
