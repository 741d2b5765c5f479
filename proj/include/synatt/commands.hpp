// The command implementations behind the CLI. Argument parsing lives in the
// executable; these take parsed options and return a process exit code.

#ifndef SYNATT_COMMANDS_HPP_
#define SYNATT_COMMANDS_HPP_

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "synatt/scenario.hpp"

namespace synatt {

enum ExitCode : int { kExitOk = 0, kExitVerifyFailed = 1, kExitUsage = 2, kExitRuntime = 3 };

std::string artifact_version();

/// A built-in scenario name or a path to a scenario file.
ScenarioSpec resolve_scenario(const std::string& name_or_path);

struct SimulateOptions {
  std::string scenario;
  std::string out_dir = ".";
  std::optional<std::uint64_t> seed;
  std::optional<double> step;
  std::optional<double> tmax;
  bool plots = true;
};

/// Writes <out>/<scenario>_<variant>.csv per variant and, from the files just
/// written, <out>/<scenario>_{eta,q,omega,tau}.svg.
int cmd_simulate(const SimulateOptions& o, std::ostream& out, std::ostream& err);

/// suite is one of verify_suite_names() or "all".
int cmd_verify(const std::string& suite, std::ostream& out, std::ostream& err);

struct CritpointsOptions {
  std::optional<double> k;
  std::optional<Vec3> A_diag;
  std::optional<Vec3> u;
};
int cmd_critpoints(const CritpointsOptions& o, std::ostream& out, std::ostream& err);

/// param is delta_h, k or n_max. The default scenario is sim1 for delta_h and
/// k, sim4 for n_max. Sweeping delta_h turns on experiment mode.
struct SweepOptions {
  std::string param;
  std::vector<double> values;
  std::optional<std::string> scenario;
};
int cmd_sweep(const SweepOptions& o, std::ostream& out, std::ostream& err);

/// Re-plots existing trace files into <out>/<stem>_*.svg.
int cmd_plot(const std::vector<std::string>& traces, const std::string& out_dir, const std::string& stem,
             std::ostream& out, std::ostream& err);

/// Summary numbers for one run, shared by simulate and sweep output.
struct RunSummary {
  std::size_t jumps = 0;
  /// First time with |eta| > 0.999 and |omega| < 1e-3; empty if never.
  std::optional<double> settle_time;
  double final_eta = 0.0;
  double max_tau = 0.0;
  Termination termination = Termination::time_limit;
};
RunSummary summarize(const SimTrace& tr);

/// Parses "a,b,c" into numbers; throws std::invalid_argument.
std::vector<double> parse_number_list(const std::string& s);

}  // namespace synatt

#endif  // SYNATT_COMMANDS_HPP_
