// Scenario definitions: the built-in simulations and the key = value
// scenario file format.

#ifndef SYNATT_SCENARIO_HPP_
#define SYNATT_SCENARIO_HPP_

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "synatt/hybrid_sim.hpp"
#include "synatt/warping.hpp"

namespace synatt {

/// csh: warped family with switching; ncsh: U = 1 - q eta with switching;
/// cs_fixed: warped family with the logic index held at q0.
enum class ControllerKind { csh, ncsh, cs_fixed };

std::string to_string(ControllerKind k);
ControllerKind parse_controller_kind(const std::string& s);

struct VariantSpec {
  ControllerKind kind = ControllerKind::csh;
  LogicState q0 = LogicState::plus();
  /// File-name friendly label, e.g. "csh", "ncsh", "cs_q1", "cs_qm1".
  std::string label() const;
};

/// Initial attitude taken from the critical-point listing of the warped
/// family: eigenvector index 1..3 (ascending eigenvalues), representative
/// sign, and logic index of the member.
struct CriticalStart {
  int eigen_index = 3;
  int sign = 1;
  LogicState q = LogicState::plus();
};

struct ScenarioSpec {
  std::string name = "custom";
  ClosedLoop loop = ClosedLoop::dynamic;
  std::vector<VariantSpec> variants;

  Vec4 Q0 = Vec4(1.0, 0.0, 0.0, 0.0);
  std::optional<CriticalStart> Q0_critical;
  Vec3 omega0 = Vec3::Zero();

  Vec3 inertia_diag = Vec3(6.4, 6.7, 9.3);
  Vec3 A_diag = Vec3(0.6, 0.8, 1.0);
  Vec3 u = Vec3::Ones().normalized();
  double k = 0.54;
  double delta_h = 0.1;
  double ncsh_delta = 0.5;
  double kp = 30.0;
  double kd = 15.0;

  MeasurementModel measurement = CleanMeasurement{};
  SolverConfig solver;
  std::uint64_t seed = 42;
  bool experiment_mode = false;
};

/// Names of the compiled-in scenarios.
std::vector<std::string> builtin_scenario_names();
/// Throws std::invalid_argument for unknown names.
ScenarioSpec builtin_scenario(const std::string& name);

/// Parses the key = value format. '#' starts a comment; blank lines are
/// ignored; unknown keys are errors. Throws std::invalid_argument.
ScenarioSpec parse_scenario(std::istream& in);
ScenarioSpec load_scenario_file(const std::string& path);
/// Serializes every key; parse_scenario(format_scenario(s)) reproduces s.
std::string format_scenario(const ScenarioSpec& s);

/// Warp parameters and families built from a scenario.
WarpParams warp_params(const ScenarioSpec& s);
std::shared_ptr<const SpfFamily> make_family(const ScenarioSpec& s, ControllerKind kind);
HybridController make_controller(const ScenarioSpec& s, const VariantSpec& v);
/// Resolves the initial attitude (including critical-point starts).
Vec4 initial_attitude(const ScenarioSpec& s);
SimulationSetup make_setup(const ScenarioSpec& s, const VariantSpec& v);

struct VariantRun {
  VariantSpec variant;
  SimTrace trace;
};

std::vector<VariantRun> run_scenario(const ScenarioSpec& s);

}  // namespace synatt

#endif  // SYNATT_SCENARIO_HPP_
