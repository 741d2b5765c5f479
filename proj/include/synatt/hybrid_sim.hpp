// Fixed-step hybrid solver for the rigid-body closed loops.
//
// Solutions are parameterized by hybrid time (t, j). Flows are integrated
// with classic RK4 at step h; the jump condition is sampled at step
// boundaries on the measured quaternion. The logic index and the measurement
// draw are held over each step (zero-order hold) while the feedback is
// re-evaluated at every RK4 stage.

#ifndef SYNATT_HYBRID_SIM_HPP_
#define SYNATT_HYBRID_SIM_HPP_

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "synatt/controller.hpp"
#include "synatt/measurement.hpp"

namespace synatt {

/// Kinematic loop: omega is the control input, omega = -kp kappa.
/// Dynamic loop: torque is the control input, tau = -kp kappa - kd omega.
enum class ClosedLoop { kinematic, dynamic };

struct HybridTime {
  double t = 0.0;
  int j = 0;
  friend auto operator<=>(const HybridTime&, const HybridTime&) = default;
};

/// Plant state. Q lives on S^3 up to integration drift between
/// renormalizations, so it is kept as a raw 4-vector.
struct PlantState {
  Vec4 Q = Vec4(1.0, 0.0, 0.0, 0.0);
  Vec3 omega = Vec3::Zero();
};

struct PlantDerivative {
  Vec4 dQ;
  Vec3 domega;
};

/// Symmetric positive-definite inertia matrix. Throws std::invalid_argument
/// otherwise.
class Inertia {
 public:
  explicit Inertia(const Mat3& J);
  static Inertia diagonal(const Vec3& d) { return Inertia(Mat3(d.asDiagonal())); }
  const Mat3& matrix() const { return J_; }
  const Mat3& inverse() const { return J_inv_; }

 private:
  Mat3 J_;
  Mat3 J_inv_;
};

/// dQ/dt = 1/2 Lambda(Q) omega,  domega/dt = J^{-1}(-omega x J omega + tau).
PlantDerivative plant_rhs(const PlantState& s, const Vec3& tau, const Inertia& J);

struct SolverConfig {
  double h = 1e-3;
  double t_max = 10.0;
  int j_max = 10000;
  JumpPolicy jump_policy = JumpPolicy::jump_priority;
  bool renormalize = true;

  /// Throws std::invalid_argument on h <= 0, t_max <= 0 or j_max < 0.
  void validate() const;
};

class NonFiniteState : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Everything the flow map needs besides the state.
struct FlowContext {
  const HybridController& controller;
  const Inertia& inertia;
  ClosedLoop loop;
};

/// Control input at a (possibly off-sphere) state: the commanded omega for the
/// kinematic loop, the torque for the dynamic loop.
Vec3 control_input(const FlowContext& ctx, const PlantState& s, LogicState q, const MeasurementSample& m);

/// One RK4 step of length h with q and the measurement sample frozen. Returns
/// the raw result, not renormalized. Throws NonFiniteState.
PlantState step_flow(const FlowContext& ctx, const PlantState& s, LogicState q, const MeasurementSample& m, double h);

struct TraceSample {
  HybridTime time;
  Vec4 Q;
  LogicState q;
  /// Angular velocity: the plant state (dynamic) or the command (kinematic).
  Vec3 omega;
  /// Applied torque; zero for the kinematic loop.
  Vec3 tau;
  /// Lyapunov value U(Q, q) [+ omega^T J omega / (4 kp) for the dynamic loop].
  double V;
  /// Synergy gap on the measured quaternion (the jump trigger).
  double mu;
};

struct JumpMarker {
  /// Index of the pre-jump sample; the post-jump sample follows it.
  std::size_t pre_index;
  HybridTime before;
  LogicState from;
  LogicState to;
  double mu;
};

enum class Termination { time_limit, jump_limit, non_finite };
std::string to_string(Termination t);

struct SimTrace {
  std::vector<TraceSample> samples;
  std::vector<JumpMarker> jumps;
  Termination termination = Termination::time_limit;
  std::string message;
};

struct SimulationSetup {
  ClosedLoop loop = ClosedLoop::dynamic;
  Inertia inertia;
  HybridController controller;
  MeasurementModel measurement = CleanMeasurement{};
  SolverConfig solver;
  PlantState initial;
  LogicState q0 = LogicState::plus();
  std::uint64_t seed = 0;
};

/// Lyapunov value used in traces.
double lyapunov_value(ClosedLoop loop, const SpfFamily& F, const Inertia& J, double kp, const UnitQuaternion& Q,
                      LogicState q, const Vec3& omega);

/// Simulates one hybrid solution. Samples every step boundary plus one extra
/// sample after each jump. Terminates at t_max, when a jump is due with
/// j == j_max, or on a non-finite state.
SimTrace run(const SimulationSetup& setup);

}  // namespace synatt

#endif  // SYNATT_HYBRID_SIM_HPP_
