// Hybrid feedback: gradient-based state feedback plus hysteresis switching of
// the logic index.

#ifndef SYNATT_CONTROLLER_HPP_
#define SYNATT_CONTROLLER_HPP_

#include <memory>
#include <variant>

#include "synatt/potential.hpp"

namespace synatt {

/// Resolution of the flow/jump overlap mu == delta_h.
enum class JumpPolicy { jump_priority, flow_priority };

/// Hysteresis width for the switching mechanism.
///
/// Outside experiment mode 0 < delta_h <= delta, where delta is the family's
/// certified gap bound. Experiment mode accepts any delta_h >= 0 and exists to
/// reproduce the zero-hysteresis and oversized-hysteresis regimes.
class SwitchConfig {
 public:
  /// Throws NotSynergistic if the family has no certified bound, and
  /// std::invalid_argument if delta_h violates the constraints above.
  SwitchConfig(const SpfFamily& family, double delta_h, bool experiment_mode = false);

  double delta_h() const { return delta_h_; }
  bool experiment_mode() const { return experiment_; }

 private:
  double delta_h_;
  bool experiment_;
};

struct Gains {
  double kp = 1.0;
  double kd = 1.0;
};

struct Flow {
  friend bool operator==(Flow, Flow) = default;
};
struct JumpTo {
  LogicState q;
  friend bool operator==(JumpTo, JumpTo) = default;
};
using SwitchDecision = std::variant<Flow, JumpTo>;

/// kappa_U(Q, q) = Lambda(Q)^T grad4 U(Q, q).
Vec3 feedback_kappa(const SpfFamily& F, const UnitQuaternion& Q, LogicState q);
/// Lambda(Q)^T Pi(Q) grad4 U(Q, q); equal to feedback_kappa on S^3.
Vec3 feedback_kappa_projected(const SpfFamily& F, const UnitQuaternion& Q, LogicState q);

/// Jump to argmin U(Q_meas, .) when mu >= delta_h (jump priority) or
/// mu > delta_h (flow priority); flow otherwise.
SwitchDecision switch_decision(const SpfFamily& F, const SwitchConfig& C, const UnitQuaternion& Q_meas,
                               LogicState q, JumpPolicy policy = JumpPolicy::jump_priority);

/// Commanded angular velocity -kp kappa_U(Q, q).
Vec3 kinematic_control(const SpfFamily& F, const UnitQuaternion& Q_meas, LogicState q, double kp);

/// Torque -kp kappa_U(Q, q) - kd omega.
Vec3 dynamic_control(const SpfFamily& F, const UnitQuaternion& Q_meas, const Vec3& omega, LogicState q,
                     double kp, double kd);

/// A complete hybrid controller: family, switching configuration and gains.
/// With switching disabled the logic index is held fixed (continuous feedback).
class HybridController {
 public:
  /// Throws std::invalid_argument for non-positive gains.
  HybridController(std::shared_ptr<const SpfFamily> family, SwitchConfig sw, Gains gains, bool switching = true);

  const SpfFamily& family() const { return *family_; }
  const SwitchConfig& switching_config() const { return sw_; }
  const Gains& gains() const { return gains_; }
  bool switching() const { return switching_; }

  SwitchDecision decide(const UnitQuaternion& Q_meas, LogicState q,
                        JumpPolicy policy = JumpPolicy::jump_priority) const;
  Vec3 angular_velocity(const UnitQuaternion& Q_meas, LogicState q) const;
  Vec3 torque(const UnitQuaternion& Q_meas, const Vec3& omega, LogicState q) const;

 private:
  std::shared_ptr<const SpfFamily> family_;
  SwitchConfig sw_;
  Gains gains_;
  bool switching_;
};

}  // namespace synatt

#endif  // SYNATT_CONTROLLER_HPP_
