#include "synatt/controller.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

#include "synatt/warping.hpp"

namespace synatt {

SwitchConfig::SwitchConfig(const SpfFamily& family, double delta_h, bool experiment_mode)
    : delta_h_(delta_h), experiment_(experiment_mode) {
  const std::optional<double> delta = family.gap_bound();
  if (!delta) throw NotSynergistic("family '" + family.name() + "' certifies no synergy gap; refusing to switch on it");
  if (!std::isfinite(delta_h)) throw std::invalid_argument("SwitchConfig: delta_h must be finite");
  if (experiment_mode) {
    if (delta_h < 0.0) throw std::invalid_argument("SwitchConfig: delta_h must be nonnegative");
    return;
  }
  if (!(delta_h > 0.0 && delta_h <= *delta)) {
    throw std::invalid_argument("SwitchConfig: delta_h = " + std::to_string(delta_h) +
                                " must satisfy 0 < delta_h <= " + std::to_string(*delta));
  }
}

Vec3 feedback_kappa(const SpfFamily& F, const UnitQuaternion& Q, LogicState q) {
  return lambda_map(Q).transpose() * F.grad4(Q, q);
}

Vec3 feedback_kappa_projected(const SpfFamily& F, const UnitQuaternion& Q, LogicState q) {
  return lambda_map(Q).transpose() * (projector(Q.vec()) * F.grad4(Q, q));
}

SwitchDecision switch_decision(const SpfFamily& F, const SwitchConfig& C, const UnitQuaternion& Q_meas,
                               LogicState q, JumpPolicy policy) {
  const double mu = F.synergy_gap(Q_meas, q);
  const bool jump = policy == JumpPolicy::jump_priority ? mu >= C.delta_h() : mu > C.delta_h();
  if (jump) return JumpTo{F.argmin(Q_meas, q)};
  return Flow{};
}

Vec3 kinematic_control(const SpfFamily& F, const UnitQuaternion& Q_meas, LogicState q, double kp) {
  return -kp * feedback_kappa(F, Q_meas, q);
}

Vec3 dynamic_control(const SpfFamily& F, const UnitQuaternion& Q_meas, const Vec3& omega, LogicState q,
                     double kp, double kd) {
  return -kp * feedback_kappa(F, Q_meas, q) - kd * omega;
}

HybridController::HybridController(std::shared_ptr<const SpfFamily> family, SwitchConfig sw, Gains gains,
                                   bool switching)
    : family_(std::move(family)), sw_(sw), gains_(gains), switching_(switching) {
  if (!family_) throw std::invalid_argument("HybridController: null family");
  if (!(gains.kp > 0.0) || !(gains.kd > 0.0)) throw std::invalid_argument("HybridController: gains must be positive");
}

SwitchDecision HybridController::decide(const UnitQuaternion& Q_meas, LogicState q, JumpPolicy policy) const {
  if (!switching_) return Flow{};
  return switch_decision(*family_, sw_, Q_meas, q, policy);
}

Vec3 HybridController::angular_velocity(const UnitQuaternion& Q_meas, LogicState q) const {
  return kinematic_control(*family_, Q_meas, q, gains_.kp);
}

Vec3 HybridController::torque(const UnitQuaternion& Q_meas, const Vec3& omega, LogicState q) const {
  return dynamic_control(*family_, Q_meas, omega, q, gains_.kp, gains_.kd);
}

}  // namespace synatt
