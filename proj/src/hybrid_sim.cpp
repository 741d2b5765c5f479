#include "synatt/hybrid_sim.hpp"

#include <cmath>
#include <variant>

namespace synatt {

Inertia::Inertia(const Mat3& J) : J_(J) {
  if (!J.allFinite() || (J - J.transpose()).cwiseAbs().maxCoeff() > 1e-12) {
    throw std::invalid_argument("Inertia: matrix must be finite and symmetric");
  }
  Eigen::LLT<Mat3> llt(J);
  if (llt.info() != Eigen::Success) throw std::invalid_argument("Inertia: matrix must be positive definite");
  J_inv_ = J.inverse();
}

PlantDerivative plant_rhs(const PlantState& s, const Vec3& tau, const Inertia& J) {
  const Vec3& w = s.omega;
  return {kinematics_rhs(s.Q, w), J.inverse() * (-w.cross(J.matrix() * w) + tau)};
}

void SolverConfig::validate() const {
  if (!(h > 0.0) || !std::isfinite(h)) throw std::invalid_argument("SolverConfig: step must be positive");
  if (!(t_max > 0.0) || !std::isfinite(t_max)) throw std::invalid_argument("SolverConfig: t_max must be positive");
  if (j_max < 0) throw std::invalid_argument("SolverConfig: j_max must be nonnegative");
}

std::string to_string(Termination t) {
  switch (t) {
    case Termination::time_limit: return "time_limit";
    case Termination::jump_limit: return "jump_limit";
    case Termination::non_finite: return "non_finite";
  }
  return "unknown";
}

Vec3 control_input(const FlowContext& ctx, const PlantState& s, LogicState q, const MeasurementSample& m) {
  const UnitQuaternion Qm = apply_measurement(m, UnitQuaternion::project(s.Q));
  if (ctx.loop == ClosedLoop::kinematic) return ctx.controller.angular_velocity(Qm, q);
  return ctx.controller.torque(Qm, s.omega, q);
}

namespace {

PlantDerivative closed_loop_rhs(const FlowContext& ctx, const PlantState& s, LogicState q,
                                const MeasurementSample& m) {
  const Vec3 u = control_input(ctx, s, q, m);
  if (ctx.loop == ClosedLoop::kinematic) return {kinematics_rhs(s.Q, u), Vec3::Zero()};
  return plant_rhs(s, u, ctx.inertia);
}

PlantState advance(const PlantState& s, const PlantDerivative& d, double h) {
  return {s.Q + h * d.dQ, s.omega + h * d.domega};
}

}  // namespace

PlantState step_flow(const FlowContext& ctx, const PlantState& s, LogicState q, const MeasurementSample& m,
                     double h) {
  if (!s.Q.allFinite() || !s.omega.allFinite()) throw NonFiniteState("non-finite state entering flow step");
  const PlantDerivative k1 = closed_loop_rhs(ctx, s, q, m);
  const PlantDerivative k2 = closed_loop_rhs(ctx, advance(s, k1, h / 2), q, m);
  const PlantDerivative k3 = closed_loop_rhs(ctx, advance(s, k2, h / 2), q, m);
  const PlantDerivative k4 = closed_loop_rhs(ctx, advance(s, k3, h), q, m);
  PlantState out;
  out.Q = s.Q + h / 6.0 * (k1.dQ + 2.0 * k2.dQ + 2.0 * k3.dQ + k4.dQ);
  out.omega = s.omega + h / 6.0 * (k1.domega + 2.0 * k2.domega + 2.0 * k3.domega + k4.domega);
  if (ctx.loop == ClosedLoop::kinematic) out.omega = Vec3::Zero();
  if (!out.Q.allFinite() || !out.omega.allFinite()) throw NonFiniteState("flow step produced a non-finite state");
  return out;
}

double lyapunov_value(ClosedLoop loop, const SpfFamily& F, const Inertia& J, double kp, const UnitQuaternion& Q,
                      LogicState q, const Vec3& omega) {
  const double U = F.value(Q, q);
  if (loop == ClosedLoop::kinematic) return U;
  return U + omega.dot(J.matrix() * omega) / (4.0 * kp);
}

SimTrace run(const SimulationSetup& setup) {
  setup.solver.validate();
  const HybridController& ctrl = setup.controller;
  const SpfFamily& F = ctrl.family();
  const FlowContext ctx{ctrl, setup.inertia, setup.loop};
  const SolverConfig& cfg = setup.solver;
  const long steps = std::lround(std::ceil(cfg.t_max / cfg.h - 1e-9));

  Rng rng(setup.seed);
  SimTrace trace;
  trace.samples.reserve(static_cast<std::size_t>(steps) + 2);

  PlantState state = setup.initial;
  if (cfg.renormalize) state.Q = UnitQuaternion::project(state.Q).vec();
  if (setup.loop == ClosedLoop::kinematic) state.omega = Vec3::Zero();
  LogicState q = setup.q0;
  int j = 0;

  const auto record = [&](double t, const MeasurementSample& m) {
    const UnitQuaternion Q = UnitQuaternion::project(state.Q);
    const UnitQuaternion Qm = apply_measurement(m, Q);
    const Vec3 u = control_input(ctx, state, q, m);
    TraceSample s;
    s.time = {t, j};
    s.Q = state.Q;
    s.q = q;
    s.omega = setup.loop == ClosedLoop::kinematic ? u : state.omega;
    s.tau = setup.loop == ClosedLoop::kinematic ? Vec3::Zero() : u;
    s.V = lyapunov_value(setup.loop, F, setup.inertia, ctrl.gains().kp, Q, q, state.omega);
    s.mu = F.synergy_gap(Qm, q);
    trace.samples.push_back(s);
    return Qm;
  };

  try {
    for (long n = 0;; ++n) {
      const double t = static_cast<double>(n) * cfg.h;
      const MeasurementSample m = draw_measurement(setup.measurement, t, rng);
      UnitQuaternion Qm = record(t, m);

      for (;;) {
        const SwitchDecision d = ctrl.decide(Qm, q, cfg.jump_policy);
        const JumpTo* jump = std::get_if<JumpTo>(&d);
        if (!jump) break;
        if (j >= cfg.j_max) {
          trace.termination = Termination::jump_limit;
          trace.message = "jump limit reached at t = " + std::to_string(t);
          return trace;
        }
        JumpMarker marker{trace.samples.size() - 1, {t, j}, q, jump->q, trace.samples.back().mu};
        q = jump->q;
        ++j;
        trace.jumps.push_back(marker);
        Qm = record(t, m);
      }

      if (n >= steps) {
        trace.termination = Termination::time_limit;
        return trace;
      }
      state = step_flow(ctx, state, q, m, cfg.h);
      if (cfg.renormalize) state.Q = UnitQuaternion::project(state.Q).vec();
    }
  } catch (const NonFiniteState& e) {
    trace.termination = Termination::non_finite;
    trace.message = e.what();
  }
  return trace;
}

}  // namespace synatt
