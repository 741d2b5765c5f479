// Lyapunov monitors over simulated traces.

#ifndef SYNATT_LYAPUNOV_HPP_
#define SYNATT_LYAPUNOV_HPP_

#include <limits>
#include <vector>

#include "synatt/hybrid_sim.hpp"

namespace synatt {

struct LyapunovReport {
  /// V recomputed from the trace state at every sample.
  std::vector<double> V;
  /// Flow steps with V[n+1] - V[n] > 1e-6 (1 + V[n]).
  std::size_t flow_violations = 0;
  /// Jumps with Delta V > -delta_h + 1e-9.
  std::size_t jump_violations = 0;
  /// Largest flow increase V[n+1] - V[n] (negative when V strictly decreases).
  double max_flow_increase = -std::numeric_limits<double>::infinity();
  /// Largest Delta V over jumps (-inf without jumps).
  double max_jump_change = -std::numeric_limits<double>::infinity();

  bool ok() const { return flow_violations == 0 && jump_violations == 0; }
};

/// V = U(Q, q) for the kinematic loop and U(Q, q) + omega^T J omega / (4 kp)
/// for the dynamic loop, checked for flow monotonicity and jump decrease.
LyapunovReport lyapunov_monitor(const SimTrace& trace, ClosedLoop loop, const SpfFamily& family, double kp,
                                const Inertia& J, double delta_h);

}  // namespace synatt

#endif  // SYNATT_LYAPUNOV_HPP_
