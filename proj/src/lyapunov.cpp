#include "synatt/lyapunov.hpp"

#include <algorithm>

namespace synatt {

LyapunovReport lyapunov_monitor(const SimTrace& trace, ClosedLoop loop, const SpfFamily& family, double kp,
                                const Inertia& J, double delta_h) {
  LyapunovReport r;
  const auto& s = trace.samples;
  r.V.reserve(s.size());
  for (const TraceSample& x : s) {
    const Vec3 omega = loop == ClosedLoop::kinematic ? Vec3::Zero() : x.omega;
    r.V.push_back(lyapunov_value(loop, family, J, kp, UnitQuaternion::project(x.Q), x.q, omega));
  }
  for (std::size_t n = 0; n + 1 < s.size(); ++n) {
    const double dV = r.V[n + 1] - r.V[n];
    if (s[n + 1].time.j == s[n].time.j) {
      r.max_flow_increase = std::max(r.max_flow_increase, dV);
      if (dV > 1e-6 * (1.0 + r.V[n])) ++r.flow_violations;
    } else {
      r.max_jump_change = std::max(r.max_jump_change, dV);
      if (dV > -delta_h + 1e-9) ++r.jump_violations;
    }
  }
  return r;
}

}  // namespace synatt
