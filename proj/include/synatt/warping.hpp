// Angular warping and the centrally synergistic two-member family U = P o T.
//
// The warping T(Q, q) = exp(S_q theta(Q)) Q rotates Q in the plane spanned by
// i and nu(u_q), u_q = q*u, by the state-dependent angle theta(Q) = k eps^T eps.
// Composing the quadratic potential P with T gives two potential functions
// that both vanish exactly on {+-i}, are consistent in Q, and are synergistic
// whenever A has distinct eigenvalues and u is not orthogonal to any
// eigenvector of A.

#ifndef SYNATT_WARPING_HPP_
#define SYNATT_WARPING_HPP_

#include <optional>
#include <vector>

#include "synatt/potential.hpp"

namespace synatt {

/// Warp axis, warp gain and base potential. Validated by the constructor:
/// |u| = 1 (inputs within 1e-9 are renormalized) and 0 < k < lambda_1/lambda_3.
class WarpParams {
 public:
  WarpParams(QuadraticPotential base, const Vec3& u, double k);

  const QuadraticPotential& base() const { return base_; }
  const Vec3& axis() const { return u_; }
  double gain() const { return k_; }
  Vec3 axis(LogicState q) const { return q.sign() * u_; }

  /// (u^T v_i)^2 for each eigenvector of the base matrix.
  Vec3 alignments() const;

 private:
  QuadraticPotential base_;
  Vec3 u_;
  double k_;
};

struct XiGamma {
  double xi;
  double gamma;
};

/// theta(Q) = k eps^T eps.
double warp_angle(const WarpParams& W, const Vec4& x);
inline double warp_angle(const WarpParams& W, const UnitQuaternion& Q) { return warp_angle(W, Q.vec()); }

XiGamma xi_gamma(const WarpParams& W, const Vec4& x, LogicState q);
inline XiGamma xi_gamma(const WarpParams& W, const UnitQuaternion& Q, LogicState q) {
  return xi_gamma(W, Q.vec(), q);
}

/// The 4x4 rotation exp(S_q theta) in closed form.
Mat4 warp_rotation(const Vec3& axis_q, double theta);

/// T(Q, q) = [Xi, (eps + Gamma u_q)^T]^T.
Vec4 warp(const WarpParams& W, const Vec4& x, LogicState q);
UnitQuaternion warp(const WarpParams& W, const UnitQuaternion& Q, LogicState q);

/// det(dT/dQ) = 1 + 2 k eta (eps^T u_q).
double warp_jacobian_det(const WarpParams& W, const UnitQuaternion& Q, LogicState q);

/// Unique root in (0, k] of theta = k (1 - alignment sin^2 theta), by the
/// iteration theta <- k (1 - alignment sin^2 theta) from theta = k.
/// alignment must lie in [0, 1] and k in (0, 1). Throws std::runtime_error if
/// the residual does not fall below 1e-12 within 200 iterations.
double theta_fixed_point(double k, double alignment);

/// Synergy-gap bounds for the warped family.
struct GapBound {
  /// Closed form 4/3 sin^2(k - k^3/3) (lambda_1 - tr(A)/3 sin^2 k), only when
  /// u is the symmetric axis ((u^T v_i)^2 = 1/3 for all i).
  std::optional<double> closed_form;
  /// min_i of the gap at the undesired critical points of eigenvector i.
  double sharper = 0.0;
  /// Gap value at the critical points associated with each eigenvector.
  Vec3 per_eigenvector = Vec3::Zero();
  /// Fixed-point warp angle at the critical points of each eigenvector.
  Vec3 theta = Vec3::Zero();
};

/// An isolated critical point of U(., q).
struct CriticalPoint {
  UnitQuaternion Q;
  LogicState q;
  /// Eigenvector index 0..2 for undesired points, -1 for the desired set.
  int eigen_index = -1;
  /// Warp angle theta(Q) at the point.
  double theta = 0.0;
  bool desired() const { return eigen_index < 0; }
};

/// Thrown when a family cannot certify synergism but a caller requires it.
class NotSynergistic : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The centrally synergistic family U = P o T.
class CshFamily final : public SpfFamily {
 public:
  /// Always constructs. The synergy certificate (gap bound and critical set)
  /// is computed when A has distinct eigenvalues and |u^T v_i| > 1e-9 for all
  /// i; otherwise certified_delta() is empty.
  explicit CshFamily(WarpParams params);

  std::string name() const override { return "csh"; }
  double value(const Vec4& x, LogicState q) const override;
  Vec4 grad4(const Vec4& x, LogicState q) const override;
  std::optional<double> gap_bound() const override { return certified_delta(); }

  using SpfFamily::grad4;
  using SpfFamily::value;

  const WarpParams& params() const { return params_; }

  std::optional<double> certified_delta() const;
  /// Reason the certificate is missing, empty when certified.
  const std::string& uncertified_reason() const { return reason_; }

  /// Throws NotSynergistic when no certificate exists.
  const GapBound& bounds() const;
  /// 12 undesired points followed by the 4 desired ones.
  const std::vector<CriticalPoint>& critical_points() const;

 private:
  WarpParams params_;
  std::optional<GapBound> bounds_;
  std::vector<CriticalPoint> crit_;
  std::string reason_;
};

/// The undesired critical points of U(., q) attached to the unit eigenvector v:
/// Q = +-exp(-S_q theta) nu(v) with theta the fixed point for (u^T v)^2. The
/// "+" representative is returned. Works for any unit eigenvector, including
/// those of a repeated eigenvalue.
CriticalPoint critical_point_for_eigenvector(const WarpParams& W, const Vec3& v, LogicState q);

/// Gap at the critical points of an eigenvector with eigenvalue lambda and
/// alignment (u^T v)^2, at warp angle theta:
/// 4 sin^2(theta) alignment (lambda - sin^2(theta) u^T A u).
double critical_gap(double lambda, double alignment, double theta, double uAu);

GapBound compute_gap_bound(const WarpParams& W);
std::vector<CriticalPoint> compute_critical_points(const WarpParams& W);

/// A unit eigenvector v of the base matrix with |u^T v| <= 1e-9, if one exists.
/// For a repeated eigenvalue the eigenspace is searched, so such a v always
/// exists there. The critical points attached to v have zero synergy gap.
std::optional<Vec3> orthogonal_eigenvector(const WarpParams& W);

}  // namespace synatt

#endif  // SYNATT_WARPING_HPP_
