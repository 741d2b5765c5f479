#include "synatt/warping.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace synatt {

WarpParams::WarpParams(QuadraticPotential base, const Vec3& u, double k) : base_(std::move(base)), u_(u), k_(k) {
  if (!u.allFinite() || std::abs(u.norm() - 1.0) > 1e-9) {
    throw std::invalid_argument("WarpParams: warp axis must be a unit vector");
  }
  u_ = u.normalized();
  const Vec3& lam = base_.eigenvalues();
  if (!(k > 0.0 && k < lam(0) / lam(2))) {
    throw std::invalid_argument("WarpParams: warp gain must satisfy 0 < k < lambda_1/lambda_3 = " +
                                std::to_string(lam(0) / lam(2)));
  }
}

Vec3 WarpParams::alignments() const {
  return (base_.eigenvectors().transpose() * u_).cwiseAbs2();
}

double warp_angle(const WarpParams& W, const Vec4& x) { return W.gain() * x.tail<3>().squaredNorm(); }

XiGamma xi_gamma(const WarpParams& W, const Vec4& x, LogicState q) {
  const double theta = warp_angle(W, x);
  const double c = std::cos(theta), s = std::sin(theta);
  const double eta = x(0);
  const double ue = W.axis(q).dot(x.tail<3>());
  return {c * eta - s * ue, s * eta + (c - 1.0) * ue};
}

Mat4 warp_rotation(const Vec3& axis_q, double theta) {
  const double c = std::cos(theta), s = std::sin(theta);
  Mat4 R;
  R(0, 0) = c;
  R.block<1, 3>(0, 1) = -s * axis_q.transpose();
  R.block<3, 1>(1, 0) = s * axis_q;
  R.block<3, 3>(1, 1) = Mat3::Identity() - axis_q * axis_q.transpose() + c * axis_q * axis_q.transpose();
  return R;
}

Vec4 warp(const WarpParams& W, const Vec4& x, LogicState q) {
  const XiGamma xg = xi_gamma(W, x, q);
  Vec4 r;
  r(0) = xg.xi;
  r.tail<3>() = x.tail<3>() + xg.gamma * W.axis(q);
  return r;
}

UnitQuaternion warp(const WarpParams& W, const UnitQuaternion& Q, LogicState q) {
  return UnitQuaternion::from_vector(warp(W, Q.vec(), q));
}

double warp_jacobian_det(const WarpParams& W, const UnitQuaternion& Q, LogicState q) {
  return 1.0 + 2.0 * W.gain() * Q.eta() * Q.eps().dot(W.axis(q));
}

double theta_fixed_point(double k, double alignment) {
  if (!(k > 0.0 && k < 1.0)) throw std::invalid_argument("theta_fixed_point: k must lie in (0, 1)");
  if (!(alignment >= 0.0 && alignment <= 1.0)) {
    throw std::invalid_argument("theta_fixed_point: alignment must lie in [0, 1]");
  }
  const auto map = [&](double t) {
    const double s = std::sin(t);
    return k * (1.0 - alignment * s * s);
  };
  double theta = k;
  int it = 0;
  for (; it < 200; ++it) {
    theta = map(theta);
    if (std::abs(theta - map(theta)) < 1e-12) break;
  }
  if (it == 200) throw std::runtime_error("theta_fixed_point: no convergence after 200 iterations");
  // Keep contracting down to rounding level; the critical points built from
  // theta inherit its residual as a nonzero gradient.
  for (int extra = 0; extra < 16; ++extra) {
    const double next = map(theta);
    if (next == theta) break;
    theta = next;
  }
  return theta;
}

double critical_gap(double lambda, double alignment, double theta, double uAu) {
  const double s2 = std::sin(theta) * std::sin(theta);
  return 4.0 * s2 * alignment * (lambda - s2 * uAu);
}

GapBound compute_gap_bound(const WarpParams& W) {
  const QuadraticPotential& P = W.base();
  const Vec3& lam = P.eigenvalues();
  const Vec3 align = W.alignments();
  const double uAu = W.axis().dot(P.matrix() * W.axis());
  const double k = W.gain();

  GapBound b;
  for (int i = 0; i < 3; ++i) {
    b.theta(i) = theta_fixed_point(k, align(i));
    b.per_eigenvector(i) = critical_gap(lam(i), align(i), b.theta(i), uAu);
  }
  b.sharper = b.per_eigenvector.minCoeff();

  if ((align.array() - 1.0 / 3.0).abs().maxCoeff() < 1e-9) {
    const double s = std::sin(k - k * k * k / 3.0);
    const double sk = std::sin(k);
    b.closed_form = 4.0 / 3.0 * s * s * (lam(0) - lam.sum() / 3.0 * sk * sk);
  }
  if (!(b.sharper > 0.0) || (b.closed_form && !(*b.closed_form > 0.0))) {
    throw NotSynergistic("gap bound is not positive; warp gain too large for this spectrum");
  }
  return b;
}

CriticalPoint critical_point_for_eigenvector(const WarpParams& W, const Vec3& v, LogicState q) {
  const Vec3 uq = W.axis(q);
  const double uv = uq.dot(v);
  const double theta = theta_fixed_point(W.gain(), uv * uv);
  Vec4 x;
  x(0) = std::sin(theta) * uv;
  x.tail<3>() = v + (std::cos(theta) - 1.0) * uv * uq;
  return {UnitQuaternion::project(x), q, 0, theta};
}

std::vector<CriticalPoint> compute_critical_points(const WarpParams& W) {
  std::vector<CriticalPoint> pts;
  for (int i = 0; i < 3; ++i) {
    for (LogicState q : {LogicState::plus(), LogicState::minus()}) {
      CriticalPoint c = critical_point_for_eigenvector(W, W.base().eigenvector(i), q);
      c.eigen_index = i;
      pts.push_back(c);
      c.Q = -c.Q;
      pts.push_back(c);
    }
  }
  for (const UnitQuaternion& Q : {UnitQuaternion::identity(), -UnitQuaternion::identity()}) {
    for (LogicState q : {LogicState::plus(), LogicState::minus()}) pts.push_back({Q, q, -1, 0.0});
  }
  return pts;
}

std::optional<Vec3> orthogonal_eigenvector(const WarpParams& W) {
  const QuadraticPotential& P = W.base();
  const Vec3& lam = P.eigenvalues();
  const Vec3& u = W.axis();
  for (int i = 0; i < 3; ++i) {
    if (std::abs(u.dot(P.eigenvector(i))) <= 1e-9) return P.eigenvector(i);
  }
  for (int i = 0; i < 2; ++i) {
    if ((lam(i + 1) - lam(i)) / lam(2) > 1e-9) continue;
    // Two vectors spanning the repeated eigenspace; the combination below is
    // orthogonal to u.
    const Vec3 a = P.eigenvector(i), b = P.eigenvector(i + 1);
    const Vec3 v = u.dot(b) * a - u.dot(a) * b;
    return v.normalized();
  }
  return std::nullopt;
}

CshFamily::CshFamily(WarpParams params) : params_(std::move(params)) {
  if (!params_.base().has_distinct_eigenvalues()) {
    reason_ = "base matrix has repeated eigenvalues";
    return;
  }
  if ((params_.base().eigenvectors().transpose() * params_.axis()).cwiseAbs().minCoeff() <= 1e-9) {
    reason_ = "warp axis is orthogonal to an eigenvector of the base matrix";
    return;
  }
  try {
    bounds_ = compute_gap_bound(params_);
  } catch (const NotSynergistic& e) {
    reason_ = e.what();
    return;
  }
  crit_ = compute_critical_points(params_);
}

std::optional<double> CshFamily::certified_delta() const {
  if (!bounds_) return std::nullopt;
  return bounds_->sharper;
}

const GapBound& CshFamily::bounds() const {
  if (!bounds_) throw NotSynergistic("family is not synergistic: " + reason_);
  return *bounds_;
}

const std::vector<CriticalPoint>& CshFamily::critical_points() const {
  if (!bounds_) throw NotSynergistic("family is not synergistic: " + reason_);
  return crit_;
}

double CshFamily::value(const Vec4& x, LogicState q) const {
  const Mat3& A = params_.base().matrix();
  const Vec3 eps = x.tail<3>();
  const Vec3 uq = params_.axis(q);
  const Vec3 Aeps = A * eps;
  const double gamma = xi_gamma(params_, x, q).gamma;
  return eps.dot(Aeps) + 2.0 * gamma * uq.dot(Aeps) + gamma * gamma * uq.dot(A * uq);
}

Vec4 CshFamily::grad4(const Vec4& x, LogicState q) const {
  const Mat3& A = params_.base().matrix();
  const Vec3 eps = x.tail<3>();
  const Vec3 uq = params_.axis(q);
  const double theta = warp_angle(params_, x);
  const XiGamma xg = xi_gamma(params_, x, q);

  Vec4 Theta;
  Theta(0) = std::sin(theta);
  Theta.tail<3>() = (std::cos(theta) - 1.0) * uq;
  const Vec4 grad_gamma = 2.0 * params_.gain() * xg.xi * nu(eps) + Theta;

  const Vec3 Auq = A * uq;
  return 2.0 * nu(A * eps) + 2.0 * xg.gamma * nu(Auq) + 2.0 * Auq.dot(eps + xg.gamma * uq) * grad_gamma;
}

}  // namespace synatt
