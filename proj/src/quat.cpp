#include "synatt/quat.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>
#include <string>

namespace synatt {

UnitQuaternion::UnitQuaternion(double eta, const Vec3& eps) {
  const Vec4 v(eta, eps.x(), eps.y(), eps.z());
  if (!v.allFinite()) throw std::invalid_argument("UnitQuaternion: non-finite component");
  const double n = v.norm();
  if (std::abs(n - 1.0) > kRenormalizeWindow) {
    throw std::invalid_argument("UnitQuaternion: norm " + std::to_string(n) +
                                " is too far from 1 to renormalize");
  }
  eta_ = eta / n;
  eps_ = eps / n;
}

UnitQuaternion UnitQuaternion::from_vector(const Vec4& v) {
  return UnitQuaternion(v(0), v.tail<3>());
}

UnitQuaternion UnitQuaternion::project(const Vec4& v) {
  const double n = v.norm();
  if (!v.allFinite() || !(n > 0.0)) {
    throw std::invalid_argument("UnitQuaternion::project: cannot normalize vector");
  }
  const Vec4 w = v / n;
  return UnitQuaternion(Unchecked{}, w(0), w.tail<3>());
}

Vec4 UnitQuaternion::vec() const { return Vec4(eta_, eps_.x(), eps_.y(), eps_.z()); }

UnitQuaternion UnitQuaternion::operator-() const { return UnitQuaternion(Unchecked{}, -eta_, -eps_); }

UnitQuaternion UnitQuaternion::inverse() const { return UnitQuaternion(Unchecked{}, eta_, -eps_); }

Vec4 nu(const Vec3& w) { return Vec4(0.0, w.x(), w.y(), w.z()); }

Mat3 cross_matrix(const Vec3& a) {
  Mat3 m;
  m << 0.0, -a.z(), a.y(),
       a.z(), 0.0, -a.x(),
       -a.y(), a.x(), 0.0;
  return m;
}

Vec4 quat_product(const Vec4& a, const Vec4& b) {
  const double eta1 = a(0), eta2 = b(0);
  const Vec3 e1 = a.tail<3>(), e2 = b.tail<3>();
  Vec4 r;
  r(0) = eta1 * eta2 - e1.dot(e2);
  r.tail<3>() = eta1 * e2 + eta2 * e1 + e1.cross(e2);
  return r;
}

UnitQuaternion quat_multiply(const UnitQuaternion& a, const UnitQuaternion& b) {
  return UnitQuaternion::project(quat_product(a.vec(), b.vec()));
}

Mat4x3 lambda_map(const UnitQuaternion& Q) {
  Mat4x3 L;
  L.row(0) = -Q.eps().transpose();
  L.bottomRows<3>() = Q.eta() * Mat3::Identity() + cross_matrix(Q.eps());
  return L;
}

Mat4 projector(const Vec4& x) { return Mat4::Identity() - x * x.transpose(); }

std::pair<UnitQuaternion, UnitQuaternion> axis_angle_quats(double theta, const Vec3& u) {
  if (!(theta >= 0.0 && theta <= std::numbers::pi)) {
    throw std::invalid_argument("axis_angle_quats: angle outside [0, pi]");
  }
  if (!u.allFinite() || std::abs(u.norm() - 1.0) > kRenormalizeWindow) {
    throw std::invalid_argument("axis_angle_quats: axis is not a unit vector");
  }
  const Vec3 axis = u.normalized();
  const UnitQuaternion plus = UnitQuaternion::project(
      Vec4(std::cos(theta / 2), std::sin(theta / 2) * axis.x(), std::sin(theta / 2) * axis.y(),
           std::sin(theta / 2) * axis.z()));
  return {plus, -plus};
}

Vec4 kinematics_rhs(const Vec4& Q, const Vec3& omega) {
  const double eta = Q(0);
  const Vec3 eps = Q.tail<3>();
  Vec4 r;
  r(0) = -0.5 * eps.dot(omega);
  r.tail<3>() = 0.5 * (eta * omega + eps.cross(omega));
  return r;
}

Vec4 kinematics_rhs(const UnitQuaternion& Q, const Vec3& omega) {
  return 0.5 * (lambda_map(Q) * omega);
}

}  // namespace synatt
