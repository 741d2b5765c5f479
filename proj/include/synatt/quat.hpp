// Unit-quaternion algebra on S^3 and the linear maps built from it.
//
// A quaternion is stored as Q = [eta, eps^T]^T with scalar part eta and
// vector part eps. Q and -Q describe the same attitude.

#ifndef SYNATT_QUAT_HPP_
#define SYNATT_QUAT_HPP_

#include <random>
#include <utility>

#include <Eigen/Dense>

namespace synatt {

using Vec3 = Eigen::Vector3d;
using Vec4 = Eigen::Vector4d;
using Mat3 = Eigen::Matrix3d;
using Mat4 = Eigen::Matrix4d;
using Mat4x3 = Eigen::Matrix<double, 4, 3>;

/// Renormalization window for validated construction: inputs whose norm is
/// within this distance of 1 are projected back to S^3, others are rejected.
inline constexpr double kRenormalizeWindow = 1e-6;

/// A point on S^3. Immutable value type.
class UnitQuaternion {
 public:
  /// The identity quaternion i = [1, 0, 0, 0].
  UnitQuaternion() : eta_(1.0), eps_(Vec3::Zero()) {}

  /// Validated construction. Renormalizes when |norm - 1| <= 1e-6 and throws
  /// std::invalid_argument otherwise (or on non-finite input).
  UnitQuaternion(double eta, const Vec3& eps);
  static UnitQuaternion from_vector(const Vec4& v);

  /// Unconditional projection of a nonzero finite vector onto S^3. This is the
  /// map x -> x/|x| used for solver renormalization and noisy measurements.
  static UnitQuaternion project(const Vec4& v);

  static UnitQuaternion identity() { return {}; }

  double eta() const { return eta_; }
  const Vec3& eps() const { return eps_; }
  Vec4 vec() const;

  UnitQuaternion operator-() const;
  UnitQuaternion inverse() const;

  friend bool operator==(const UnitQuaternion& a, const UnitQuaternion& b) {
    return a.eta_ == b.eta_ && a.eps_ == b.eps_;
  }

 private:
  struct Unchecked {};
  UnitQuaternion(Unchecked, double eta, const Vec3& eps) : eta_(eta), eps_(eps) {}

  double eta_;
  Vec3 eps_;
};

/// nu(w) = [0, w^T]^T.
Vec4 nu(const Vec3& w);

/// Cross-product matrix: cross_matrix(a) * b == a x b.
Mat3 cross_matrix(const Vec3& a);

/// Raw quaternion product on R^4 (no normalization, no unit-norm assumption).
Vec4 quat_product(const Vec4& a, const Vec4& b);

/// Quaternion multiplication on S^3, renormalized.
UnitQuaternion quat_multiply(const UnitQuaternion& a, const UnitQuaternion& b);

/// Lambda(Q) = [-eps, eta*I - eps^x]^T, a 4x3 matrix with top row -eps^T and
/// lower block eta*I + eps^x. Satisfies Q (.) nu(w) = Lambda(Q) w.
Mat4x3 lambda_map(const UnitQuaternion& Q);

/// Orthogonal projector onto the complement of the unit vector x: I - x x^T.
Mat4 projector(const Vec4& x);

/// The antipodal pair +-[cos(theta/2), sin(theta/2) u^T]^T, with the
/// +cos(theta/2) representative first. Throws std::invalid_argument when
/// theta is outside [0, pi] or u is not a unit vector.
std::pair<UnitQuaternion, UnitQuaternion> axis_angle_quats(double theta, const Vec3& u);

/// Attitude kinematics: dQ/dt = 1/2 Lambda(Q) w.
Vec4 kinematics_rhs(const UnitQuaternion& Q, const Vec3& omega);
/// Same map on an arbitrary 4-vector, used inside integrator stages.
Vec4 kinematics_rhs(const Vec4& Q, const Vec3& omega);

/// Uniformly distributed point on S^3 (normalized Gaussian draw).
template <class Urbg>
UnitQuaternion random_unit_quaternion(Urbg& gen) {
  std::normal_distribution<double> n(0.0, 1.0);
  Vec4 v;
  do {
    v = Vec4(n(gen), n(gen), n(gen), n(gen));
  } while (v.norm() < 1e-8);
  return UnitQuaternion::project(v);
}

/// Uniformly distributed unit 3-vector.
template <class Urbg>
Vec3 random_unit_vector(Urbg& gen) {
  std::normal_distribution<double> n(0.0, 1.0);
  Vec3 v;
  do {
    v = Vec3(n(gen), n(gen), n(gen));
  } while (v.norm() < 1e-8);
  return v.normalized();
}

}  // namespace synatt

#endif  // SYNATT_QUAT_HPP_
