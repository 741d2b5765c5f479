// Potential functions on S^3 and indexed families of them.

#ifndef SYNATT_POTENTIAL_HPP_
#define SYNATT_POTENTIAL_HPP_

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "synatt/quat.hpp"

namespace synatt {

/// Discrete logic index q in {-1, 1} held by the hybrid controller.
class LogicState {
 public:
  constexpr LogicState() = default;
  /// Throws std::invalid_argument unless value is -1 or 1.
  explicit LogicState(int value);

  static constexpr LogicState plus() { return LogicState(Raw{}, 1); }
  static constexpr LogicState minus() { return LogicState(Raw{}, -1); }

  constexpr int value() const { return value_; }
  constexpr double sign() const { return static_cast<double>(value_); }
  constexpr LogicState opposite() const { return LogicState(Raw{}, -value_); }

  friend constexpr bool operator==(LogicState, LogicState) = default;

 private:
  struct Raw {};
  constexpr LogicState(Raw, int v) : value_(v) {}
  int value_ = 1;
};

/// Raised when a symmetric matrix has (numerically) repeated eigenvalues where
/// distinct ones are required.
class DegenerateSpectrum : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// P(Q) = eps^T A eps with A symmetric positive definite.
class QuadraticPotential {
 public:
  /// Throws std::invalid_argument if A is not symmetric to 1e-12 or not
  /// positive definite.
  explicit QuadraticPotential(const Mat3& A);
  static QuadraticPotential diagonal(const Vec3& d);

  const Mat3& matrix() const { return A_; }
  /// Ascending eigenvalues.
  const Vec3& eigenvalues() const { return lambda_; }
  /// Column i is the unit eigenvector for eigenvalues()(i); each column is
  /// sign-fixed so that its largest-magnitude entry is positive.
  const Mat3& eigenvectors() const { return V_; }
  Vec3 eigenvector(int i) const { return V_.col(i); }

  /// Relative gaps (lambda_{i+1} - lambda_i) / lambda_3 all exceed 1e-9.
  bool has_distinct_eigenvalues() const;

  double value(const Vec4& x) const;
  double value(const UnitQuaternion& Q) const { return value(Q.vec()); }
  /// Ambient gradient [0, 2 (A eps)^T]^T.
  Vec4 grad4(const Vec4& x) const;
  Vec4 grad4(const UnitQuaternion& Q) const { return grad4(Q.vec()); }

  /// {+-i} together with {+-[0, v_i^T]^T}: exactly eight points, desired pair
  /// first. Throws DegenerateSpectrum for repeated eigenvalues.
  std::vector<UnitQuaternion> critical_points() const;

 private:
  Mat3 A_;
  Vec3 lambda_;
  Mat3 V_;
};

/// Indexed family U(Q, q) of potential functions over the index set {-1, 1}.
///
/// Values and gradients are defined on all of R^4 by the closed-form
/// expression of each family; grad4 is the ambient gradient with respect to
/// the first argument. Tangential projection is left to consumers.
class SpfFamily {
 public:
  virtual ~SpfFamily() = default;

  virtual std::string name() const = 0;
  virtual double value(const Vec4& x, LogicState q) const = 0;
  virtual Vec4 grad4(const Vec4& x, LogicState q) const = 0;
  /// The synergy-gap bound the family certifies, if any.
  virtual std::optional<double> gap_bound() const = 0;

  double value(const UnitQuaternion& Q, LogicState q) const { return value(Q.vec(), q); }
  Vec4 grad4(const UnitQuaternion& Q, LogicState q) const { return grad4(Q.vec(), q); }

  /// mu(Q, q) = U(Q, q) - min_p U(Q, p) = max{0, U(Q, q) - U(Q, -q)}.
  double synergy_gap(const UnitQuaternion& Q, LogicState q) const;

  /// A minimizer of U(Q, .). When both indices tie, `current` is kept.
  LogicState argmin(const UnitQuaternion& Q, LogicState current) const;
};

/// Noncentrally synergistic family U(Q, q) = 1 - q*eta.
class NcshFamily final : public SpfFamily {
 public:
  /// delta is a configuration value in (0, 1).
  explicit NcshFamily(double delta = 0.5);

  std::string name() const override { return "ncsh"; }
  double value(const Vec4& x, LogicState q) const override;
  Vec4 grad4(const Vec4& x, LogicState q) const override;
  std::optional<double> gap_bound() const override { return delta_; }

  using SpfFamily::grad4;
  using SpfFamily::value;

 private:
  double delta_;
};

/// kappa_U(Q, q) = q*eps for the noncentrally synergistic family.
Vec3 ncsh_feedback(LogicState q, const UnitQuaternion& Q);

}  // namespace synatt

#endif  // SYNATT_POTENTIAL_HPP_
