#include "synatt/potential.hpp"

#include <algorithm>
#include <cmath>

#include <Eigen/Eigenvalues>

namespace synatt {

LogicState::LogicState(int value) : value_(value) {
  if (value != 1 && value != -1) throw std::invalid_argument("LogicState must be -1 or 1");
}

QuadraticPotential::QuadraticPotential(const Mat3& A) : A_(A) {
  if (!A.allFinite()) throw std::invalid_argument("QuadraticPotential: non-finite matrix");
  if ((A - A.transpose()).cwiseAbs().maxCoeff() > 1e-12) {
    throw std::invalid_argument("QuadraticPotential: matrix is not symmetric");
  }
  Eigen::SelfAdjointEigenSolver<Mat3> es(A);
  if (es.info() != Eigen::Success) throw std::invalid_argument("QuadraticPotential: eigen-solver failed");
  lambda_ = es.eigenvalues();
  V_ = es.eigenvectors();
  if (!(lambda_(0) > 0.0)) throw std::invalid_argument("QuadraticPotential: matrix is not positive definite");
  for (int i = 0; i < 3; ++i) {
    Eigen::Index arg = 0;
    V_.col(i).cwiseAbs().maxCoeff(&arg);
    if (V_(arg, i) < 0.0) V_.col(i) = -V_.col(i);
  }
}

QuadraticPotential QuadraticPotential::diagonal(const Vec3& d) { return QuadraticPotential(Mat3(d.asDiagonal())); }

bool QuadraticPotential::has_distinct_eigenvalues() const {
  const double scale = lambda_(2);
  return (lambda_(1) - lambda_(0)) / scale > 1e-9 && (lambda_(2) - lambda_(1)) / scale > 1e-9;
}

double QuadraticPotential::value(const Vec4& x) const {
  const Vec3 eps = x.tail<3>();
  return eps.dot(A_ * eps);
}

Vec4 QuadraticPotential::grad4(const Vec4& x) const { return nu(2.0 * (A_ * x.tail<3>())); }

std::vector<UnitQuaternion> QuadraticPotential::critical_points() const {
  if (!has_distinct_eigenvalues()) {
    throw DegenerateSpectrum("QuadraticPotential: repeated eigenvalues, critical set is not isolated");
  }
  std::vector<UnitQuaternion> pts{UnitQuaternion::identity(), -UnitQuaternion::identity()};
  for (int i = 0; i < 3; ++i) {
    const UnitQuaternion p(0.0, V_.col(i));
    pts.push_back(p);
    pts.push_back(-p);
  }
  return pts;
}

double SpfFamily::synergy_gap(const UnitQuaternion& Q, LogicState q) const {
  return std::max(0.0, value(Q, q) - value(Q, q.opposite()));
}

LogicState SpfFamily::argmin(const UnitQuaternion& Q, LogicState current) const {
  const double here = value(Q, current);
  const double other = value(Q, current.opposite());
  return other < here ? current.opposite() : current;
}

NcshFamily::NcshFamily(double delta) : delta_(delta) {
  if (!(delta > 0.0 && delta < 1.0)) throw std::invalid_argument("NcshFamily: delta must lie in (0, 1)");
}

double NcshFamily::value(const Vec4& x, LogicState q) const { return 1.0 - q.sign() * x(0); }

Vec4 NcshFamily::grad4(const Vec4&, LogicState q) const { return Vec4(-q.sign(), 0.0, 0.0, 0.0); }

Vec3 ncsh_feedback(LogicState q, const UnitQuaternion& Q) { return q.sign() * Q.eps(); }

}  // namespace synatt
