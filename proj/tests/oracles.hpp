// Independent reference computations for the tests. Nothing here calls the
// library code under test except where a test needs the function being
// differentiated or searched.

#ifndef SYNATT_TESTS_ORACLES_HPP_
#define SYNATT_TESTS_ORACLES_HPP_

#include <cmath>
#include <functional>
#include <optional>
#include <random>
#include <vector>

#include <Eigen/Dense>

namespace oracle {

using Vec3 = Eigen::Vector3d;
using Vec4 = Eigen::Vector4d;
using Mat3 = Eigen::Matrix3d;
using Mat4 = Eigen::Matrix4d;
using VecX = Eigen::VectorXd;
using MatX = Eigen::MatrixXd;

// Reference values computed offline with 40-digit arithmetic (mpmath) for
// A = diag(0.6, 0.8, 1), u = (1,1,1)/sqrt(3), k = 0.54.
inline constexpr double kThetaStar = 0.498807665737691534;
inline constexpr double kSharperGap = 0.127215036162432624;
inline constexpr double kClosedFormGap = 0.113671789903408686;
inline constexpr double kGapPerEigen[3] = {0.127215036162432624, 0.188240716551037758, 0.249266396939642892};
/// The "+" critical point attached to e3 for q = 1.
inline constexpr double kCritE3[4] = {0.276192144142002015, -0.0406154755205144748, -0.0406154755205144748,
                                      0.959384524479485525};
inline constexpr double kThetaLowerBracket = 0.492419552775636602;

/// Left-multiplication matrix of a: quat(a) * quat(b) = left(a) * b, written
/// out from the Hamilton product table.
inline Mat4 left_matrix(const Vec4& a) {
  Mat4 L;
  L << a(0), -a(1), -a(2), -a(3),
       a(1),  a(0), -a(3),  a(2),
       a(2),  a(3),  a(0), -a(1),
       a(3), -a(2),  a(1),  a(0);
  return L;
}

inline Vec4 product(const Vec4& a, const Vec4& b) { return left_matrix(a) * b; }

/// exp(M) by scaling and squaring with a 30-term Taylor series.
inline Mat4 expm(const Mat4& M) {
  int s = 0;
  double norm = M.cwiseAbs().rowwise().sum().maxCoeff();
  while (norm > 0.5) {
    norm /= 2.0;
    ++s;
  }
  const Mat4 X = M / std::pow(2.0, s);
  Mat4 term = Mat4::Identity(), sum = Mat4::Identity();
  for (int n = 1; n <= 30; ++n) {
    term = term * X / n;
    sum += term;
  }
  for (int i = 0; i < s; ++i) sum = sum * sum;
  return sum;
}

/// Generator of the warp rotation about axis w: exp(theta * S) rotates the
/// (1, w) plane of R^4 and fixes its complement.
inline Mat4 warp_generator(const Vec3& w) {
  Mat4 S = Mat4::Zero();
  S.block<1, 3>(0, 1) = -w.transpose();
  S.block<3, 1>(1, 0) = w;
  return S;
}

/// Fourth-order central differences of f at x.
template <int N>
Eigen::Matrix<double, N, 1> gradient(const std::function<double(const Eigen::Matrix<double, N, 1>&)>& f,
                                     const Eigen::Matrix<double, N, 1>& x, double h) {
  Eigen::Matrix<double, N, 1> g;
  for (int i = 0; i < N; ++i) {
    auto at = [&](double d) {
      Eigen::Matrix<double, N, 1> y = x;
      y(i) += d;
      return f(y);
    };
    g(i) = (-at(2 * h) + 8 * at(h) - 8 * at(-h) + at(-2 * h)) / (12 * h);
  }
  return g;
}

/// Constrained critical points of f on S^3: Newton on the Lagrange system
/// grad f(x) - lambda x = 0, |x|^2 = 1 with a finite-difference Jacobian of
/// the supplied gradient. Returns the point when the residual drops below
/// tol.
inline std::optional<Vec4> lagrange_newton(const std::function<Vec4(const Vec4&)>& grad, Vec4 x, double tol = 1e-11,
                                           int max_iter = 100) {
  x.normalize();
  double lambda = grad(x).dot(x);
  const auto residual = [&](const Vec4& y, double l) {
    VecX r(5);
    r.head<4>() = grad(y) - l * y;
    r(4) = 0.5 * (y.squaredNorm() - 1.0);
    return r;
  };
  for (int it = 0; it < max_iter; ++it) {
    const VecX r = residual(x, lambda);
    if (r.norm() < tol) return x;
    MatX J(5, 5);
    const double h = 1e-6;
    for (int i = 0; i < 4; ++i) {
      Vec4 xp = x, xm = x;
      xp(i) += h;
      xm(i) -= h;
      J.col(i) = (residual(xp, lambda) - residual(xm, lambda)) / (2 * h);
    }
    J.col(4) = VecX::Zero(5);
    J.block<4, 1>(0, 4) = -x;
    const VecX d = J.colPivHouseholderQr().solve(-r);
    // Damped step: halve until the residual decreases.
    double a = 1.0;
    for (int k = 0; k < 30; ++k, a *= 0.5) {
      const Vec4 xn = x + a * d.head<4>();
      if (residual(xn, lambda + a * d(4)).norm() < r.norm()) break;
    }
    x += a * d.head<4>();
    lambda += a * d(4);
  }
  if (residual(x, lambda).norm() < tol) return x;
  return std::nullopt;
}

/// Unit 4-vectors on a quasi-uniform grid: Hopf coordinates
/// (cos a cos b, cos a sin b, sin a cos c, sin a sin c) with a uniform in
/// sin^2 and b, c uniform.
inline std::vector<Vec4> hopf_grid(int na, int nb, int nc) {
  std::vector<Vec4> out;
  const double pi = std::acos(-1.0);
  for (int i = 0; i < na; ++i) {
    const double a = std::asin(std::sqrt((i + 0.5) / na));
    for (int j = 0; j < nb; ++j) {
      const double b = 2 * pi * (j + 0.5) / nb;
      for (int k = 0; k < nc; ++k) {
        const double c = 2 * pi * (k + 0.5) / nc;
        out.emplace_back(std::cos(a) * std::cos(b), std::cos(a) * std::sin(b), std::sin(a) * std::cos(c),
                         std::sin(a) * std::sin(c));
      }
    }
  }
  return out;
}

inline Vec4 random_unit4(std::mt19937_64& g) {
  std::normal_distribution<double> n;
  Vec4 v(n(g), n(g), n(g), n(g));
  return v.normalized();
}

inline Vec3 random_vec3(std::mt19937_64& g) {
  std::normal_distribution<double> n;
  return Vec3(n(g), n(g), n(g));
}

}  // namespace oracle

#endif  // SYNATT_TESTS_ORACLES_HPP_
