#pragma once
// Reference computations that share no code with the library.

#include <complex>
#include <random>

#include <Eigen/Dense>

namespace oracle {

using C = std::complex<double>;
using V3 = Eigen::Vector3d;
using M2 = Eigen::Matrix2cd;

/// Quaternion w + xi + yj + zk as the complex 2x2 matrix [[w+xi, y+zi], [-y+zi, w-xi]].
inline M2 quat_matrix(double w, double x, double y, double z) {
  M2 m;
  m << C(w, x), C(y, z), C(-y, z), C(w, -x);
  return m;
}

inline M2 pure(const V3& v) { return quat_matrix(0.0, v.x(), v.y(), v.z()); }

/// Eigenvalues {q, conj q} of the quaternionic cross ratio through the matrix
/// model: returns (Re q, |Im q|).
inline std::pair<double, double> cross_ratio(const V3& a, const V3& b, const V3& c, const V3& d) {
  const M2 m = pure(a - b) * pure(b - c).inverse() * pure(c - d) * pure(d - a).inverse();
  const Eigen::ComplexEigenSolver<M2> es(m);
  const C e = es.eigenvalues()[0];
  return {e.real(), std::abs(e.imag())};
}

inline C cross_ratio(C a, C b, C c, C d) { return (a - b) * (c - d) / ((b - c) * (d - a)); }

/// Distance from p to the circle through a, b, c, with the center found by
/// solving the two bisector equations inside the plane of the triangle.
inline double distance_to_circle(const V3& a, const V3& b, const V3& c, const V3& p) {
  const V3 e1 = (b - a).normalized();
  const V3 nrm = (b - a).cross(c - a).normalized();
  const V3 e2 = nrm.cross(e1);
  auto to2 = [&](const V3& q) { return Eigen::Vector2d((q - a).dot(e1), (q - a).dot(e2)); };
  const Eigen::Vector2d B = to2(b), Cc = to2(c);
  Eigen::Matrix2d A;
  A << 2 * B.x(), 2 * B.y(), 2 * Cc.x(), 2 * Cc.y();
  const Eigen::Vector2d rhs(B.squaredNorm(), Cc.squaredNorm());
  const Eigen::Vector2d o = A.colPivHouseholderQr().solve(rhs);
  const V3 center = a + o.x() * e1 + o.y() * e2;
  const double r = o.norm();
  const V3 d = p - center;
  const double h = d.dot(nrm);
  const V3 inplane = d - h * nrm;
  return std::sqrt(h * h + std::pow(inplane.norm() - r, 2));
}

inline std::mt19937_64 rng(unsigned long long seed) { return std::mt19937_64(seed); }

}  // namespace oracle
