#pragma once

#include <cmath>

#include <Eigen/Core>

namespace minnet {

/// Real quaternion w + xi + yj + zk. Points of R^3 embed as pure imaginary
/// quaternions (x, y, z) -> xi + yj + zk.
template <typename T = double>
struct Quaternion {
  T w{0}, x{0}, y{0}, z{0};

  constexpr Quaternion() = default;
  constexpr Quaternion(T w_, T x_, T y_, T z_) : w{w_}, x{x_}, y{y_}, z{z_} {}

  static Quaternion pure(const Eigen::Matrix<T, 3, 1>& v) { return {T(0), v.x(), v.y(), v.z()}; }

  [[nodiscard]] Eigen::Matrix<T, 3, 1> vec() const { return {x, y, z}; }

  constexpr Quaternion operator+(const Quaternion& o) const { return {w + o.w, x + o.x, y + o.y, z + o.z}; }
  constexpr Quaternion operator-(const Quaternion& o) const { return {w - o.w, x - o.x, y - o.y, z - o.z}; }
  constexpr Quaternion operator-() const { return {-w, -x, -y, -z}; }
  constexpr Quaternion operator*(T s) const { return {w * s, x * s, y * s, z * s}; }

  // Hamilton product (non-commutative).
  constexpr Quaternion operator*(const Quaternion& o) const {
    return {w * o.w - x * o.x - y * o.y - z * o.z,
            w * o.x + x * o.w + y * o.z - z * o.y,
            w * o.y - x * o.z + y * o.w + z * o.x,
            w * o.z + x * o.y - y * o.x + z * o.w};
  }

  [[nodiscard]] constexpr Quaternion conj() const { return {w, -x, -y, -z}; }
  [[nodiscard]] constexpr T norm2() const { return w * w + x * x + y * y + z * z; }
  [[nodiscard]] T norm() const { return std::sqrt(norm2()); }
  [[nodiscard]] T imag_norm() const { return std::sqrt(x * x + y * y + z * z); }

  /// Multiplicative inverse; caller guarantees norm() > 0.
  [[nodiscard]] constexpr Quaternion inverse() const {
    const T n = norm2();
    return {w / n, -x / n, -y / n, -z / n};
  }
};

using Quat = Quaternion<double>;

}  // namespace minnet
