#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <cstddef>

namespace helmrays {

using Complex = std::complex<double>;

inline constexpr Complex kI{0.0, 1.0};

/// Point in R^d, d <= 3. Unused trailing components stay zero, so all
/// arithmetic below is dimension-agnostic.
using Vec3 = std::array<double, 3>;
using CVec3 = std::array<Complex, 3>;

inline Vec3 vec(double x, double y = 0.0, double z = 0.0) { return {x, y, z}; }

inline Vec3 operator+(const Vec3& a, const Vec3& b) {
  return {a[0] + b[0], a[1] + b[1], a[2] + b[2]};
}
inline Vec3 operator-(const Vec3& a, const Vec3& b) {
  return {a[0] - b[0], a[1] - b[1], a[2] - b[2]};
}
inline Vec3 operator*(double c, const Vec3& a) { return {c * a[0], c * a[1], c * a[2]}; }
inline Vec3 operator-(const Vec3& a) { return {-a[0], -a[1], -a[2]}; }

inline double dot(const Vec3& a, const Vec3& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}
inline double norm2(const Vec3& a) { return dot(a, a); }
inline double norm(const Vec3& a) { return std::sqrt(norm2(a)); }

inline CVec3 operator+(const CVec3& a, const CVec3& b) {
  return {a[0] + b[0], a[1] + b[1], a[2] + b[2]};
}
inline CVec3 operator*(const Complex& c, const CVec3& a) {
  return {c * a[0], c * a[1], c * a[2]};
}
inline CVec3 toC(const Vec3& a) { return {Complex(a[0]), Complex(a[1]), Complex(a[2])}; }

/// Unconjugated dot product; the natural pairing for analytic continuation.
inline Complex cdot(const CVec3& a, const CVec3& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}
inline Complex cdot(const CVec3& a, const Vec3& b) {
  return a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
}

inline double real_norm(const CVec3& a) {
  double s = 0.0;
  for (int j = 0; j < 3; ++j) s += std::norm(a[j]);
  return std::sqrt(s);
}

}  // namespace helmrays
