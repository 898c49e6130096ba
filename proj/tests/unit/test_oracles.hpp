#pragma once

// Brute-force quadrature oracles used across the unit tests. These stay
// independent of the library's own integration engines: plain tensor
// Gauss-Legendre grids over boxes.

#include <functional>

#include "helmrays/quadrature.hpp"
#include "helmrays/vec.hpp"

namespace oracles {

using helmrays::Complex;
using helmrays::dot;
using helmrays::kI;
using helmrays::Vec3;

inline Complex tensor_integral_1d(const std::function<Complex(double)>& f, double a, double b,
                                  int n = 200) {
  auto q = helmrays::quad::gauss_legendre_on(n, a, b);
  Complex s = 0.0;
  for (std::size_t i = 0; i < q.size(); ++i) s += q.weights[i] * f(q.nodes[i]);
  return s;
}

inline Complex tensor_integral_2d(const std::function<Complex(double, double)>& f, double a,
                                  double b, int n = 120) {
  auto q = helmrays::quad::gauss_legendre_on(n, a, b);
  Complex s = 0.0;
  for (std::size_t i = 0; i < q.size(); ++i)
    for (std::size_t j = 0; j < q.size(); ++j)
      s += q.weights[i] * q.weights[j] * f(q.nodes[i], q.nodes[j]);
  return s;
}

inline Complex tensor_integral_3d(const std::function<Complex(const Vec3&)>& f, const Vec3& lo,
                                  const Vec3& hi, int n = 48) {
  auto qx = helmrays::quad::gauss_legendre_on(n, lo[0], hi[0]);
  auto qy = helmrays::quad::gauss_legendre_on(n, lo[1], hi[1]);
  auto qz = helmrays::quad::gauss_legendre_on(n, lo[2], hi[2]);
  Complex s = 0.0;
  for (std::size_t i = 0; i < qx.size(); ++i)
    for (std::size_t j = 0; j < qy.size(); ++j) {
      Complex row = 0.0;
      for (std::size_t k = 0; k < qz.size(); ++k)
        row += qz.weights[k] * f({qx.nodes[i], qy.nodes[j], qz.nodes[k]});
      s += qx.weights[i] * qy.weights[j] * row;
    }
  return s;
}

/// Direct quadrature of the Fourier transform under the artifact convention,
/// (2pi)^{-d} int e^{-i x.xi} f(x) dx over the box.
inline Complex fourier_oracle(const std::function<Complex(const Vec3&)>& f, const Vec3& xi,
                              int d, double half, int n = 48) {
  const double pref = std::pow(2.0 * 3.14159265358979323846, -d);
  using helmrays::kI;
  if (d == 1) {
    return pref * tensor_integral_1d(
                      [&](double x) {
                        return std::exp(-kI * (x * xi[0])) * f({x, 0.0, 0.0});
                      },
                      -half, half, 400);
  }
  if (d == 2) {
    return pref * tensor_integral_2d(
                      [&](double x, double y) {
                        return std::exp(-kI * (x * xi[0] + y * xi[1])) * f({x, y, 0.0});
                      },
                      -half, half, 160);
  }
  return pref * tensor_integral_3d(
                    [&](const Vec3& x) { return std::exp(-kI * dot(x, xi)) * f(x); },
                    {-half, -half, -half}, {half, half, half}, n);
}

}  // namespace oracles
