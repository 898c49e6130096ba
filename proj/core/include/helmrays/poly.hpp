#pragma once

#include <array>
#include <vector>

#include "helmrays/vec.hpp"

namespace helmrays::model {

/// Sparse polynomial in up to three variables with complex coefficients.
/// Terms are kept sorted by exponent triple so that all downstream results
/// are reproducible independently of construction order.
class Poly {
 public:
  using Exps = std::array<int, 3>;

  Poly() = default;  // the zero polynomial
  static Poly constant(Complex c);
  static Poly variable(int axis, int dim = 3);

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  Complex constant_value() const;  // valid when is_constant()

  int degree() const;

  void add_term(const Exps& e, Complex c);

  Poly operator+(const Poly& o) const;
  Poly operator-(const Poly& o) const;
  Poly operator*(const Poly& o) const;
  Poly operator*(Complex c) const;

  Poly derivative(int axis) const;
  Poly conjugated() const;  // conjugate coefficients (conj of values on R^d)
  Poly reflected() const;   // x -> -x

  /// Substitute x_j -> sum_k A[j][k] y_k + b[j].
  Poly affine_substitute(const std::array<CVec3, 3>& A, const CVec3& b) const;
  /// Substitute x -> c*x + b (diagonal affine map).
  Poly scaled_shifted(Complex c, const CVec3& b) const;

  Complex eval(const Vec3& x) const;
  Complex eval(const CVec3& x) const;

  const std::vector<std::pair<Exps, Complex>>& terms() const { return terms_; }

 private:
  void normalize();
  std::vector<std::pair<Exps, Complex>> terms_;
};

}  // namespace helmrays::model
