#pragma once

#include <functional>
#include <vector>

#include "helmrays/atom.hpp"
#include "helmrays/quadrature.hpp"

namespace helmrays::norms {

using model::FieldExpr;

/// Dyadic rings C(j) = {2^j <= |x| < 2^{j+1}} for j >= 0, C(-1) = unit ball.
struct RingDecomposition {
  int j_max = 20;
  static std::pair<double, double> ring_bounds(int j);
};

/// Decay information used only for certified integral tails.
struct DecayMeta {
  enum class Kind { gaussian, power };
  Kind kind = Kind::gaussian;
  double amplitude = 1.0;  // A
  double rate = 1.0;       // gaussian: sigma in A e^{-sigma (r-r0)^2/2}; power: p in A (r0/r)^p
  double radius0 = 0.0;    // validity radius
  double envelope(double r) const;
};

/// A pointwise-evaluatable complex field with decay metadata. Wraps either a
/// closed-form FieldExpr or a solution evaluator.
struct EvaluableField {
  std::function<Complex(const Vec3&)> eval;
  int dim = 3;
  DecayMeta decay;
};

EvaluableField from_field(const FieldExpr& f);

struct NormQuad {
  int n_radial = 24;       // Gauss-Legendre points per ring
  int sphere_order = 10;
  double tail_tol = 1e-8;  // acceptable certified tail for b_norm
};

struct BNormResult {
  double value = 0.0;
  double tail_bound = 0.0;
  std::vector<double> ring_terms;  // (2^{j+1} int_{C(j)} |f|^2)^{1/2}, j = -1..j_used
  int j_used = -1;
};

struct BStarResult {
  double value = 0.0;
  int argmax_j = -1;
  bool attained_interior = true;  // sup strictly inside [-1, j_max)
  std::vector<double> ring_terms;  // (2^{-j} int_{C(j)} |u|^2)^{1/2}
};

/// ||f||_B = sum_j (2^{j+1} int_{C(j)} |f|^2)^{1/2}, truncated with a
/// certified tail bound from the decay metadata. Throws if the tail bound
/// exceeds tail_tol (naming the ring where truncation stopped).
BNormResult b_norm(const EvaluableField& f, const RingDecomposition& rd, const NormQuad& q = {});

/// ||u||_{B*} = sup_j (2^{-j} int_{C(j)} |u|^2)^{1/2} over computed rings.
BStarResult bstar_norm(const EvaluableField& u, const RingDecomposition& rd,
                       const NormQuad& q = {});

/// ||<x>^{exponent} u||_{L^2}; throws on non-stabilizing partial sums.
double weighted_l2(const EvaluableField& u, double exponent, const RingDecomposition& rd,
                   const NormQuad& q = {});

/// int_R ||f(x_1,.)||_{L^2(R^2)} dx_1 (d = 3).
/// Closed-form inner marginal for plain-atom fields.
double trace_functional(const FieldExpr& f, double tol = 1e-9);
/// Generic evaluator variant with polar inner quadrature.
double trace_functional(const EvaluableField& f, double radius, double tol = 1e-6);

/// X_lambda functional of a separable observable a(x, xi) = phi(x) psi(xi):
///   int sup_x (1 + |x| + |y|)^{1+lambda} |phi(x)| |(F psi)(y)| dy.
/// Exact for single-atom factors; an upper envelope is used for atom sums.
double xlambda_norm(const FieldExpr& phi, const FieldExpr& psi, double lambda,
                    double tol = 1e-8);

}  // namespace helmrays::norms
