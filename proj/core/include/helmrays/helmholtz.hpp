#pragma once

#include <functional>
#include <stdexcept>

#include "helmrays/model.hpp"
#include "helmrays/norms.hpp"

namespace helmrays::helmholtz {

using model::FieldExpr;
using model::Scenario;

/// Resolvent denominator D(xi) = c0 - |xi|^2 - i c1, c0 > 0, c1 > 0.
/// Rescaled equations use (1, eps*alpha_eps); the full equation uses
/// (1/eps^2, alpha_eps/eps).
struct Denominator {
  double c0 = 1.0;
  double c1 = 1e-2;
  Complex operator()(double r) const { return Complex(c0 - r * r, -c1); }
  /// Root with positive real part; lies just below the real axis.
  Complex pole() const { return std::sqrt(Complex(c0, -c1)); }
};

enum class SolutionKind { full, rescaled0, rescaled1, plain };

/// Exact Fourier-space representation  u^(xi) = N(xi) / D(xi); all
/// evaluation and pairing below derives from this object alone.
struct SpectralSolution {
  FieldExpr numerator;
  Denominator denom;
  double eps = 1.0;
  SolutionKind kind = SolutionKind::plain;
  int dim = 3;
};

/// u^eps: N(xi) = S0^(eps xi) + e^{-i q1.xi} S1^(eps xi),
///        D = 1/eps^2 - |xi|^2 - i alpha_eps/eps.
SpectralSolution solve_full(const Scenario& s, double eps);
/// Variants with a single source switched on (cross-term experiments).
SpectralSolution solve_full_single(const Scenario& s, double eps, int which);

/// w^eps_j: rescaled about center 0 or q1, D = 1 - |xi|^2 - i eps*alpha_eps.
SpectralSolution solve_rescaled(const Scenario& s, double eps, int center);
SpectralSolution solve_rescaled_single(const Scenario& s, double eps, int center, int which);

/// Damped free resolvent applied to a fixed source: N = F(S), D = (1, eta).
SpectralSolution resolvent_apply(const FieldExpr& S, double eta);

struct EvalQuad {
  int level = 1;                  // quadrature quality (0 coarse .. 2 fine)
  double sigmas = 9.0;            // radial reach in numerator decay units
  std::size_t max_nodes = 4'000'000;  // oscillation budget
};

struct OscillationBudgetError : std::runtime_error {
  explicit OscillationBudgetError(const std::string& msg) : std::runtime_error(msg) {}
};

/// Core kernel: \int_{R^d} F(xi) / D(xi) dxi  for a closed-form F, by exact
/// angular reduction per atom (moments of e^{w.omega} on S^2) and a
/// pole/oscillation-adapted radial rule. Polynomial prefactors of degree
/// <= 2 are reduced exactly; higher degrees fall back to a sphere rule.
Complex integrate_over_resolvent(const FieldExpr& F, const Denominator& D,
                                 const EvalQuad& q = {});

struct ValueWithError {
  Complex value{0.0};
  double error = 0.0;
};
ValueWithError integrate_over_resolvent_err(const FieldExpr& F, const Denominator& D,
                                            const EvalQuad& q = {});

/// u(x) = \int e^{i x.xi} N(xi)/D(xi) dxi.
Complex evaluate(const SpectralSolution& sol, const Vec3& x, const EvalQuad& q = {});
ValueWithError evaluate_err(const SpectralSolution& sol, const Vec3& x, const EvalQuad& q = {});

/// <u, v> = \int u conj(v) dx = (2pi)^d \int N conj(v^) / D dxi.
Complex pairing(const SpectralSolution& sol, const FieldExpr& v, const EvalQuad& q = {});
ValueWithError pairing_err(const SpectralSolution& sol, const FieldExpr& v,
                           const EvalQuad& q = {});

/// D(xi) u^(xi) - S^(xi) with the source transform recomputed through an
/// independent operator chain; exact rational identity up to roundoff.
Complex defining_residual(const SpectralSolution& sol, const Scenario& s, const Vec3& xi);

/// The outgoing solution of Delta w + w = S (d = 3), carried as the pair of
/// evaluators whose agreement defines it: the damped-resolvent limit
/// (Richardson in eta) and the x-space kernel
///   w(x) = -(1/4pi) \int S(y) e^{sign i|x-y|} / |x-y| dy,
/// with the phase sign fixed by matching the eta -> 0 limit (sign = -1
/// under this artifact's Fourier convention).
struct OutgoingSolution {
  FieldExpr source;
  double eta_base = 1e-2;
  int kernel_sign = -1;
  bool radial = true;

  Complex eval_fourier(const Vec3& x, const EvalQuad& q = {}) const;
  ValueWithError eval_fourier_err(const Vec3& x, const EvalQuad& q = {}) const;
  Complex eval_kernel(const Vec3& x, double tol = 1e-9) const;
  Complex eval_kernel_signed(const Vec3& x, int sign, double tol = 1e-9) const;
};

/// Builds the solution and fixes kernel_sign by the defining cross-check;
/// throws if neither sign matches (convention bug guard).
OutgoingSolution solve_outgoing(const FieldExpr& S, double match_tol = 1e-3);

/// <w0, v> for the outgoing solution, by Richardson extrapolation of the
/// damped pairings over the eta ladder.
ValueWithError outgoing_pairing(const OutgoingSolution& w, const FieldExpr& v,
                                const EvalQuad& q = {});

struct SommerfeldResidual {
  double plus = 0.0;   // (1/r) int_{S_r} |dw/dr + i w|^2
  double minus = 0.0;  // the -i variant
  double fd_noise = 0.0;
};
SommerfeldResidual sommerfeld_residual(const std::function<Complex(const Vec3&)>& w, double r,
                                       int sphere_order = 10, double h = 1e-3);

/// Cubic-interpolated radial profile r -> f(|x - center|); makes dyadic-ring
/// integrals of solution fields cheap. Beyond r_hi the profile continues
/// with the outgoing far-field form f(r_hi) (r_hi/r) e^{-(i + eta/2)(r-r_hi)}.
class RadialProfileField {
 public:
  RadialProfileField() = default;
  RadialProfileField(std::function<Complex(double)> radial, const Vec3& center, double r_hi,
                     int n_samples, double eta = 0.0);
  Complex operator()(const Vec3& x) const;
  Complex at_radius(double r) const;
  const Vec3& center() const { return center_; }

 private:
  Vec3 center_{0, 0, 0};
  double dr_ = 1.0, r_hi_ = 0.0, eta_ = 0.0;
  std::vector<Complex> samples_;
  std::vector<Complex> deriv2_;  // natural cubic spline second derivatives
};

/// Fast evaluator for w^eps_0 = wtilde(|x|) + A(|x - q1/eps|) (radial sources);
/// exact construction from the two single-source rescaled solutions.
norms::EvaluableField rescaled_profile_field(const Scenario& s, double eps, int center,
                                             double r_hi, const EvalQuad& q = {});

}  // namespace helmrays::helmholtz
