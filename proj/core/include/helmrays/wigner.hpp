#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "helmrays/helmholtz.hpp"
#include "helmrays/model.hpp"
#include "helmrays/norms.hpp"

namespace helmrays::wigner {

using helmholtz::SpectralSolution;
using model::FieldExpr;
using model::Scenario;

/// Separable phase-space test function a(x, xi) = phi(x) psi(xi). Flags are
/// verified numerically at construction: off_sphere means |psi| is below
/// 1e-10 * sup|psi| on a neighborhood of |xi| = 1, off_zero_frequency the
/// same near xi = 0.
struct Observable {
  FieldExpr phi;
  FieldExpr psi;
  bool off_sphere = false;
  bool off_zero_frequency = false;
  std::string id;
};

Observable make_observable(const FieldExpr& phi, const FieldExpr& psi, std::string id = "a");

/// Components of xi . grad_x a: pairs ((d_j phi)(x), (xi_j psi)(xi)).
std::vector<Observable> xi_dot_grad(const Observable& a);

/// True when phi and psi are real-valued (the transport identity and the
/// Im-part reductions assume real observables).
bool observable_is_real(const Observable& a);

struct WignerPairingResult {
  Complex value{0.0};
  double error = 0.0;
  enum class Method { exact, deterministic, mc } method = Method::exact;
  long n_samples = 0;
};

struct WignerQuad {
  long n_samples = 2'000'000;
  std::uint64_t seed = 1;
  int n_jobs = 1;
  int det_level = 1;
};

/// All pairings below compute, under the fixed convention (semi-linear
/// pairing in the test function),
///   <W^eps(u,v), a> = (2pi)^d \int\int u^(p) conj(v^(q)) conj(phi^(p-q))
///                                  conj(psi(eps (p+q)/2)) dp dq,
/// the Fourier-side reduction of the direct-space definition
///   (2pi)^{-d} \int\int u(x + eps y/2) conj(v(x - eps y/2))
///                       conj(phi(x)) conj(psi_check(y)) dx dy.

/// Exact closed form for closed-form fields (polynomial degree <= 2 total).
Complex wigner_pairing_exact(const FieldExpr& u, const FieldExpr& v, const Observable& a,
                             double eps);

/// Brute direct-space oracle at d = 1 (tensor grid over (x, y)).
Complex wigner_pairing_direct_1d(const FieldExpr& u, const FieldExpr& v, const Observable& a,
                                 double eps, int n = 260, double half = 14.0);

/// Importance-sampled MC for solution pairs; all observables share samples.
/// When `combo` is nonempty (size = as.size()) one extra estimate of
/// sum_k combo[k] * <W,a_k> is appended, accumulated per sample so its
/// stderr reflects the correlations between the shared-sample estimates.
std::vector<WignerPairingResult> wigner_pairing_mc(const SpectralSolution& u,
                                                   const SpectralSolution& v,
                                                   const std::vector<Observable>& as, double eps,
                                                   const WignerQuad& q = {},
                                                   const std::vector<Complex>& combo = {});
WignerPairingResult wigner_pairing(const SpectralSolution& u, const SpectralSolution& v,
                                   const Observable& a, double eps, const WignerQuad& q = {});

/// eps <W^eps(S_which^eps, u^eps), a>, deterministic: the y-marginal of the
/// rescaled direct-space form reduces to one resolvent integral.
helmholtz::ValueWithError source_term_pairing(const Scenario& s, double eps, int which,
                                              const Observable& a, int level = 1);
/// Independent reduction (frequency-side p-marginal); used as a cross-check.
helmholtz::ValueWithError source_term_pairing_alt(const Scenario& s, double eps, int which,
                                                  const Observable& a, int level = 1);

/// The eps -> 0 limit of source_term_pairing:
///   (2pi)^3 conj(phi(x_which)) \int S^_w(xi) conj(w^_w(xi)) conj(psi(xi)) dxi
/// with w^_w = -(p.v. - i pi delta)(|xi|^2-1) S^_w; the p.v. part by
/// singularity-subtracted radial quadrature, the delta part by sphere rule.
Complex source_limit(const Scenario& s, int which, const Observable& a, int level = 1);
/// The delta-sphere part alone (the imaginary-part identity of the limit).
Complex source_limit_delta_part(const Scenario& s, int which, const Observable& a);

/// Weyl quantization oracle (d <= 2):
///   (a^W(x, eps D) f)(x) = (2pi)^{-d} \int\int a((x+y)/2, eps xi) f(y)
///                           e^{i(x-y).xi} dxi dy.
norms::EvaluableField weyl_apply(const Observable& a, const FieldExpr& f, double eps);

struct WeylDualityResult {
  double residual = 0.0;            // |<W(u,v),a> - <conj(v), b^W conj(u)>|, b(x,xi) = a(x,-xi)
  double residual_unreflected = 0.0;  // same with b = a (fails for odd psi)
};
WeylDualityResult weyl_duality_check(const FieldExpr& u, const FieldExpr& v,
                                     const Observable& a, double eps);

/// <W^eps(u_0, u_1), a> for the single-source solutions; vanishes as eps->0.
WignerPairingResult cross_term(const Scenario& s, double eps, const Observable& a,
                               const WignerQuad& q = {});

/// The eps-level transport identity
///   alpha_eps <W,a> + <W, xi.grad_x a> = <Q^eps, a>,
///   <Q^eps, a> = -Im( eps<W(S0^eps,u)> + eps<W(S1^eps,u)> )   (real a),
/// with all three groups computed independently.
struct TransportResidual {
  Complex damping_term{0.0};
  Complex transport_term{0.0};
  Complex source_term{0.0};
  double residual = 0.0;
  double combined_error = 0.0;
};
TransportResidual transport_identity_residual(const Scenario& s, double eps,
                                              const Observable& a, const WignerQuad& q = {});

}  // namespace helmrays::wigner
