#pragma once

#include <vector>

#include "helmrays/poly.hpp"
#include "helmrays/vec.hpp"

namespace helmrays::model {

/// One modulated Gaussian atom
///
///   x |-> amp * poly(x) * exp(-s|x-center|^2/2) * exp(i mod.x)
///
/// with complex amplitude, Re(s) > 0, real center and modulation. User-facing
/// sources and test functions are plain atoms (poly == 1, s real positive);
/// complex s and polynomial prefactors arise internally from transforms,
/// products and derivatives, under which the family is closed.
struct GaussianAtom {
  Complex amp{1.0, 0.0};
  Poly poly = Poly::constant(1.0);
  Complex s{1.0, 0.0};
  Vec3 center{0.0, 0.0, 0.0};
  Vec3 mod{0.0, 0.0, 0.0};

  bool plain() const { return poly.is_constant(); }
  Complex eval(const Vec3& x) const;
};

/// Finite sum of Gaussian atoms in dimension d <= 3. Evaluation, Fourier
/// transforms, products, shifts, dilations, derivatives and full-space
/// integrals are all exact.
struct FieldExpr {
  std::vector<GaussianAtom> atoms;
  int dim = 3;

  Complex eval(const Vec3& x) const;
  bool empty() const { return atoms.empty(); }
  std::size_t size() const { return atoms.size(); }
};

FieldExpr gaussian(int dim, Complex amp, double inv_variance, const Vec3& center = {},
                   const Vec3& mod = {});

FieldExpr add(const FieldExpr& f, const FieldExpr& g);
FieldExpr scale(const FieldExpr& f, Complex c);
FieldExpr shift(const FieldExpr& f, const Vec3& a);      // x -> f(x - a)
FieldExpr reflect(const FieldExpr& f);                   // x -> f(-x)
FieldExpr conj(const FieldExpr& f);
FieldExpr multiply(const FieldExpr& f, const FieldExpr& g);
FieldExpr multiply_poly(const FieldExpr& f, const Poly& p);
FieldExpr derivative(const FieldExpr& f, int axis);
FieldExpr dilate_arg(const FieldExpr& f, double c);      // x -> f(c x), c > 0

/// x -> eps^{-d} f((x - q)/eps); the concentration map of the sources.
FieldExpr scale_concentrate(const FieldExpr& f, double eps, const Vec3& q);

/// Forward transform under the fixed convention
///   (F f)(xi) = (2pi)^{-d} \int e^{-i x.xi} f(x) dx.
FieldExpr fourier_transform(const FieldExpr& f);

/// Inverse transform (F^{-1} g)(x) = \int e^{i x.xi} g(xi) dxi.
FieldExpr inverse_fourier_transform(const FieldExpr& g);

/// Exact \int_{R^d} f dx.
Complex integrate(const FieldExpr& f);

/// Exact L^2 pairing \int f conj(g) dx.
Complex inner_product(const FieldExpr& f, const FieldExpr& g);

/// Atom from exponent data: amp * exp(-a|x|^2/2 + b.x + c), Re(a) > 0,
/// rewritten in the canonical (real center, real modulation) form.
GaussianAtom atom_from_quadratic(Complex amp, Complex a, const CVec3& b, Complex c);

/// Pointwise upper envelope sum_i |amp_i| B_i(r) exp(-Re(s_i)(r-|m_i|)^2/2)
/// valid for |x| = r >= |m_i|; used for certified integral tails.
double abs_envelope_at_radius(const FieldExpr& f, double r);

/// Upper bound for \int_{|x|>R} |f|^2 dx (d = 3), by radial majorant.
double l2_tail_bound(const FieldExpr& f, double R);

/// Quadratic exponent in a pair of R^d variables (p, q):
///   exp(-A|p|^2/2 - B|q|^2/2 - C p.q + bp.p + bq.q + c0)
/// assembled from atoms evaluated at affine arguments lp*p + lq*q + t.
/// Supports full (p,q) integration with moments of total degree <= 2 and
/// marginalization over p alone.
struct PairQuadratic {
  int dim = 3;
  Complex A{0.0}, B{0.0}, C{0.0};
  CVec3 bp{}, bq{};
  Complex c0{0.0};
  Complex amp{1.0};

  /// Multiply in atom(lp*p + lq*q + t); the atom must be plain.
  void absorb(const GaussianAtom& atom, double lp, double lq, const Vec3& t);

  /// \int exp(.) dp dq.
  Complex integrate() const;

  struct Moments {
    CVec3 mu_p, mu_q;      // mean vectors
    Complex cov_pp, cov_pq, cov_qq;  // isotropic per-coordinate covariances
  };
  Moments moments() const;

  /// \int exp(.) dp as an atom in q (dim-dimensional).
  GaussianAtom marginalize_p() const;
};

}  // namespace helmrays::model
