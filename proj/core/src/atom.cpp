#include "helmrays/atom.hpp"

#include <cmath>
#include <stdexcept>

namespace helmrays::model {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2.0 * kPi;

void check_dim(int d) {
  if (d < 1 || d > 3) throw std::invalid_argument("FieldExpr: dimension must be 1..3");
}

void check_atom(const GaussianAtom& a) {
  if (!(a.s.real() > 0.0)) throw std::invalid_argument("GaussianAtom: Re(s) must be > 0");
}

/// 1D moments \int z^n exp(-s z^2/2) dz, n = 0..nmax.
std::vector<Complex> gauss_moments_1d(Complex s, int nmax) {
  std::vector<Complex> m(nmax + 1, Complex(0.0));
  m[0] = std::sqrt(kTwoPi / s);
  if (nmax >= 2) {
    for (int n = 2; n <= nmax; n += 2) m[n] = double(n - 1) / s * m[n - 2];
  }
  return m;
}

}  // namespace

Complex GaussianAtom::eval(const Vec3& x) const {
  Vec3 y = x - center;
  Complex e = -0.5 * s * norm2(y) + kI * dot(mod, x);
  Complex v = amp * std::exp(e);
  if (!poly.is_constant()) return v * poly.eval(x);
  return v * poly.constant_value();
}

Complex FieldExpr::eval(const Vec3& x) const {
  Complex v = 0.0;
  for (const auto& a : atoms) v += a.eval(x);
  return v;
}

FieldExpr gaussian(int dim, Complex amp, double inv_variance, const Vec3& center,
                   const Vec3& mod) {
  check_dim(dim);
  if (!(inv_variance > 0.0)) throw std::invalid_argument("gaussian: inv_variance must be > 0");
  GaussianAtom a;
  a.amp = amp;
  a.s = inv_variance;
  a.center = center;
  a.mod = mod;
  FieldExpr f;
  f.dim = dim;
  f.atoms.push_back(a);
  return f;
}

FieldExpr add(const FieldExpr& f, const FieldExpr& g) {
  if (f.dim != g.dim) throw std::invalid_argument("add: dimension mismatch");
  FieldExpr r = f;
  r.atoms.insert(r.atoms.end(), g.atoms.begin(), g.atoms.end());
  return r;
}

FieldExpr scale(const FieldExpr& f, Complex c) {
  FieldExpr r = f;
  for (auto& a : r.atoms) a.amp *= c;
  return r;
}

FieldExpr shift(const FieldExpr& f, const Vec3& t) {
  FieldExpr r = f;
  for (auto& a : r.atoms) {
    a.amp *= std::exp(-kI * dot(a.mod, t));
    a.center = a.center + t;
    if (!a.poly.is_constant()) {
      CVec3 mt = {-Complex(t[0]), -Complex(t[1]), -Complex(t[2])};
      a.poly = a.poly.scaled_shifted(1.0, mt);
    }
  }
  return r;
}

FieldExpr reflect(const FieldExpr& f) {
  FieldExpr r = f;
  for (auto& a : r.atoms) {
    a.center = -a.center;
    a.mod = -a.mod;
    a.poly = a.poly.reflected();
  }
  return r;
}

FieldExpr conj(const FieldExpr& f) {
  FieldExpr r = f;
  for (auto& a : r.atoms) {
    a.amp = std::conj(a.amp);
    a.s = std::conj(a.s);
    a.mod = -a.mod;
    a.poly = a.poly.conjugated();
  }
  return r;
}

GaussianAtom atom_from_quadratic(Complex amp, Complex a, const CVec3& b, Complex c) {
  if (!(a.real() > 0.0)) throw std::invalid_argument("atom_from_quadratic: Re(a) <= 0");
  GaussianAtom r;
  r.s = a;
  for (int j = 0; j < 3; ++j) {
    r.center[j] = b[j].real() / a.real();
    r.mod[j] = b[j].imag() - a.imag() * r.center[j];
  }
  Complex m2 = norm2(r.center);
  r.amp = amp * std::exp(c + 0.5 * a * m2);
  return r;
}

FieldExpr multiply(const FieldExpr& f, const FieldExpr& g) {
  if (f.dim != g.dim) throw std::invalid_argument("multiply: dimension mismatch");
  FieldExpr r;
  r.dim = f.dim;
  for (const auto& a : f.atoms) {
    for (const auto& b : g.atoms) {
      Complex s = a.s + b.s;
      CVec3 lin{};
      for (int j = 0; j < 3; ++j)
        lin[j] = a.s * a.center[j] + b.s * b.center[j] + kI * (a.mod[j] + b.mod[j]);
      Complex c = -0.5 * (a.s * norm2(a.center) + b.s * norm2(b.center));
      GaussianAtom m = atom_from_quadratic(a.amp * b.amp, s, lin, c);
      m.poly = a.poly * b.poly;
      r.atoms.push_back(m);
    }
  }
  return r;
}

FieldExpr multiply_poly(const FieldExpr& f, const Poly& p) {
  FieldExpr r = f;
  for (auto& a : r.atoms) a.poly = a.poly * p;
  return r;
}

FieldExpr derivative(const FieldExpr& f, int axis) {
  if (axis < 0 || axis >= f.dim) throw std::invalid_argument("derivative: bad axis");
  FieldExpr r = f;
  for (auto& a : r.atoms) {
    // d/dx_j [P e^G] = (P' + P G') e^G, G' = -s(x_j - m_j) + i k_j
    Poly gprime = Poly::variable(axis) * (-a.s);
    gprime.add_term({0, 0, 0}, a.s * a.center[axis] + kI * a.mod[axis]);
    a.poly = a.poly.derivative(axis) + a.poly * gprime;
  }
  return r;
}

FieldExpr dilate_arg(const FieldExpr& f, double c) {
  if (!(c > 0.0)) throw std::invalid_argument("dilate_arg: c must be > 0");
  FieldExpr r = f;
  for (auto& a : r.atoms) {
    a.s = a.s * c * c;
    a.center = (1.0 / c) * a.center;
    a.mod = c * a.mod;
    if (!a.poly.is_constant()) a.poly = a.poly.scaled_shifted(c, CVec3{});
  }
  return r;
}

FieldExpr scale_concentrate(const FieldExpr& f, double eps, const Vec3& q) {
  if (!(eps > 0.0)) throw std::invalid_argument("scale_concentrate: eps must be > 0");
  FieldExpr r = f;
  double epow = std::pow(eps, -f.dim);
  for (auto& a : r.atoms) {
    a.amp *= epow * std::exp(-kI * dot(a.mod, q) / eps);
    a.s = a.s / (eps * eps);
    a.center = q + eps * a.center;
    a.mod = (1.0 / eps) * a.mod;
    if (!a.poly.is_constant()) {
      CVec3 b = {-q[0] / eps, -q[1] / eps, -q[2] / eps};
      a.poly = a.poly.scaled_shifted(1.0 / eps, b);
    }
  }
  return r;
}

FieldExpr fourier_transform(const FieldExpr& f) {
  FieldExpr r;
  r.dim = f.dim;
  for (const auto& a : f.atoms) {
    check_atom(a);
    // Transform of the pure Gaussian part: new parameters
    //   s' = 1/s, center' = mod, mod' = -center,
    //   amp' = amp (2pi)^{-d} (2pi/s)^{d/2} e^{i center.mod}.
    GaussianAtom g;
    g.s = 1.0 / a.s;
    g.center = a.mod;
    g.mod = -a.center;
    g.amp = a.amp * std::pow(kTwoPi, -f.dim) * std::pow(kTwoPi / a.s, 0.5 * f.dim) *
            std::exp(kI * dot(a.center, a.mod));
    if (a.poly.is_constant()) {
      g.amp *= a.poly.constant_value();
      r.atoms.push_back(g);
      continue;
    }
    // F(x^alpha u) = (i d/dxi)^alpha F(u): apply the polynomial as a
    // derivative operator to the transformed Gaussian.
    Poly total;  // accumulates the resulting prefactor
    for (const auto& [e, c] : a.poly.terms()) {
      Poly q = Poly::constant(c);
      for (int axis = 0; axis < 3; ++axis) {
        for (int k = 0; k < e[axis]; ++k) {
          // i d/dxi_axis applied to q * exp(G):
          //   -> i q' + q (i G'), G' = -s'(xi-m') + i k'.
          Poly gp = Poly::variable(axis) * (-g.s);
          gp.add_term({0, 0, 0}, g.s * g.center[axis] + kI * g.mod[axis]);
          q = q.derivative(axis) * kI + q * (gp * kI);
        }
      }
      total = total + q;
    }
    g.poly = total;
    r.atoms.push_back(g);
  }
  return r;
}

FieldExpr inverse_fourier_transform(const FieldExpr& g) {
  FieldExpr r = fourier_transform(g);
  r = reflect(r);
  return scale(r, std::pow(kTwoPi, g.dim));
}

Complex integrate(const FieldExpr& f) {
  Complex total = 0.0;
  for (const auto& a : f.atoms) {
    check_atom(a);
    // Shift to the center, complete the square in the modulation:
    //   int P(x) e^{-s|x-m|^2/2 + i k.x} dx
    //     = e^{i k.m - |k|^2/(2s)} int P(m + i k/s + z) e^{-s|z|^2/2} dz.
    double k2 = 0.0, km = 0.0;
    for (int j = 0; j < f.dim; ++j) {
      k2 += a.mod[j] * a.mod[j];
      km += a.mod[j] * a.center[j];
    }
    Complex pre = a.amp * std::exp(kI * km - 0.5 * k2 / a.s);
    Complex base = 1.0;
    auto m0 = std::sqrt(kTwoPi / a.s);
    for (int j = 0; j < f.dim; ++j) base *= m0;
    if (a.poly.is_constant()) {
      total += pre * a.poly.constant_value() * base;
      continue;
    }
    CVec3 c{};
    for (int j = 0; j < 3; ++j) c[j] = a.center[j] + kI * a.mod[j] / a.s;
    Poly shifted = a.poly.scaled_shifted(1.0, c);
    auto mom = gauss_moments_1d(a.s, shifted.degree());
    Complex sum = 0.0;
    for (const auto& [e, coef] : shifted.terms()) {
      Complex m = coef;
      bool odd = false;
      for (int j = 0; j < 3; ++j) {
        if (j >= f.dim) {
          if (e[j] != 0) odd = true;
          continue;
        }
        if (e[j] % 2 == 1) {
          odd = true;
          break;
        }
        m *= mom[e[j]] / mom[0];
      }
      if (!odd) sum += m;
    }
    total += pre * base * sum;
  }
  return total;
}

Complex inner_product(const FieldExpr& f, const FieldExpr& g) {
  return integrate(multiply(f, conj(g)));
}

namespace {
double poly_abs_bound(const Poly& p, double r) {
  double b = 0.0;
  double rr = std::max(r, 1.0);
  for (const auto& [e, c] : p.terms()) b += std::abs(c) * std::pow(rr, e[0] + e[1] + e[2]);
  return b;
}
}  // namespace

double abs_envelope_at_radius(const FieldExpr& f, double r) {
  double v = 0.0;
  for (const auto& a : f.atoms) {
    double mnorm = norm(a.center);
    double u = std::max(0.0, r - mnorm);
    v += std::abs(a.amp) * poly_abs_bound(a.poly, r) * std::exp(-0.5 * a.s.real() * u * u);
  }
  return v;
}

double l2_tail_bound(const FieldExpr& f, double R) {
  // Upper Riemann sum of 4 pi r^2 env(r)^2 on a geometric grid; env decreases
  // beyond the largest center once the Gaussian dominates the poly growth.
  double total = 0.0;
  double r = R;
  const double grow = 1.05;
  for (int i = 0; i < 4000; ++i) {
    double r2 = r * grow;
    double env = std::max(abs_envelope_at_radius(f, r), abs_envelope_at_radius(f, r2));
    double shell = 4.0 * kPi * r2 * r2 * env * env * (r2 - r);
    total += shell;
    if (shell < 1e-280 && i > 8) break;
    r = r2;
  }
  return total;
}

void PairQuadratic::absorb(const GaussianAtom& atom, double lp, double lq, const Vec3& t) {
  if (!atom.poly.is_constant())
    throw std::invalid_argument("PairQuadratic::absorb: plain atoms only");
  amp *= atom.amp * atom.poly.constant_value();
  A += atom.s * lp * lp;
  B += atom.s * lq * lq;
  C += atom.s * lp * lq;
  Vec3 tm = t - atom.center;
  for (int j = 0; j < dim; ++j) {
    bp[j] += -atom.s * lp * tm[j] + kI * lp * atom.mod[j];
    bq[j] += -atom.s * lq * tm[j] + kI * lq * atom.mod[j];
  }
  c0 += -0.5 * atom.s * norm2(tm) + kI * dot(atom.mod, t);
}

namespace {
void check_pair_pd(Complex A, Complex B, Complex C) {
  if (!(A.real() > 0.0) || !(A.real() * B.real() - C.real() * C.real() > 0.0))
    throw std::runtime_error("PairQuadratic: real part not positive definite");
}
}  // namespace

Complex PairQuadratic::integrate() const {
  check_pair_pd(A, B, C);
  Complex det = A * B - C * C;
  Complex quad = 0.0;
  for (int j = 0; j < dim; ++j)
    quad += B * bp[j] * bp[j] - 2.0 * C * bp[j] * bq[j] + A * bq[j] * bq[j];
  quad /= 2.0 * det;
  Complex base = std::pow(kTwoPi, dim) * std::pow(det, -0.5 * dim);
  return amp * base * std::exp(c0 + quad);
}

PairQuadratic::Moments PairQuadratic::moments() const {
  check_pair_pd(A, B, C);
  Complex det = A * B - C * C;
  Moments m;
  for (int j = 0; j < 3; ++j) {
    m.mu_p[j] = (B * bp[j] - C * bq[j]) / det;
    m.mu_q[j] = (A * bq[j] - C * bp[j]) / det;
  }
  m.cov_pp = B / det;
  m.cov_qq = A / det;
  m.cov_pq = -C / det;
  return m;
}

GaussianAtom PairQuadratic::marginalize_p() const {
  if (!(A.real() > 0.0)) throw std::runtime_error("marginalize_p: Re(A) <= 0");
  Complex a_new = B - C * C / A;
  CVec3 b_new{};
  Complex c_new = c0;
  for (int j = 0; j < dim; ++j) {
    b_new[j] = bq[j] - (C / A) * bp[j];
    c_new += bp[j] * bp[j] / (2.0 * A);
  }
  Complex base = std::pow(kTwoPi / A, 0.5 * dim);
  return atom_from_quadratic(amp * base, a_new, b_new, c_new);
}

}  // namespace helmrays::model
