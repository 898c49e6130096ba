#include "helmrays/helmholtz.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <sstream>

#include "helmrays/mc.hpp"
#include "helmrays/quadrature.hpp"

namespace helmrays::helmholtz {

namespace {

constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2.0 * kPi;

FieldExpr modulate(const FieldExpr& f, const Vec3& k0) {
  FieldExpr r = f;
  for (auto& a : r.atoms) a.mod = a.mod + k0;
  return r;
}

bool is_radial(const FieldExpr& f) {
  for (const auto& a : f.atoms)
    if (!a.plain() || norm(a.center) != 0.0 || norm(a.mod) != 0.0) return false;
  return true;
}

/// sinhc ladder: S0 = sinh(rho)/rho, S1 = S0'/rho, S2 = S1'/rho, stable in
/// rho^2 (all three are entire and even).
void sinhc_ladder(Complex rho2, Complex& s0, Complex& s1, Complex& s2) {
  if (std::abs(rho2) < 1.0) {
    s0 = 0.0;
    s1 = 0.0;
    s2 = 0.0;
    // sum_{n>=0} rho^{2n}/(2n+1)!  and its scaled derivatives
    Complex pw = 1.0;
    for (int n = 0; n <= 16; ++n) {
      double fact = 1.0;
      for (int k = 2; k <= 2 * n + 1; ++k) fact *= k;
      Complex term = pw / fact;
      s0 += term;
      if (n >= 1) s1 += double(2 * n) * (pw / rho2) / fact;
      if (n >= 2) s2 += double(2 * n) * double(2 * n - 2) * (pw / (rho2 * rho2)) / fact;
      pw *= rho2;
      if (std::abs(term) < 1e-20) break;
    }
    return;
  }
  Complex rho = std::sqrt(rho2);
  Complex sh = std::sinh(rho), ch = std::cosh(rho);
  s0 = sh / rho;
  s1 = (rho * ch - sh) / (rho2 * rho);
  s2 = (rho2 * sh - 3.0 * rho * ch + 3.0 * sh) / (rho2 * rho2 * rho);
}

struct AtomAngular {
  // per-atom data for the angular reduction
  Complex amp;                 // amplitude including constant poly factor
  Complex s;                   // Gaussian inverse variance
  double c2 = 0.0;             // |center|^2
  CVec3 w1;                    // w(r) = r * w1, w1 = s*center + i*mod
  Complex zeta2{0.0};          // w1 . w1
  int degree = 0;              // polynomial degree (<= 2 for closed path)
  Complex p0{0.0};             // constant coefficient
  CVec3 p1{};                  // linear coefficients
  std::array<std::array<Complex, 3>, 3> p2{};  // symmetric quadratic coefficients
  const model::GaussianAtom* atom = nullptr;   // fallback path
};

AtomAngular prepare_atom(const model::GaussianAtom& a) {
  AtomAngular d;
  d.amp = a.amp;
  d.s = a.s;
  d.c2 = norm2(a.center);
  for (int j = 0; j < 3; ++j) d.w1[j] = a.s * a.center[j] + kI * a.mod[j];
  d.zeta2 = cdot(d.w1, d.w1);
  d.degree = a.poly.degree();
  d.atom = &a;
  if (d.degree <= 2) {
    for (const auto& [e, c] : a.poly.terms()) {
      int tot = e[0] + e[1] + e[2];
      if (tot == 0) {
        d.p0 += c;
      } else if (tot == 1) {
        for (int j = 0; j < 3; ++j)
          if (e[j] == 1) d.p1[j] += c;
      } else {
        if (e[0] == 2)
          d.p2[0][0] += c;
        else if (e[1] == 2)
          d.p2[1][1] += c;
        else if (e[2] == 2)
          d.p2[2][2] += c;
        else {
          int j = -1, k = -1;
          for (int t = 0; t < 3; ++t)
            if (e[t] == 1) (j < 0 ? j : k) = t;
          d.p2[j][k] += 0.5 * c;
          d.p2[k][j] += 0.5 * c;
        }
      }
    }
  }
  return d;
}

/// Angular integral over S^2 of P(r w) e^{w(r).omega} dsigma(omega).
Complex angular_moment(const AtomAngular& d, double r) {
  Complex s0, s1, s2;
  sinhc_ladder(r * r * d.zeta2, s0, s1, s2);
  CVec3 w = {r * d.w1[0], r * d.w1[1], r * d.w1[2]};
  Complex val = d.p0 * s0;
  if (d.degree >= 1) {
    Complex lin = 0.0;
    for (int j = 0; j < 3; ++j) lin += d.p1[j] * w[j];
    val += r * s1 * lin;
  }
  if (d.degree >= 2) {
    Complex quad = 0.0, tr = 0.0;
    for (int j = 0; j < 3; ++j) {
      tr += d.p2[j][j];
      for (int k = 0; k < 3; ++k) quad += d.p2[j][k] * w[j] * w[k];
    }
    val += r * r * (s2 * quad + s1 * tr);
  }
  return 4.0 * kPi * val;
}

double atom_beta(const AtomAngular& d) {
  // oscillation frequency of e^{r zeta} terms
  Complex zeta = std::sqrt(d.zeta2);
  return std::abs(zeta.imag()) + std::abs(zeta.real());
}

}  // namespace

SpectralSolution solve_full(const Scenario& s, double eps) {
  SpectralSolution u;
  u.dim = s.d;
  u.eps = eps;
  u.kind = SolutionKind::full;
  FieldExpr src = model::add(model::scale_concentrate(s.S0, eps, Vec3{0, 0, 0}),
                             model::scale_concentrate(s.S1, eps, s.q1));
  u.numerator = model::fourier_transform(src);
  u.denom = {1.0 / (eps * eps), s.alpha(eps) / eps};
  return u;
}

SpectralSolution solve_full_single(const Scenario& s, double eps, int which) {
  SpectralSolution u;
  u.dim = s.d;
  u.eps = eps;
  u.kind = SolutionKind::full;
  FieldExpr src = which == 0 ? model::scale_concentrate(s.S0, eps, Vec3{0, 0, 0})
                             : model::scale_concentrate(s.S1, eps, s.q1);
  u.numerator = model::fourier_transform(src);
  u.denom = {1.0 / (eps * eps), s.alpha(eps) / eps};
  return u;
}

SpectralSolution solve_rescaled(const Scenario& s, double eps, int center) {
  SpectralSolution w;
  w.dim = s.d;
  w.eps = eps;
  w.kind = center == 0 ? SolutionKind::rescaled0 : SolutionKind::rescaled1;
  Vec3 qe = (1.0 / eps) * s.q1;
  FieldExpr src = center == 0 ? model::add(s.S0, model::shift(s.S1, qe))
                              : model::add(model::shift(s.S0, -qe), s.S1);
  w.numerator = model::fourier_transform(src);
  w.denom = {1.0, s.damping(eps)};
  return w;
}

SpectralSolution solve_rescaled_single(const Scenario& s, double eps, int center, int which) {
  SpectralSolution w;
  w.dim = s.d;
  w.eps = eps;
  w.kind = center == 0 ? SolutionKind::rescaled0 : SolutionKind::rescaled1;
  Vec3 qe = (1.0 / eps) * s.q1;
  FieldExpr src;
  if (which == 0)
    src = center == 0 ? s.S0 : model::shift(s.S0, -qe);
  else
    src = center == 0 ? model::shift(s.S1, qe) : s.S1;
  w.numerator = model::fourier_transform(src);
  w.denom = {1.0, s.damping(eps)};
  return w;
}

SpectralSolution resolvent_apply(const FieldExpr& S, double eta) {
  if (!(eta > 0.0)) throw std::invalid_argument("resolvent_apply: eta must be positive");
  SpectralSolution w;
  w.dim = S.dim;
  w.kind = SolutionKind::plain;
  w.numerator = model::fourier_transform(S);
  w.denom = {1.0, eta};
  return w;
}

namespace {

Complex integrate_resolvent_1d(const FieldExpr& F, const Denominator& D, const EvalQuad& q) {
  Complex pole = D.pole();
  double beta = 0.0, R = 1.0;
  for (const auto& a : F.atoms) {
    beta = std::max(beta, std::abs(a.mod[0]) + std::abs(a.s.imag()) * std::abs(a.center[0]));
    R = std::max(R, std::abs(a.center[0]) + q.sigmas / std::sqrt(a.s.real()));
  }
  R = std::max(R, pole.real() + 2.0);
  quad::PoleOscSpec spec{0.0, R, pole.real(), std::max(std::abs(pole.imag()), 1e-300), beta,
                         q.level};
  auto rule = quad::pole_osc_rule(spec);
  std::vector<Complex> vals(rule.size());
  for (std::size_t i = 0; i < rule.size(); ++i) {
    double r = rule.nodes[i];
    vals[i] = rule.weights[i] * (F.eval({r, 0, 0}) + F.eval({-r, 0, 0})) / D(r);
  }
  return quad::pairwise_sum(vals);
}

}  // namespace

Complex integrate_over_resolvent(const FieldExpr& F, const Denominator& D, const EvalQuad& q) {
  if (F.atoms.empty()) return 0.0;
  if (!(D.c1 > 0.0)) throw std::invalid_argument("resolvent: c1 (damping) must be positive");
  if (F.dim == 1) return integrate_resolvent_1d(F, D, q);
  if (F.dim != 3) throw std::invalid_argument("resolvent integrals support d in {1,3}");

  Complex pole = D.pole();
  std::vector<AtomAngular> atoms;
  atoms.reserve(F.atoms.size());
  double beta = 0.0, R = 1.0;
  for (const auto& a : F.atoms) {
    AtomAngular d = prepare_atom(a);
    beta = std::max(beta, atom_beta(d));
    R = std::max(R, norm(a.center) + q.sigmas / std::sqrt(a.s.real()));
    atoms.push_back(d);
  }
  R = std::max(R, pole.real() + 2.0);

  quad::PoleOscSpec spec{0.0, R, pole.real(), std::max(std::abs(pole.imag()), 1e-300), beta,
                         q.level};
  auto rule = quad::pole_osc_rule(spec);
  if (rule.size() > q.max_nodes) {
    std::ostringstream os;
    os << "resolvent integral: oscillation budget exceeded (" << rule.size() << " nodes, beta="
       << beta << "); the frequency scale is too large for the requested accuracy";
    throw OscillationBudgetError(os.str());
  }

  // slow-path guard for high-degree polynomials
  for (const auto& d : atoms)
    if (d.degree > 2 && beta * R > 40.0)
      throw std::invalid_argument(
          "resolvent integral: polynomial degree > 2 with large oscillation is unsupported");
  const auto& sph = quad::sphere_rule(3, 14);

  std::vector<Complex> vals(rule.size());
  for (std::size_t i = 0; i < rule.size(); ++i) {
    double r = rule.nodes[i];
    Complex num = 0.0;
    for (const auto& d : atoms) {
      Complex env = d.amp * std::exp(-0.5 * d.s * (r * r + d.c2));
      Complex ang;
      if (d.degree <= 2) {
        ang = angular_moment(d, r);
      } else {
        ang = 0.0;
        for (std::size_t k = 0; k < sph.nodes.size(); ++k) {
          const Vec3& om = sph.nodes[k];
          Complex wom = r * cdot(d.w1, om);
          ang += sph.weights[k] * d.atom->poly.eval(r * om) * std::exp(wom);
        }
      }
      num += env * ang;
    }
    vals[i] = rule.weights[i] * r * r * num / D(r);
  }
  return quad::pairwise_sum(vals);
}

ValueWithError integrate_over_resolvent_err(const FieldExpr& F, const Denominator& D,
                                            const EvalQuad& q) {
  EvalQuad lo = q;
  lo.level = std::max(0, q.level - 1);
  Complex fine = integrate_over_resolvent(F, D, q);
  Complex coarse = integrate_over_resolvent(F, D, lo);
  return {fine, std::abs(fine - coarse)};
}

Complex evaluate(const SpectralSolution& sol, const Vec3& x, const EvalQuad& q) {
  return integrate_over_resolvent(modulate(sol.numerator, x), sol.denom, q);
}

ValueWithError evaluate_err(const SpectralSolution& sol, const Vec3& x, const EvalQuad& q) {
  return integrate_over_resolvent_err(modulate(sol.numerator, x), sol.denom, q);
}

Complex pairing(const SpectralSolution& sol, const FieldExpr& v, const EvalQuad& q) {
  FieldExpr F = model::multiply(sol.numerator, model::conj(model::fourier_transform(v)));
  F = model::scale(F, std::pow(kTwoPi, sol.dim));
  return integrate_over_resolvent(F, sol.denom, q);
}

ValueWithError pairing_err(const SpectralSolution& sol, const FieldExpr& v, const EvalQuad& q) {
  FieldExpr F = model::multiply(sol.numerator, model::conj(model::fourier_transform(v)));
  F = model::scale(F, std::pow(kTwoPi, sol.dim));
  return integrate_over_resolvent_err(F, sol.denom, q);
}

Complex defining_residual(const SpectralSolution& sol, const Scenario& s, const Vec3& xi) {
  // N(xi) - S^(xi), the source transform rebuilt through dilation/shift
  // theorems on the frequency side rather than the direct x-space chain.
  FieldExpr s0h = model::fourier_transform(s.S0);
  FieldExpr s1h = model::fourier_transform(s.S1);
  Complex shat = 0.0;
  switch (sol.kind) {
    case SolutionKind::full: {
      Complex t0 = s0h.eval(sol.eps * xi);
      Complex t1 = std::exp(-kI * dot(s.q1, xi)) * s1h.eval(sol.eps * xi);
      shat = t0 + t1;
      break;
    }
    case SolutionKind::rescaled0: {
      shat = s0h.eval(xi) + std::exp(-kI * dot(s.q1, xi) / sol.eps) * s1h.eval(xi);
      break;
    }
    case SolutionKind::rescaled1: {
      shat = std::exp(+kI * dot(s.q1, xi) / sol.eps) * s0h.eval(xi) + s1h.eval(xi);
      break;
    }
    case SolutionKind::plain:
      shat = sol.numerator.eval(xi);
      break;
  }
  return sol.numerator.eval(xi) - shat;
}

// ---------------------------------------------------------------------------
// Outgoing solution
// ---------------------------------------------------------------------------

Complex OutgoingSolution::eval_fourier(const Vec3& x, const EvalQuad& q) const {
  return eval_fourier_err(x, q).value;
}

ValueWithError OutgoingSolution::eval_fourier_err(const Vec3& x, const EvalQuad& q) const {
  Complex u1 = evaluate(resolvent_apply(source, eta_base), x, q);
  Complex u2 = evaluate(resolvent_apply(source, 0.5 * eta_base), x, q);
  Complex u3 = evaluate(resolvent_apply(source, 0.25 * eta_base), x, q);
  Complex r1 = 2.0 * u2 - u1;
  Complex r2 = 2.0 * u3 - u2;
  return {(4.0 * r2 - r1) / 3.0, std::abs(r2 - r1) / 3.0};
}

Complex OutgoingSolution::eval_kernel(const Vec3& x, double tol) const {
  return eval_kernel_signed(x, kernel_sign, tol);
}

Complex OutgoingSolution::eval_kernel_signed(const Vec3& x, int sign, double tol) const {
  const Complex isg = kI * double(sign);
  if (radial) {
    double R = norm(x);
    double rmax = 1.0;
    for (const auto& a : source.atoms)
      rmax = std::max(rmax, 10.0 / std::sqrt(a.s.real()));
    auto Sr = [this](double rho) { return source.eval({rho, 0, 0}); };
    if (R < 1e-9) {
      auto r = quad::adaptive_1d(
          [&](double rho) { return rho * Sr(rho) * std::exp(isg * rho); }, 0.0, rmax, tol);
      return -r.value;
    }
    auto f = [&](double rho) {
      return rho * Sr(rho) *
             (std::exp(isg * std::abs(R - rho)) - std::exp(isg * (R + rho)));
    };
    Complex total = 0.0;
    if (R < rmax) {
      total += quad::adaptive_1d(f, 0.0, R, tol).value;
      total += quad::adaptive_1d(f, R, rmax, tol).value;
    } else {
      total += quad::adaptive_1d(f, 0.0, rmax, tol).value;
    }
    // w = (1/(2 i s R)) \int rho S(rho) [e^{is|R-rho|} - e^{is(R+rho)}] drho,
    // consistent with the R -> 0 limit -\int rho S e^{is rho} drho.
    return total / (2.0 * isg * R);
  }
  // Non-radial sources: importance-sampled MC over the source envelope.
  std::vector<double> wts;
  double wsum = 0.0;
  for (const auto& a : source.atoms) {
    double w = std::abs(a.amp) * std::pow(kTwoPi / a.s.real(), 1.5);
    wts.push_back(w);
    wsum += w;
  }
  for (auto& w : wts) w /= wsum;
  auto pdf = [&](const Vec3& y) {
    double p = 0.0;
    for (std::size_t i = 0; i < source.atoms.size(); ++i) {
      const auto& a = source.atoms[i];
      double sr = a.s.real();
      p += wts[i] * std::pow(sr / kTwoPi, 1.5) * std::exp(-0.5 * sr * norm2(y - a.center));
    }
    return p;
  };
  quad::Sampler sampler;
  sampler.k = 3;
  sampler.draw = [&](quad::RngStream& rng, std::vector<double>& v) {
    double u = rng.uniform();
    std::size_t pick = 0;
    double acc = 0.0;
    for (std::size_t i = 0; i < wts.size(); ++i) {
      acc += wts[i];
      if (u <= acc) {
        pick = i;
        break;
      }
      pick = i;
    }
    const auto& a = source.atoms[pick];
    double sig = 1.0 / std::sqrt(a.s.real());
    Vec3 y = {a.center[0] + sig * rng.normal(), a.center[1] + sig * rng.normal(),
              a.center[2] + sig * rng.normal()};
    v = {y[0], y[1], y[2]};
    return pdf(y);
  };
  auto f = [&](const std::vector<double>& v) {
    Vec3 y{v[0], v[1], v[2]};
    double d = norm(x - y);
    if (d < 1e-12) return Complex(0.0);
    return source.eval(y) * std::exp(isg * d) / (4.0 * kPi * d);
  };
  return -mc_integrate(f, sampler, 400000, 777).value;
}

OutgoingSolution solve_outgoing(const FieldExpr& S, double match_tol) {
  if (S.dim != 3) throw std::invalid_argument("solve_outgoing: d = 3 only");
  OutgoingSolution w;
  w.source = S;
  w.radial = is_radial(S);
  if (S.atoms.empty()) return w;
  double scale = 0.0;
  double err_minus = 0.0, err_plus = 0.0;
  for (const Vec3& x : {Vec3{0.9, 0, 0}, Vec3{0.0, 2.3, 0.0}}) {
    Complex ref = w.eval_fourier(x);
    scale += std::abs(ref);
    err_minus += std::abs(w.eval_kernel_signed(x, -1) - ref);
    err_plus += std::abs(w.eval_kernel_signed(x, +1) - ref);
  }
  w.kernel_sign = err_minus <= err_plus ? -1 : +1;
  if (std::min(err_minus, err_plus) > match_tol * std::max(scale, 1e-12))
    throw std::runtime_error(
        "solve_outgoing: neither kernel phase sign matches the damped resolvent limit");
  return w;
}

ValueWithError outgoing_pairing(const OutgoingSolution& w, const FieldExpr& v,
                                const EvalQuad& q) {
  Complex u1 = pairing(resolvent_apply(w.source, w.eta_base), v, q);
  Complex u2 = pairing(resolvent_apply(w.source, 0.5 * w.eta_base), v, q);
  Complex u3 = pairing(resolvent_apply(w.source, 0.25 * w.eta_base), v, q);
  Complex r1 = 2.0 * u2 - u1;
  Complex r2 = 2.0 * u3 - u2;
  return {(4.0 * r2 - r1) / 3.0, std::abs(r2 - r1) / 3.0};
}

SommerfeldResidual sommerfeld_residual(const std::function<Complex(const Vec3&)>& w, double r,
                                       int sphere_order, double h) {
  const auto& sph = quad::sphere_rule(3, sphere_order);
  SommerfeldResidual res;
  double wmax = 0.0;
  for (std::size_t k = 0; k < sph.nodes.size(); ++k) {
    const Vec3& om = sph.nodes[k];
    Complex wp = w((r + h) * om);
    Complex wm = w((r - h) * om);
    Complex w0 = w(r * om);
    Complex dr = (wp - wm) / (2.0 * h);
    res.plus += sph.weights[k] * std::norm(dr + kI * w0) * r * r;
    res.minus += sph.weights[k] * std::norm(dr - kI * w0) * r * r;
    wmax = std::max(wmax, std::abs(w0));
  }
  res.plus /= r;
  res.minus /= r;
  // central-difference noise floor: truncation h^2/6 |w'''| + roundoff eps/h
  res.fd_noise = wmax * (h * h / 6.0 + 1e-15 / h);
  return res;
}

// ---------------------------------------------------------------------------
// Radial profiles
// ---------------------------------------------------------------------------

RadialProfileField::RadialProfileField(std::function<Complex(double)> radial, const Vec3& center,
                                       double r_hi, int n_samples, double eta)
    : center_(center), r_hi_(r_hi), eta_(eta) {
  if (n_samples < 8) throw std::invalid_argument("RadialProfileField: need >= 8 samples");
  dr_ = r_hi / (n_samples - 1);
  samples_.resize(n_samples);
  for (int i = 0; i < n_samples; ++i) samples_[i] = radial(i * dr_);
  // natural cubic spline second derivatives (tridiagonal)
  int n = n_samples;
  deriv2_.assign(n, Complex(0.0));
  std::vector<Complex> u(n, Complex(0.0));
  for (int i = 1; i < n - 1; ++i) {
    Complex p = 0.5 * deriv2_[i - 1] + 2.0;
    deriv2_[i] = -0.5 / p;
    Complex rhs = (samples_[i + 1] - 2.0 * samples_[i] + samples_[i - 1]) * (3.0 / (dr_ * dr_));
    u[i] = (rhs - 0.5 * u[i - 1]) / p;
  }
  for (int i = n - 2; i >= 1; --i) deriv2_[i] = deriv2_[i] * deriv2_[i + 1] + u[i];
}

Complex RadialProfileField::at_radius(double r) const {
  if (r <= 0.0) return samples_.front();
  if (r >= r_hi_) {
    // outgoing far-field continuation: 1/r amplitude, e^{-ir} phase, damping
    double d = r - r_hi_;
    return samples_.back() * (r_hi_ / r) * std::exp(Complex(-0.5 * eta_ * d, -d));
  }
  int i = static_cast<int>(r / dr_);
  i = std::min<int>(i, samples_.size() - 2);
  double a = (dr_ * (i + 1) - r) / dr_;
  double b = 1.0 - a;
  return a * samples_[i] + b * samples_[i + 1] +
         ((a * a * a - a) * deriv2_[i] + (b * b * b - b) * deriv2_[i + 1]) * (dr_ * dr_) / 6.0;
}

Complex RadialProfileField::operator()(const Vec3& x) const { return at_radius(norm(x - center_)); }

norms::EvaluableField rescaled_profile_field(const Scenario& s, double eps, int center,
                                             double r_hi, const EvalQuad& q) {
  Vec3 qe = (1.0 / eps) * s.q1;
  Vec3 near_center = center == 0 ? Vec3{0, 0, 0} : qe;
  Vec3 far_center = center == 0 ? qe : Vec3{0, 0, 0};
  const FieldExpr& near_src = center == 0 ? s.S0 : s.S1;
  const FieldExpr& far_src = center == 0 ? s.S1 : s.S0;

  norms::EvaluableField out;
  out.dim = 3;
  if (!is_radial(near_src) || !is_radial(far_src)) {
    SpectralSolution sol = solve_rescaled(s, eps, center);
    out.eval = [sol, q](const Vec3& x) { return evaluate(sol, x, q); };
  } else {
    double eta = s.damping(eps);
    SpectralSolution near_sol = resolvent_apply(near_src, eta);
    SpectralSolution far_sol = resolvent_apply(far_src, eta);
    double far_hi = r_hi + norm(qe) + 1.0;
    int n_near = std::max<int>(64, static_cast<int>(r_hi / 0.08));
    int n_far = std::max<int>(64, static_cast<int>(far_hi / 0.08));
    auto near_prof = std::make_shared<RadialProfileField>(
        [&](double r) { return evaluate(near_sol, {r, 0, 0}, q); }, near_center, r_hi + 1.0,
        n_near, eta);
    auto far_prof = std::make_shared<RadialProfileField>(
        [&](double r) { return evaluate(far_sol, {r, 0, 0}, q); }, far_center, far_hi, n_far,
        eta);
    out.eval = [near_prof, far_prof](const Vec3& x) {
      return (*near_prof)(x) + (*far_prof)(x);
    };
  }
  out.decay.kind = norms::DecayMeta::Kind::power;
  out.decay.rate = 1.0;
  out.decay.radius0 = 1.0;
  out.decay.amplitude = std::abs(out.eval({1.0, 0, 0})) + std::abs(out.eval({0, 1.0, 0}));
  return out;
}

}  // namespace helmrays::helmholtz
