#include "helmrays/wigner.hpp"

#include <cmath>
#include <stdexcept>

#include "helmrays/mc.hpp"
#include "helmrays/quadrature.hpp"

namespace helmrays::wigner {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2.0 * kPi;

double sup_amp(const FieldExpr& f) {
  double s = 0.0;
  for (const auto& a : f.atoms) s += std::abs(a.amp);
  return s;
}

double max_on_shell(const FieldExpr& f, double r) {
  const auto& sph = quad::sphere_rule(f.dim == 2 ? 2 : 3, 8);
  double m = 0.0;
  if (f.dim == 1) return std::max(std::abs(f.eval({r, 0, 0})), std::abs(f.eval({-r, 0, 0})));
  for (const auto& om : sph.nodes) m = std::max(m, std::abs(f.eval(r * om)));
  return m;
}
}  // namespace

Observable make_observable(const FieldExpr& phi, const FieldExpr& psi, std::string id) {
  if (phi.dim != psi.dim) throw std::invalid_argument("observable: factor dimension mismatch");
  Observable a;
  a.phi = phi;
  a.psi = psi;
  a.id = std::move(id);
  double sup = sup_amp(psi);
  if (sup > 0.0) {
    double near_sphere = 0.0;
    for (double r : {0.85, 0.9, 0.95, 1.0, 1.05, 1.1, 1.15})
      near_sphere = std::max(near_sphere, max_on_shell(psi, r));
    a.off_sphere = near_sphere < 1e-10 * sup;
    double near_zero = 0.0;
    for (double r : {0.0, 0.05, 0.1, 0.15}) near_zero = std::max(near_zero, max_on_shell(psi, r));
    a.off_zero_frequency = near_zero < 1e-10 * sup;
  }
  return a;
}

std::vector<Observable> xi_dot_grad(const Observable& a) {
  std::vector<Observable> parts;
  for (int j = 0; j < a.phi.dim; ++j) {
    Observable c;
    c.phi = model::derivative(a.phi, j);
    c.psi = model::multiply_poly(a.psi, model::Poly::variable(j, a.psi.dim));
    c.id = a.id + ".grad" + std::to_string(j);
    parts.push_back(c);
  }
  return parts;
}

bool observable_is_real(const Observable& a) {
  quad::RngStream rng(404);
  for (int t = 0; t < 12; ++t) {
    Vec3 x{2.0 * rng.uniform() - 1.0, 2.0 * rng.uniform() - 1.0, 2.0 * rng.uniform() - 1.0};
    for (int j = a.phi.dim; j < 3; ++j) x[j] = 0.0;
    if (std::abs(a.phi.eval(x).imag()) > 1e-12 * (1.0 + std::abs(a.phi.eval(x)))) return false;
    if (std::abs(a.psi.eval(x).imag()) > 1e-12 * (1.0 + std::abs(a.psi.eval(x)))) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Exact pairing for closed-form fields
// ---------------------------------------------------------------------------

namespace {

/// Affine image of an atom's (degree <= 1) polynomial under arg = lp*p+lq*q+t.
struct LinFactor {
  Complex c0{0.0};
  CVec3 cp{}, cq{};
  bool is_one = true;
};

LinFactor lin_factor(const model::GaussianAtom& a, double lp, double lq, const Vec3& t) {
  LinFactor f;
  if (a.plain()) {
    f.c0 = a.poly.constant_value();
    f.is_one = true;
    return f;
  }
  if (a.poly.degree() > 1)
    throw std::invalid_argument("wigner exact pairing: polynomial degree > 1 per factor");
  f.is_one = false;
  for (const auto& [e, c] : a.poly.terms()) {
    int tot = e[0] + e[1] + e[2];
    if (tot == 0) {
      f.c0 += c;
    } else {
      for (int j = 0; j < 3; ++j)
        if (e[j] == 1) {
          f.c0 += c * t[j];
          f.cp[j] += c * lp;
          f.cq[j] += c * lq;
        }
    }
  }
  return f;
}

}  // namespace

Complex wigner_pairing_exact(const FieldExpr& u, const FieldExpr& v, const Observable& a,
                             double eps) {
  const int d = u.dim;
  FieldExpr uh = model::fourier_transform(u);
  FieldExpr vhc = model::conj(model::fourier_transform(v));
  FieldExpr phc = model::conj(model::fourier_transform(a.phi));
  FieldExpr psc = model::conj(a.psi);
  Complex total = 0.0;
  struct Slot {
    const model::GaussianAtom* atom;
    double lp, lq;
    Vec3 t;
  };
  for (const auto& au : uh.atoms)
    for (const auto& av : vhc.atoms)
      for (const auto& ap : phc.atoms)
        for (const auto& as : psc.atoms) {
          std::array<Slot, 4> slots = {Slot{&au, 1.0, 0.0, {0, 0, 0}},
                                       Slot{&av, 0.0, 1.0, {0, 0, 0}},
                                       Slot{&ap, 1.0, -1.0, {0, 0, 0}},
                                       Slot{&as, 0.5 * eps, 0.5 * eps, {0, 0, 0}}};
          model::PairQuadratic pq;
          pq.dim = d;
          std::vector<LinFactor> lins;
          for (const auto& s : slots) {
            model::GaussianAtom plain = *s.atom;
            plain.poly = model::Poly::constant(1.0);
            pq.absorb(plain, s.lp, s.lq, s.t);
            LinFactor lf = lin_factor(*s.atom, s.lp, s.lq, s.t);
            if (!lf.is_one) lins.push_back(lf);
            else pq.amp *= lf.c0;
          }
          if (lins.size() > 2)
            throw std::invalid_argument("wigner exact pairing: more than two linear factors");
          Complex base = pq.integrate();
          if (lins.empty()) {
            total += base;
            continue;
          }
          auto mom = pq.moments();
          auto mean_of = [&](const LinFactor& lf) {
            Complex m = lf.c0;
            for (int j = 0; j < d; ++j) m += lf.cp[j] * mom.mu_p[j] + lf.cq[j] * mom.mu_q[j];
            return m;
          };
          if (lins.size() == 1) {
            total += base * mean_of(lins[0]);
          } else {
            Complex cov = 0.0;
            for (int j = 0; j < d; ++j)
              cov += lins[0].cp[j] * lins[1].cp[j] * mom.cov_pp +
                     (lins[0].cp[j] * lins[1].cq[j] + lins[0].cq[j] * lins[1].cp[j]) *
                         mom.cov_pq +
                     lins[0].cq[j] * lins[1].cq[j] * mom.cov_qq;
            total += base * (mean_of(lins[0]) * mean_of(lins[1]) + cov);
          }
        }
  return std::pow(kTwoPi, d) * total;
}

Complex wigner_pairing_direct_1d(const FieldExpr& u, const FieldExpr& v, const Observable& a,
                                 double eps, int n, double half) {
  if (u.dim != 1) throw std::invalid_argument("direct oracle is 1D");
  FieldExpr psck = model::conj(model::inverse_fourier_transform(a.psi));
  FieldExpr phc = model::conj(a.phi);
  auto q = quad::gauss_legendre_on(n, -half, half);
  Complex s = 0.0;
  for (std::size_t i = 0; i < q.size(); ++i) {
    double x = q.nodes[i];
    Complex phx = phc.eval({x, 0, 0});
    if (std::abs(phx) < 1e-300) continue;
    Complex row = 0.0;
    for (std::size_t j = 0; j < q.size(); ++j) {
      double y = q.nodes[j];
      row += q.weights[j] * u.eval({x + 0.5 * eps * y, 0, 0}) *
             std::conj(v.eval({x - 0.5 * eps * y, 0, 0})) * psck.eval({y, 0, 0});
    }
    s += q.weights[i] * phx * row;
  }
  return s / kTwoPi;
}

// ---------------------------------------------------------------------------
// MC pairing for solution pairs
// ---------------------------------------------------------------------------

namespace {

struct McGeometry {
  double pole_re, pole_w, r_hi;
  double psi_re, psi_w;          // radial support of psi in p-units
  std::vector<double> h_w;       // mixture weights
  std::vector<Vec3> h_mean;
  std::vector<double> h_sigma;
};

McGeometry mc_geometry(const SpectralSolution& u, const SpectralSolution& v,
                       const std::vector<Observable>& as, double eps) {
  McGeometry g;
  Complex pole = u.denom.pole();
  g.pole_re = pole.real();
  g.pole_w = std::max(4.0 * std::abs(pole.imag()), 1e-9 * g.pole_re);
  g.r_hi = g.pole_re * 1.6;
  for (const FieldExpr* f : {&u.numerator, &v.numerator})
    for (const auto& at : f->atoms)
      g.r_hi = std::max(g.r_hi, norm(at.center) + 9.0 / std::sqrt(at.s.real()));
  // h proposal from the first observable's phi^ envelope (they share scales)
  if (as.empty() || as.front().phi.atoms.empty())
    throw std::invalid_argument("wigner_pairing_mc: observable with nonempty phi required");
  FieldExpr ph = model::fourier_transform(as.front().phi);
  double wsum = 0.0;
  for (const auto& at : ph.atoms) {
    double sr = 1.0 / std::sqrt(at.s.real());
    double w = std::abs(at.amp) * std::pow(kTwoPi, 1.5) * sr * sr * sr;
    g.h_w.push_back(w);
    g.h_mean.push_back(-at.center);  // phi^(p - q) is evaluated at -h
    g.h_sigma.push_back(std::max(sr, 0.3));
    wsum += w;
  }
  for (auto& w : g.h_w) w /= wsum;
  // psi is evaluated at eps(p+q)/2 ~ eps p: a proposal component matched to
  // its radial support keeps the variance finite for observables living away
  // from the resolvent peak
  double c_lo = 1e300, c_hi = 0.0, width = 0.3;
  for (const auto& at : as.front().psi.atoms) {
    double c = norm(at.center);
    c_lo = std::min(c_lo, c);
    c_hi = std::max(c_hi, c);
    width = std::max(width, 2.0 / std::sqrt(std::abs(at.s.real()) + 1e-12));
  }
  g.psi_re = 0.5 * (c_lo + c_hi) / eps;
  g.psi_w = (0.5 * (c_hi - c_lo) + width) / eps;
  return g;
}

}  // namespace

std::vector<WignerPairingResult> wigner_pairing_mc(const SpectralSolution& u,
                                                   const SpectralSolution& v,
                                                   const std::vector<Observable>& as, double eps,
                                                   const WignerQuad& q,
                                                   const std::vector<Complex>& combo) {
  if (u.dim != 3) throw std::invalid_argument("wigner_pairing_mc: d = 3 only");
  const int n_obs = static_cast<int>(as.size());
  const bool with_combo = !combo.empty();
  if (with_combo && combo.size() != as.size())
    throw std::invalid_argument("wigner_pairing_mc: combo size mismatch");
  const int n_out = n_obs + (with_combo ? 1 : 0);
  std::vector<WignerPairingResult> out(n_out);
  if (u.numerator.atoms.empty() || v.numerator.atoms.empty()) {
    for (auto& r : out) r.method = WignerPairingResult::Method::mc;
    return out;
  }
  McGeometry geo = mc_geometry(u, v, as, eps);

  std::vector<FieldExpr> phc(n_obs), psc(n_obs);
  for (int k = 0; k < n_obs; ++k) {
    phc[k] = model::conj(model::fourier_transform(as[k].phi));
    psc[k] = model::conj(as[k].psi);
  }

  // Defensive mixture over the radial coordinate: Cauchy at the resolvent
  // peak in p, the same in q, a component matched to psi's radial support,
  // and a broad half-Cauchy over all scales.
  const double wPeakP = 0.35, wPeakQ = 0.35, wPsi = 0.15, wBroad = 0.15;
  auto peak_pdf = [&geo](double r) {
    return quad::truncated_cauchy_pdf(r, geo.pole_re, geo.pole_w, 0.0, geo.r_hi) /
           (4.0 * kPi * r * r);
  };
  auto psi_pdf = [&geo](double r) {
    return quad::truncated_cauchy_pdf(r, geo.psi_re, geo.psi_w, 0.0, geo.r_hi) /
           (4.0 * kPi * r * r);
  };
  auto broad_pdf = [&geo](double r) {
    return quad::truncated_cauchy_pdf(r, 0.0, geo.pole_re, 0.0, geo.r_hi) /
           (4.0 * kPi * r * r);
  };
  auto h_pdf = [&geo](const Vec3& h) {
    double p = 0.0;
    for (std::size_t i = 0; i < geo.h_w.size(); ++i) {
      double s2 = geo.h_sigma[i] * geo.h_sigma[i];
      p += geo.h_w[i] * std::pow(kTwoPi * s2, -1.5) *
           std::exp(-0.5 * norm2(h - geo.h_mean[i]) / s2);
    }
    return p;
  };

  quad::Sampler sampler;
  sampler.k = 6;
  sampler.draw = [&, geo](quad::RngStream& rng, std::vector<double>& x) {
    Vec3 h;
    std::size_t pick = 0;
    double u01 = rng.uniform(), acc = 0.0;
    for (std::size_t i = 0; i < geo.h_w.size(); ++i) {
      acc += geo.h_w[i];
      pick = i;
      if (u01 <= acc) break;
    }
    for (int j = 0; j < 3; ++j) h[j] = geo.h_mean[pick][j] + geo.h_sigma[pick] * rng.normal();
    double branch = rng.uniform();
    double r;
    if (branch < wPeakP + wPeakQ)
      r = quad::truncated_cauchy_sample(rng, geo.pole_re, geo.pole_w, 0.0, geo.r_hi);
    else if (branch < wPeakP + wPeakQ + wPsi)
      r = quad::truncated_cauchy_sample(rng, geo.psi_re, geo.psi_w, 0.0, geo.r_hi);
    else
      r = quad::truncated_cauchy_sample(rng, 0.0, geo.pole_re, 0.0, geo.r_hi);
    Vec3 om = rng.unit_sphere();
    Vec3 p, qv;
    if (branch >= wPeakP && branch < wPeakP + wPeakQ) {
      qv = r * om;
      p = qv - h;
    } else {
      p = r * om;
      qv = p + h;
    }
    x = {p[0], p[1], p[2], qv[0], qv[1], qv[2]};
    double hw = h_pdf(h);
    return (wPeakP * peak_pdf(norm(p)) + wPeakQ * peak_pdf(norm(qv)) +
            wPsi * psi_pdf(norm(p)) + wBroad * broad_pdf(norm(p))) *
           hw;
  };

  const double front = std::pow(kTwoPi, 3);
  auto f_multi = [&](const std::vector<double>& x, std::vector<Complex>& vals) {
    Vec3 p{x[0], x[1], x[2]}, qv{x[3], x[4], x[5]};
    Complex uu = u.numerator.eval(p) / u.denom(norm(p));
    Complex vv = std::conj(v.numerator.eval(qv) / v.denom(norm(qv)));
    Vec3 pm = p - qv;
    Vec3 mid = 0.5 * eps * (p + qv);
    Complex common = front * uu * vv;
    for (int k = 0; k < n_obs; ++k)
      vals[k] = common * phc[k].eval(pm) * psc[k].eval(mid);
    if (with_combo) {
      Complex c = 0.0;
      for (int k = 0; k < n_obs; ++k) c += combo[k] * vals[k];
      vals[n_obs] = c;
    }
  };

  auto est = quad::mc_integrate_multi(f_multi, n_out, sampler, q.n_samples, q.seed, q.n_jobs);
  for (int k = 0; k < n_out; ++k) {
    out[k].value = est[k].value;
    out[k].error = est[k].stderr_est;
    out[k].method = WignerPairingResult::Method::mc;
    out[k].n_samples = est[k].n_samples;
  }
  return out;
}

WignerPairingResult wigner_pairing(const SpectralSolution& u, const SpectralSolution& v,
                                   const Observable& a, double eps, const WignerQuad& q) {
  return wigner_pairing_mc(u, v, {a}, eps, q)[0];
}

// ---------------------------------------------------------------------------
// Source terms
// ---------------------------------------------------------------------------

namespace {

/// G(z) = \int S(z + y) conj(phi)(x_c + eps z + (eps/2) y) conj(psi_check)(y) dy,
/// assembled per atom triple and marginalized in closed form (y plays the
/// p-slot of the pair form).
FieldExpr source_term_z_factor(const FieldExpr& S, const Observable& a, double eps,
                               const Vec3& x_c) {
  FieldExpr phic = model::conj(a.phi);
  FieldExpr psick = model::conj(model::inverse_fourier_transform(a.psi));
  FieldExpr G;
  G.dim = 3;
  for (const auto& s_at : S.atoms)
    for (const auto& p_at : phic.atoms)
      for (const auto& c_at : psick.atoms) {
        model::PairQuadratic pq;
        pq.dim = 3;
        pq.absorb(s_at, 1.0, 1.0, {0, 0, 0});          // S at (y + z)
        pq.absorb(p_at, 0.5 * eps, eps, x_c);          // conj(phi) at (x_c + eps z + eps y/2)
        pq.absorb(c_at, 1.0, 0.0, {0, 0, 0});          // conj(psi_check) at y
        G.atoms.push_back(pq.marginalize_p());
      }
  return G;
}

}  // namespace

helmholtz::ValueWithError source_term_pairing(const Scenario& s, double eps, int which,
                                              const Observable& a, int level) {
  const FieldExpr& S = which == 0 ? s.S0 : s.S1;
  Vec3 x_c = which == 0 ? Vec3{0, 0, 0} : s.q1;
  FieldExpr G = source_term_z_factor(S, a, eps, x_c);
  auto w = helmholtz::solve_rescaled(s, eps, which);
  // (2pi)^{-3} \int conj(w(z)) G(z) dz
  //   = conj( \int w^(xi) conj(G^)(xi) dxi )  [Parseval, (2pi)^3 cancels]
  FieldExpr F = model::multiply(w.numerator, model::conj(model::fourier_transform(G)));
  helmholtz::EvalQuad q;
  q.level = level;
  auto r = helmholtz::integrate_over_resolvent_err(F, w.denom, q);
  return {std::conj(r.value), r.error};
}

helmholtz::ValueWithError source_term_pairing_alt(const Scenario& s, double eps, int which,
                                                  const Observable& a, int level) {
  // eps (2pi)^3 \int\int S^(p) conj(u^(q)) conj(phi^(p-q)) conj(psi(eps(p+q)/2)) dp dq,
  // p marginalized in closed form, then one resolvent integral in q against
  // the conjugated denominator.
  FieldExpr src = which == 0 ? model::scale_concentrate(s.S0, eps, Vec3{0, 0, 0})
                             : model::scale_concentrate(s.S1, eps, s.q1);
  FieldExpr Sh = model::fourier_transform(src);
  FieldExpr phc = model::conj(model::fourier_transform(a.phi));
  FieldExpr psc = model::conj(a.psi);
  auto u = helmholtz::solve_full(s, eps);
  FieldExpr A;
  A.dim = 3;
  for (const auto& s_at : Sh.atoms)
    for (const auto& p_at : phc.atoms)
      for (const auto& c_at : psc.atoms) {
        model::PairQuadratic pq;
        pq.dim = 3;
        pq.absorb(s_at, 1.0, 0.0, {0, 0, 0});              // S^ at p
        pq.absorb(p_at, 1.0, -1.0, {0, 0, 0});             // conj(phi^) at p - q
        pq.absorb(c_at, 0.5 * eps, 0.5 * eps, {0, 0, 0});  // conj(psi) at eps(p+q)/2
        A.atoms.push_back(pq.marginalize_p());
      }
  FieldExpr T = model::multiply(A, model::conj(u.numerator));
  T = model::scale(T, eps * std::pow(kTwoPi, 3));
  // \int T(q)/conj(D(q)) dq = conj( \int conj(T)/D )
  helmholtz::EvalQuad q;
  q.level = level;
  auto r = helmholtz::integrate_over_resolvent_err(model::conj(T), u.denom, q);
  return {std::conj(r.value), r.error};
}

Complex source_limit_delta_part(const Scenario& s, int which, const Observable& a) {
  const FieldExpr& S = which == 0 ? s.S0 : s.S1;
  Vec3 x_c = which == 0 ? Vec3{0, 0, 0} : s.q1;
  FieldExpr Sh = model::fourier_transform(S);
  const auto& sph = quad::sphere_rule(3, 14);
  Complex ang = 0.0;
  for (std::size_t k = 0; k < sph.nodes.size(); ++k)
    ang += sph.weights[k] * std::norm(Sh.eval(sph.nodes[k])) *
           std::conj(a.psi.eval(sph.nodes[k]));
  return std::pow(kTwoPi, 3) * std::conj(a.phi.eval(x_c)) * (-kI) * kPi * 0.5 * ang;
}

Complex source_limit(const Scenario& s, int which, const Observable& a, int level) {
  const FieldExpr& S = which == 0 ? s.S0 : s.S1;
  Vec3 x_c = which == 0 ? Vec3{0, 0, 0} : s.q1;
  FieldExpr Sh = model::fourier_transform(S);
  const auto& sph = quad::sphere_rule(3, level >= 2 ? 18 : 14);
  auto H = [&](double r) {
    Complex ang = 0.0;
    for (std::size_t k = 0; k < sph.nodes.size(); ++k) {
      Vec3 xi = r * sph.nodes[k];
      ang += sph.weights[k] * std::norm(Sh.eval(xi)) * std::conj(a.psi.eval(xi));
    }
    return r * r * ang;
  };
  double R = 1.0;
  for (const auto& at : Sh.atoms) R = std::max(R, norm(at.center) + 10.0 / std::sqrt(at.s.real()));
  for (const auto& at : a.psi.atoms)
    R = std::max(R, norm(at.center) + 10.0 / std::sqrt(std::abs(at.s.real())));
  // p.v. over (0, R): subtract G(1)/(r-1), G = H/(r+1)
  auto G = [&](double r) { return H(r) / (r + 1.0); };
  Complex G1 = G(1.0);
  auto smooth = [&](double r) {
    double d = r - 1.0;
    if (std::abs(d) < 1e-7) {
      double h = 1e-5;
      return (G(r + h) - G(r - h)) / (2.0 * h);  // G'(1) limit of the quotient
    }
    return (G(r) - G1) / d;
  };
  Complex pv = quad::adaptive_1d([&](double r) { return smooth(r); }, 0.0, R, 1e-9).value;
  pv += G1 * std::log(R - 1.0);
  // delta part on the unit sphere
  Complex ang1 = 0.0;
  for (std::size_t k = 0; k < sph.nodes.size(); ++k)
    ang1 += sph.weights[k] * std::norm(Sh.eval(sph.nodes[k])) *
            std::conj(a.psi.eval(sph.nodes[k]));
  // S^ conj(w^) = -|S^|^2 (p.v. + i pi delta)(|xi|^2 - 1)
  Complex pref = std::pow(kTwoPi, 3) * std::conj(a.phi.eval(x_c));
  return pref * (-pv - kI * kPi * 0.5 * ang1);
}

// ---------------------------------------------------------------------------
// Weyl oracle and duality
// ---------------------------------------------------------------------------

norms::EvaluableField weyl_apply(const Observable& a, const FieldExpr& f, double eps) {
  const int d = f.dim;
  if (d > 2) throw std::invalid_argument("weyl_apply: oracle restricted to d <= 2");
  // An empty factor stands for the constant 1 in this oracle.
  if (a.psi.atoms.empty()) {
    // symbol independent of xi: plain multiplication by phi (or identity)
    norms::EvaluableField out;
    out.dim = d;
    FieldExpr phi = a.phi, ff = f;
    if (phi.atoms.empty())
      out.eval = [ff](const Vec3& x) { return ff.eval(x); };
    else
      out.eval = [phi, ff](const Vec3& x) { return phi.eval(x) * ff.eval(x); };
    return out;
  }
  if (a.phi.atoms.empty()) {
    // pure Fourier multiplier psi(eps D): exact closed form
    FieldExpr g = model::inverse_fourier_transform(
        model::multiply(model::dilate_arg(a.psi, eps), model::fourier_transform(f)));
    norms::EvaluableField out;
    out.dim = d;
    out.eval = [g](const Vec3& x) { return g.eval(x); };
    return out;
  }
  FieldExpr psick = model::inverse_fourier_transform(a.psi);
  FieldExpr phi = a.phi;
  FieldExpr ff = f;
  double half = 2.0;
  for (const auto& at : f.atoms)
    half = std::max(half, norm(at.center) + 10.0 / std::sqrt(at.s.real()));
  for (const auto& at : a.phi.atoms)
    half = std::max(half, 2.0 * norm(at.center) + 14.0 / std::sqrt(at.s.real()));
  double pref = std::pow(kTwoPi, -d) * std::pow(eps, -d);
  norms::EvaluableField out;
  out.dim = d;
  if (d == 1) {
    out.eval = [=](const Vec3& x) {
      auto r = quad::adaptive_1d(
          [&](double y) {
            return phi.eval({0.5 * (x[0] + y), 0, 0}) * psick.eval({(x[0] - y) / eps, 0, 0}) *
                   ff.eval({y, 0, 0});
          },
          x[0] - 2.0 * half, x[0] + 2.0 * half, 1e-11);
      return pref * r.value;
    };
  } else {
    out.eval = [=](const Vec3& x) {
      auto g = quad::gauss_legendre_on(140, -2.0 * half, 2.0 * half);
      Complex s = 0.0;
      for (std::size_t i = 0; i < g.size(); ++i)
        for (std::size_t j = 0; j < g.size(); ++j) {
          Vec3 y{x[0] + g.nodes[i], x[1] + g.nodes[j], 0.0};
          s += g.weights[i] * g.weights[j] *
               phi.eval({0.5 * (x[0] + y[0]), 0.5 * (x[1] + y[1]), 0}) *
               psick.eval({(x[0] - y[0]) / eps, (x[1] - y[1]) / eps, 0}) * ff.eval(y);
        }
      return pref * s;
    };
  }
  out.decay = norms::DecayMeta{};
  return out;
}

WeylDualityResult weyl_duality_check(const FieldExpr& u, const FieldExpr& v,
                                     const Observable& a, double eps) {
  if (u.dim != 1) throw std::invalid_argument("weyl_duality_check: d = 1");
  Complex lhs = wigner_pairing_exact(u, v, a, eps);
  FieldExpr ub = model::conj(u);
  FieldExpr vb = model::conj(v);
  auto rhs_for = [&](const Observable& sym) {
    auto op = weyl_apply(sym, ub, eps);
    double half = 14.0;
    auto g = quad::gauss_legendre_on(220, -half, half);
    Complex s = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
      double x = g.nodes[i];
      s += g.weights[i] * vb.eval({x, 0, 0}) * std::conj(op.eval({x, 0, 0}));
    }
    return s;
  };
  Observable refl = a;
  refl.psi = model::reflect(a.psi);
  WeylDualityResult res;
  res.residual = std::abs(lhs - rhs_for(refl));
  res.residual_unreflected = std::abs(lhs - rhs_for(a));
  return res;
}

// ---------------------------------------------------------------------------
// Cross term and transport identity
// ---------------------------------------------------------------------------

WignerPairingResult cross_term(const Scenario& s, double eps, const Observable& a,
                               const WignerQuad& q) {
  auto u0 = helmholtz::solve_full_single(s, eps, 0);
  auto u1 = helmholtz::solve_full_single(s, eps, 1);
  return wigner_pairing(u0, u1, a, eps, q);
}

TransportResidual transport_identity_residual(const Scenario& s, double eps,
                                              const Observable& a, const WignerQuad& q) {
  if (!observable_is_real(a))
    throw std::invalid_argument("transport identity: real observable required");
  auto u = helmholtz::solve_full(s, eps);
  std::vector<Observable> all = {a};
  for (auto& g : xi_dot_grad(a)) all.push_back(g);
  double alpha = s.alpha(eps);
  // one extra shared-sample estimate of the full left-hand side, so its
  // stderr carries the correlations between the terms
  std::vector<Complex> combo(all.size(), Complex(1.0));
  combo[0] = alpha;
  auto pair = wigner_pairing_mc(u, u, all, eps, q, combo);
  TransportResidual res;
  res.damping_term = alpha * pair[0].value;
  for (std::size_t j = 1; j + 1 < pair.size(); ++j) res.transport_term += pair[j].value;
  Complex lhs = pair.back().value;
  double err = 3.0 * pair.back().error;  // 3-sigma budget on the stochastic side
  auto st0 = source_term_pairing(s, eps, 0, a, q.det_level);
  auto st1 = source_term_pairing(s, eps, 1, a, q.det_level);
  Complex z = st0.value + st1.value;
  res.source_term = Complex(-z.imag(), 0.0);
  err += st0.error + st1.error;
  res.residual = std::abs(lhs - res.source_term);
  res.combined_error = err;
  return res;
}

}  // namespace helmrays::wigner
