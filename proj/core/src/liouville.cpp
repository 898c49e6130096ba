#include "helmrays/liouville.hpp"

#include <cmath>
#include <stdexcept>

#include "helmrays/quadrature.hpp"

namespace helmrays::liouville {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2.0 * kPi;
constexpr double kQPrefactor = 1.0 / (16.0 * kPi * kPi);  // (4 pi)^{-2}

/// t_max beyond which every atom envelope along the ray is < 1e-16 of peak.
double ray_cutoff(const FieldExpr& f, const Vec3& x0, const Vec3& dir) {
  double tmax = 1.0;
  for (const auto& a : f.atoms) {
    double t0 = dot(a.center - x0, dir);
    double reach = std::sqrt(2.0 * 40.0 / a.s.real());
    tmax = std::max(tmax, std::max(0.0, t0) + reach);
  }
  return tmax;
}

Complex ray_integral_adaptive(const FieldExpr& f, const Vec3& x0, const Vec3& dir, double damp,
                              double tol) {
  double tmax = ray_cutoff(f, x0, dir);
  if (damp > 0.0) tmax = std::min(tmax, 40.0 / damp);
  auto g = [&](double t) {
    Complex v = f.eval(x0 + t * dir);
    return damp > 0.0 ? std::exp(-damp * t) * v : v;
  };
  return quad::adaptive_1d(g, 0.0, tmax, tol).value;
}

Complex ray_integral_fixed(const FieldExpr& f, const Vec3& x0, const Vec3& dir, int n = 220) {
  double tmax = ray_cutoff(f, x0, dir);
  auto q = quad::gauss_legendre_on(n, 0.0, tmax);
  Complex s = 0.0;
  for (std::size_t i = 0; i < q.size(); ++i) s += q.weights[i] * f.eval(x0 + q.nodes[i] * dir);
  return s;
}

}  // namespace

DeltaSphereSource make_source(const Scenario& s) {
  DeltaSphereSource q;
  q.centers.push_back({{0, 0, 0}, model::fourier_transform(s.S0)});
  q.centers.push_back({s.q1, model::fourier_transform(s.S1)});
  return q;
}

DeltaSphereSource make_source_single(const Scenario& s, int which) {
  DeltaSphereSource q;
  if (which == 0)
    q.centers.push_back({{0, 0, 0}, model::fourier_transform(s.S0)});
  else
    q.centers.push_back({s.q1, model::fourier_transform(s.S1)});
  return q;
}

RayMeasure make_ray_measure(const Scenario& s, RayOrientation o) {
  return RayMeasure{make_source(s), o};
}

Complex q_pairing(const DeltaSphereSource& Q, const Observable& a) {
  const auto& sph = quad::sphere_rule(3, Q.sphere_order);
  Complex total = 0.0;
  for (const auto& c : Q.centers) {
    Complex phix = std::conj(a.phi.eval(c.x));
    if (std::abs(phix) < 1e-300) continue;
    Complex ang = 0.0;
    for (std::size_t i = 0; i < sph.nodes.size(); ++i)
      ang += sph.weights[i] * std::norm(c.Shat.eval(sph.nodes[i])) *
             std::conj(a.psi.eval(sph.nodes[i]));
    total += phix * ang;
  }
  return kQPrefactor * 0.5 * total;
}

Complex mu_pairing(const RayMeasure& mu, const Observable& a, double tol) {
  const auto& sph = quad::sphere_rule(3, mu.source.sphere_order);
  const double sgn = mu.orient == RayOrientation::backward ? -1.0 : 1.0;
  FieldExpr phic = model::conj(a.phi);
  Complex total = 0.0;
  for (const auto& c : mu.source.centers) {
    Complex ang = 0.0;
    for (std::size_t i = 0; i < sph.nodes.size(); ++i) {
      const Vec3& om = sph.nodes[i];
      Complex psio = std::conj(a.psi.eval(om));
      if (std::abs(psio) < 1e-300) continue;
      Complex ray = ray_integral_adaptive(phic, c.x, sgn * om, 0.0, tol);
      ang += sph.weights[i] * std::norm(c.Shat.eval(om)) * psio * ray;
    }
    total += ang;
  }
  return kQPrefactor * 0.5 * total;
}

Complex transport_resolvent(const Observable& R, double alpha, const Vec3& x, const Vec3& xi,
                            double tol) {
  double nxi = norm(xi);
  if (nxi == 0.0) throw std::invalid_argument("transport_resolvent: xi = 0 rejected");
  Vec3 om = (1.0 / nxi) * xi;
  Complex psixi = R.psi.eval(xi);
  Complex line = ray_integral_adaptive(R.phi, x, om, alpha / nxi, tol);
  return -(1.0 / nxi) * psixi * line;
}

DecayCheckReport resolvent_decay_check(const Observable& R, double alpha, int M) {
  if (!R.off_zero_frequency)
    throw std::invalid_argument("resolvent_decay_check: R must be off zero frequency");
  DecayCheckReport rep;
  rep.x_radii = {1.0, 2.0, 4.0, 8.0, 16.0, 32.0};
  rep.y_radii = {0.5, 1.0, 2.0, 4.0, 8.0, 16.0};
  // frequency support of psi
  double A = 1e9, B = 0.0;
  for (const auto& at : R.psi.atoms) {
    double c = norm(at.center), w = 9.0 / std::sqrt(at.s.real());
    A = std::min(A, std::max(0.05, c - w));
    B = std::max(B, c + w);
  }
  auto rad = quad::gauss_legendre_on(40, A, B);
  const auto& sph = quad::sphere_rule(3, 10);
  const Vec3 xdir{1, 0, 0}, ydir{0.36, 0.48, 0.8};
  double max_ratio = 0.0;
  for (double rx : rep.x_radii) {
    Vec3 x = rx * xdir;
    // g^eps(x, .) sampled on the frequency grid
    std::vector<Complex> gvals(rad.size() * sph.nodes.size());
    std::size_t idx = 0;
    for (std::size_t i = 0; i < rad.size(); ++i)
      for (std::size_t k = 0; k < sph.nodes.size(); ++k, ++idx) {
        Vec3 xi = rad.nodes[i] * sph.nodes[k];
        gvals[idx] = transport_resolvent(R, alpha, x, xi, 1e-8);
      }
    std::vector<double> row;
    for (double ry : rep.y_radii) {
      Vec3 y = ry * ydir;
      Complex ghat = 0.0;
      idx = 0;
      for (std::size_t i = 0; i < rad.size(); ++i)
        for (std::size_t k = 0; k < sph.nodes.size(); ++k, ++idx) {
          Vec3 xi = rad.nodes[i] * sph.nodes[k];
          double r = rad.nodes[i];
          ghat += rad.weights[i] * sph.weights[k] * r * r *
                  std::exp(-kI * dot(y, xi)) * gvals[idx];
        }
      ghat *= std::pow(kTwoPi, -3);
      row.push_back(std::abs(ghat));
      double xw = std::pow(1.0 + rx * rx, 0.5 * M);
      double bound_shape = std::min(xw, std::pow(alpha, -double(M))) /
                           std::pow(1.0 + ry * ry, 0.5 * M);
      max_ratio = std::max(max_ratio, row.back() / bound_shape);
    }
    rep.ghat_abs.push_back(row);
  }
  rep.envelope_constant = max_ratio;
  // decay in |x| at the largest radii (fixed smallest y)
  for (std::size_t i = 2; i + 1 < rep.x_radii.size(); ++i)
    if (rep.ghat_abs[i + 1][0] > rep.ghat_abs[i][0]) rep.x_decay = false;
  return rep;
}

double radiation_residual(const Scenario& s, const Observable& R, RayOrientation o) {
  RayMeasure mu = make_ray_measure(s, o);
  Complex lhs = mu_pairing(mu, R, 1e-11);
  // <Q, g> with g the orientation-consistent ray integral, evaluated by an
  // independent fixed-grid rule and a denser sphere rule.
  DeltaSphereSource Q = make_source(s);
  const auto& sph = quad::sphere_rule(3, Q.sphere_order + 6);
  const double sgn = o == RayOrientation::backward ? -1.0 : 1.0;
  FieldExpr phic = model::conj(R.phi);
  Complex rhs = 0.0;
  for (const auto& c : Q.centers) {
    Complex ang = 0.0;
    for (std::size_t i = 0; i < sph.nodes.size(); ++i) {
      const Vec3& om = sph.nodes[i];
      Complex psio = std::conj(R.psi.eval(om));
      if (std::abs(psio) < 1e-300) continue;
      ang += sph.weights[i] * std::norm(c.Shat.eval(om)) * psio *
             ray_integral_fixed(phic, c.x, sgn * om);
    }
    rhs += ang;
  }
  rhs *= kQPrefactor * 0.5;
  return std::abs(lhs - rhs);
}

double liouville_weak_residual(const Scenario& s, const Observable& a, RayOrientation o) {
  RayMeasure mu = make_ray_measure(s, o);
  Complex lhs = 0.0;
  for (const auto& comp : wigner::xi_dot_grad(a)) lhs += mu_pairing(mu, comp, 1e-11);
  Complex rhs = q_pairing(make_source(s), a);
  const double sgn = o == RayOrientation::backward ? 1.0 : -1.0;
  return std::abs(lhs - sgn * rhs);
}

double wigner_source_scale() { return 2.0 * std::pow(kTwoPi, 6); }

}  // namespace helmrays::liouville
