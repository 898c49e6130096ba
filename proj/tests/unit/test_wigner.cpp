#include <doctest.h>

#include <cmath>

#include "helmrays/mc.hpp"
#include "helmrays/wigner.hpp"
#include "test_oracles.hpp"

using namespace helmrays;
using namespace helmrays::model;
using namespace helmrays::wigner;

namespace {

FieldExpr g1(Complex amp, double s, double c = 0.0, double k = 0.0) {
  return gaussian(1, amp, s, {c, 0, 0}, {k, 0, 0});
}

Scenario ref3d() {
  Scenario s;
  s.d = 3;
  s.epsilons = {0.4, 0.2, 0.1, 0.05, 0.025};
  s.gamma = 1.0;
  s.q1 = {2.0, 0.0, 0.0};
  s.N = 2.1;
  s.S0 = gaussian(3, 1.0, 1.0);
  s.S1 = gaussian(3, 1.0, 1.0);
  return s;
}

Scenario ref1d() {
  Scenario s;
  s.d = 1;
  s.epsilons = {0.5, 0.25};
  s.gamma = 1.0;
  s.q1 = {2.0, 0.0, 0.0};
  s.N = 2.1;
  s.S0 = g1(1.0, 1.0);
  s.S1 = g1(1.0, 1.0);
  return s;
}

}  // namespace

TEST_CASE("observable flags are verified at construction") {
  auto phi = gaussian(3, 1.0, 1.0);
  auto on_sphere = gaussian(3, 1.0, 4.0, {1.0, 0, 0});
  auto far_out = gaussian(3, 1.0, 30.0, {3.0, 0, 0});
  CHECK(!make_observable(phi, on_sphere).off_sphere);
  auto far = make_observable(phi, far_out);
  CHECK(far.off_sphere);
  CHECK(far.off_zero_frequency);
  CHECK(!make_observable(phi, gaussian(3, 1.0, 4.0)).off_zero_frequency);
}

TEST_CASE("exact pairing equals the direct-space d=1 oracle") {
  quad::RngStream rng(21);
  for (int t = 0; t < 6; ++t) {
    auto u = g1(Complex(rng.uniform(), rng.uniform() - 0.5), 0.6 + rng.uniform(),
                rng.uniform() - 0.5, 1.2 * (rng.uniform() - 0.5));
    auto v = g1(Complex(rng.uniform(), 0.4 * rng.uniform()), 0.7 + rng.uniform(),
                0.8 * (rng.uniform() - 0.5), rng.uniform() - 0.5);
    auto a = make_observable(g1(1.0, 0.9, 0.3 * rng.uniform()),
                             g1(1.0, 1.1, 0.5 * (rng.uniform() - 0.5)));
    double eps = 0.35 + 0.4 * rng.uniform();
    Complex exact = wigner_pairing_exact(u, v, a, eps);
    Complex oracle = wigner_pairing_direct_1d(u, v, a, eps);
    CHECK(std::abs(exact - oracle) < 1e-8 * (1.0 + std::abs(exact)));
  }
}

TEST_CASE("exact pairing with gradient observables matches the oracle") {
  auto u = g1(1.0, 1.0, 0.2);
  auto v = g1(Complex(0.5, 0.5), 1.3);
  auto a = make_observable(g1(1.0, 1.0), g1(1.0, 2.0, 0.7));
  double eps = 0.5;
  for (const auto& comp : xi_dot_grad(a)) {
    Complex exact = wigner_pairing_exact(u, v, comp, eps);
    Complex oracle = wigner_pairing_direct_1d(u, v, comp, eps);
    CHECK(std::abs(exact - oracle) < 1e-8 * (1.0 + std::abs(exact)));
  }
}

TEST_CASE("zero phi factor annihilates the pairing") {
  FieldExpr zero;
  zero.dim = 1;
  auto u = g1(1.0, 1.0);
  Observable a;
  a.phi = zero;
  a.psi = g1(1.0, 1.0);
  CHECK(wigner_pairing_exact(u, u, a, 0.5) == Complex(0.0));
}

TEST_CASE("hermitian symmetry and sesquilinearity (exact path)") {
  auto u = g1(Complex(0.8, -0.1), 1.0, 0.1, 0.4);
  auto v = g1(Complex(0.2, 0.6), 1.4, -0.3, 0.1);
  auto a = make_observable(g1(1.0, 1.2), g1(1.0, 0.8));
  double eps = 0.7;
  SUBCASE("diagonal pairing with a real observable is real") {
    Complex val = wigner_pairing_exact(u, u, a, eps);
    CHECK(std::abs(val.imag()) < 1e-12 * (1.0 + std::abs(val)));
  }
  SUBCASE("linear in u, conjugate-linear in v") {
    Complex c1(0.3, -0.8), c2(-0.5, 0.2);
    Complex base = wigner_pairing_exact(u, v, a, eps);
    Complex scaled = wigner_pairing_exact(scale(u, c1), scale(v, c2), a, eps);
    CHECK(std::abs(scaled - c1 * std::conj(c2) * base) < 1e-10 * (1.0 + std::abs(base)));
  }
}

TEST_CASE("transport identity signs pinned by 1D brute force") {
  auto s = ref1d();
  double eps = 0.5;
  double alpha = s.alpha(eps);
  auto u = helmholtz::solve_full(s, eps);
  auto a = make_observable(g1(1.0, 1.0, 0.5), g1(1.0, 1.5));
  auto parts = xi_dot_grad(a);

  // brute Fourier-side double integrals
  auto pair_uu = [&](const Observable& obs) {
    FieldExpr phc = conj(fourier_transform(obs.phi));
    FieldExpr psc = conj(obs.psi);
    auto g = quad::gauss_legendre_on(700, -8.0, 8.0);
    Complex ssum = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
      double p = g.nodes[i];
      Complex up = u.numerator.eval({p, 0, 0}) / u.denom(std::abs(p));
      Complex row = 0.0;
      for (std::size_t j = 0; j < g.size(); ++j) {
        double qv = g.nodes[j];
        Complex uq = std::conj(u.numerator.eval({qv, 0, 0}) / u.denom(std::abs(qv)));
        row += g.weights[j] * uq * phc.eval({p - qv, 0, 0}) *
               psc.eval({0.5 * eps * (p + qv), 0, 0});
      }
      ssum += g.weights[i] * up * row;
    }
    return 2.0 * M_PI * ssum;
  };
  auto pair_su = [&](const Observable& obs) {
    FieldExpr src = add(scale_concentrate(s.S0, eps, Vec3{0, 0, 0}),
                        scale_concentrate(s.S1, eps, s.q1));
    FieldExpr Sh = fourier_transform(src);
    FieldExpr phc = conj(fourier_transform(obs.phi));
    FieldExpr psc = conj(obs.psi);
    auto g = quad::gauss_legendre_on(700, -8.0, 8.0);
    Complex ssum = 0.0;
    for (std::size_t i = 0; i < g.size(); ++i) {
      double p = g.nodes[i];
      Complex sp = Sh.eval({p, 0, 0});
      Complex row = 0.0;
      for (std::size_t j = 0; j < g.size(); ++j) {
        double qv = g.nodes[j];
        Complex uq = std::conj(u.numerator.eval({qv, 0, 0}) / u.denom(std::abs(qv)));
        row += g.weights[j] * uq * phc.eval({p - qv, 0, 0}) *
               psc.eval({0.5 * eps * (p + qv), 0, 0});
      }
      ssum += g.weights[i] * sp * row;
    }
    return 2.0 * M_PI * ssum;
  };

  Complex t_damp = alpha * pair_uu(a);
  Complex t_grad = pair_uu(parts[0]);
  Complex t_src = Complex(-(eps * pair_su(a)).imag(), 0.0);
  double res_plus = std::abs(t_damp + t_grad - t_src);
  double res_minus = std::abs(t_damp - t_grad - t_src);
  CHECK(res_plus < 1e-6 * (1.0 + std::abs(t_src)));
  CHECK(res_minus > 100.0 * res_plus);
}

TEST_CASE("source term routes agree and converge to the limit") {
  auto s = ref3d();
  auto a = make_observable(gaussian(3, 1.0, 1.0), gaussian(3, 1.0, 1.0));
  SUBCASE("two independent reductions agree at eps = 0.5") {
    for (int which : {0, 1}) {
      auto r1 = source_term_pairing(s, 0.5, which, a, 1);
      auto r2 = source_term_pairing_alt(s, 0.5, which, a, 1);
      CHECK(std::abs(r1.value - r2.value) <
            10.0 * (r1.error + r2.error) + 1e-8 * std::abs(r1.value));
    }
  }
  SUBCASE("zero source gives exactly zero") {
    auto s0 = s;
    s0.S1 = FieldExpr{};
    s0.S1.dim = 3;
    auto r = source_term_pairing(s0, 0.25, 1, a, 1);
    CHECK(std::abs(r.value) == 0.0);
  }
  SUBCASE("sweep approaches source_limit") {
    Complex lim = source_limit(s, 0, a);
    double prev = 1e300;
    for (double eps : {0.2, 0.1, 0.05}) {
      auto r = source_term_pairing(s, eps, 0, a, 1);
      double gap = std::abs(r.value - lim);
      CHECK(gap < prev);
      prev = gap;
    }
    CHECK(prev < 0.2 * std::abs(lim));
  }
}

TEST_CASE("source limit: delta part closed form and resolvent cross-check") {
  auto s = ref3d();
  auto a = make_observable(gaussian(3, 1.0, 1.0), gaussian(3, 1.0, 2.0));  // psi = e^{-|xi|^2}
  SUBCASE("delta part for the radial unit Gaussian") {
    Complex dp = source_limit_delta_part(s, 0, a);
    Complex expect = -kI * 2.0 * M_PI * M_PI * std::exp(-2.0);
    CHECK(std::abs(dp - expect) < 1e-8 * std::abs(expect));
  }
  SUBCASE("p.v. + delta split matches the damped full integral") {
    Complex lim = source_limit(s, 0, a, 2);
    // independent: (2pi)^3 phi(0) int S^ conj(w^_eta) psi dxi, Richardson in eta
    FieldExpr Sh = fourier_transform(s.S0);
    auto value_at = [&](double eta) {
      FieldExpr T = multiply(multiply(Sh, conj(Sh)), conj(a.psi));
      helmholtz::Denominator D{1.0, eta};
      // conj(w^) = conj( -S^/( |xi|^2-1+i eta) ) -> -conj(S^)/(|xi|^2-1-i eta)
      // so  int S^ conj(w^) psi^c = conj( int conj(S^) (-1) S^ psi / (...)+i eta )
      FieldExpr Tc = conj(T);
      Complex inner = helmholtz::integrate_over_resolvent(Tc, D, helmholtz::EvalQuad{2});
      return std::conj(Complex(std::pow(2.0 * M_PI, 3)) * inner) *
             std::conj(a.phi.eval({0, 0, 0}));
    };
    Complex u1 = value_at(1e-2), u2 = value_at(5e-3), u3 = value_at(2.5e-3);
    Complex r1 = 2.0 * u2 - u1, r2 = 2.0 * u3 - u2;
    Complex extrap = (4.0 * r2 - r1) / 3.0;
    CHECK(std::abs(lim - extrap) < 1e-5 * (1.0 + std::abs(lim)));
  }
}

TEST_CASE("weyl oracle") {
  auto f = g1(Complex(0.7, 0.3), 1.1, 0.2, 0.6);
  SUBCASE("constant symbol is the identity") {
    Observable one;
    one.phi = FieldExpr{};
    one.phi.dim = 1;
    one.psi = FieldExpr{};
    one.psi.dim = 1;
    auto op = weyl_apply(one, f, 0.5);
    for (double x : {-0.7, 0.0, 1.3})
      CHECK(std::abs(op.eval({x, 0, 0}) - f.eval({x, 0, 0})) < 1e-12);
  }
  SUBCASE("xi-only symbol is the Fourier multiplier psi(eps D)") {
    Observable mult;
    mult.phi = FieldExpr{};
    mult.phi.dim = 1;
    mult.psi = g1(1.0, 0.8, 0.4);
    double eps = 0.5;
    auto op = weyl_apply(mult, f, eps);
    // numeric multiplier: int e^{i x xi} psi(eps xi) f^(xi) dxi
    FieldExpr fh = fourier_transform(f);
    for (double x : {-0.4, 0.5}) {
      auto oracle = quad::adaptive_1d(
          [&](double xi) {
            return std::exp(kI * (x * xi)) * mult.psi.eval({eps * xi, 0, 0}) *
                   fh.eval({xi, 0, 0});
          },
          -40.0, 40.0, 1e-12);
      CHECK(std::abs(op.eval({x, 0, 0}) - oracle.value) < 1e-8);
    }
  }
  SUBCASE("duality at d=1 with the xi-reflected partner") {
    auto u = g1(1.0, 1.0, 0.3, 0.2);
    auto v = g1(Complex(0.4, 0.4), 1.2, -0.2);
    auto a = make_observable(g1(1.0, 1.0, 0.1), g1(1.0, 1.4, 0.5));
    auto res = weyl_duality_check(u, v, a, 1.0);
    CHECK(res.residual < 1e-7);
    CHECK(res.residual_unreflected > 1e-3);  // psi has an odd part
    auto even = make_observable(g1(1.0, 1.0), g1(1.0, 1.4));
    auto res2 = weyl_duality_check(u, v, even, 1.0);
    CHECK(res2.residual < 1e-7);
    CHECK(res2.residual_unreflected < 1e-7);
    // the identity is eps-pointwise
    auto res3 = weyl_duality_check(u, v, a, 0.5);
    CHECK(res3.residual < 1e-7);
  }
}

TEST_CASE("MC pairing: hermitian within error, cross term zero when S1=0") {
  auto s = ref3d();
  double eps = 0.4;
  auto u = helmholtz::solve_full(s, eps);
  auto a = make_observable(gaussian(3, 1.0, 1.0), gaussian(3, 1.0, 1.0));
  WignerQuad q;
  q.n_samples = 200000;
  auto r = wigner_pairing(u, u, a, eps, q);
  CHECK(std::abs(r.value.imag()) < 4.0 * r.error);
  CHECK(std::abs(r.value) > 0.0);

  auto s0 = s;
  s0.S1 = FieldExpr{};
  s0.S1.dim = 3;
  auto ct = cross_term(s0, eps, a, q);
  CHECK(ct.value == Complex(0.0));
}

TEST_CASE("Wigner pairings bounded by (B-norm)^2 times the X_lambda functional") {
  auto s = ref3d();
  norms::RingDecomposition rd{14};
  double b2 = std::pow(norms::b_norm(norms::from_field(s.S0), rd).value +
                           norms::b_norm(norms::from_field(s.S1), rd).value,
                       2);
  auto a = make_observable(gaussian(3, 1.0, 1.0, {0.6, 0, 0}), gaussian(3, 1.0, 1.0));
  double xl = norms::xlambda_norm(a.phi, a.psi, 0.5);
  WignerQuad q;
  q.n_samples = 250000;
  double cmin = 1e300, cmax = 0.0;
  for (double eps : {0.4, 0.2, 0.1}) {
    auto u = helmholtz::solve_full(s, eps);
    auto p = wigner_pairing(u, u, a, eps, q);
    double c = std::abs(p.value) / (b2 * xl);
    cmin = std::min(cmin, c);
    cmax = std::max(cmax, c);
  }
  CHECK(std::isfinite(cmax));
  CHECK(cmax <= 3.0 * std::max(cmin, 1e-12));
}

TEST_CASE("transport identity closes at d=3 within combined error") {
  auto s = ref3d();
  auto a = make_observable(gaussian(3, 1.0, 1.0), gaussian(3, 1.0, 1.0));
  WignerQuad q;
  q.n_samples = 400000;
  q.seed = 11;
  auto res = transport_identity_residual(s, 0.4, a, q);
  CHECK(res.residual < 3.0 * res.combined_error);
  CHECK(std::abs(res.source_term) > 0.0);
}
