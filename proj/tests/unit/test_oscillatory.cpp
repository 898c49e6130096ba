#include <doctest.h>

#include <cmath>

#include "helmrays/oscillatory.hpp"
#include "helmrays/quadrature.hpp"

using namespace helmrays;
using namespace helmrays::model;
using namespace helmrays::osc;

namespace {
FieldExpr gauss1d(Complex amp, double s, double center = 0.0, double mod = 0.0) {
  return gaussian(1, amp, s, {center, 0, 0}, {mod, 0, 0});
}
}  // namespace

TEST_CASE("lemma_l_integral") {
  SUBCASE("zero test function") {
    FieldExpr z;
    z.dim = 1;
    auto r = lemma_l_integral(z, 0.5, 1e-2, 1.0, 1.0);
    CHECK(std::abs(r.value) == 0.0);
  }
  SUBCASE("fixed-eps reference value vs brute-force adaptive oracle") {
    auto w = gauss1d(1.0, 1.0);  // e^{-r^2/2}
    double delta = 0.5, eps = 1e-2, gamma = 1.0, q = 1.0;
    auto got = lemma_l_integral(w, delta, eps, gamma, q, 2);
    double eta = std::pow(eps, 1.0 + gamma), beta = q / eps;
    auto f = [&](double r) {
      return std::exp(-kI * (beta * r)) * w.eval({r, 0, 0}) / Complex(-r, eta);
    };
    double cut = std::sqrt(eta);
    Complex oracle = 0.0;
    for (auto [a, b] : {std::pair<double, double>{-delta, -cut},
                        {-cut, 0.0},
                        {0.0, cut},
                        {cut, delta}}) {
      auto part = quad::adaptive_1d(f, a, b, 1e-12, 200000);
      REQUIRE(part.converged);
      oracle += part.value;
    }
    CHECK(std::abs(got.value - oracle) < 1e-8 * (1.0 + std::abs(oracle)));
    CHECK(got.error < 1e-7);
  }
  SUBCASE("conjugate-reflection equivariance (exact integrand symmetry)") {
    auto w = gauss1d(Complex(0.7, -0.4), 1.3, 0.2, 0.8);
    double delta = 0.4, eps = 0.05, gamma = 1.0, q = 2.0;
    auto a = lemma_l_integral(w, delta, eps, gamma, q, 2);
    auto b = lemma_l_integral(reflect(conj(w)), delta, eps, gamma, q, 2);
    CHECK(std::abs(b.value + std::conj(a.value)) < 1e-10 * (1.0 + std::abs(a.value)));
  }
  SUBCASE("sweep fits the zero-limit hypothesis better than -i pi w(0)") {
    auto w = gauss1d(1.0, 1.0);
    SweepSeries sweep;
    sweep.functional = "lemma_l";
    for (double eps : {0.1, 0.05, 0.025, 0.0125, 0.00625}) {
      auto r = lemma_l_integral(w, 0.5, eps, 1.0, 1.0, 2);
      sweep.push(eps, r.value, r.error);
    }
    Complex w0 = w.eval({0, 0, 0});
    // the deviation from 0 decays (oscillatory envelope); the deviation from
    // -i pi w(0) stays pinned at pi
    double dev0 = 0.0, devpi = 0.0;
    for (std::size_t i = sweep.points.size() - 3; i < sweep.points.size(); ++i) {
      dev0 = std::max(dev0, std::abs(sweep.points[i].value));
      devpi = std::max(devpi, std::abs(sweep.points[i].value - Complex(0.0, -M_PI) * w0));
    }
    CHECK(dev0 < 0.05);
    CHECK(devpi > 2.9);
    auto fit0 = rate_fit(sweep, Complex(0.0));
    CHECK(fit0.rate > 0.0);  // decaying toward the zero hypothesis
  }
}

TEST_CASE("pv_delta_eval and its eta -> 0 limit") {
  SUBCASE("even Gaussian: pure delta part, -i pi psi(0)") {
    auto psi = gauss1d(1.0, 2.0);  // e^{-x^2}
    auto lim = pv_delta_limit(psi);
    CHECK(std::abs(lim.value - Complex(0.0, -M_PI)) < 1e-6);
    CHECK(std::abs(lim.value.real()) < 1e-8);
  }
  SUBCASE("odd x e^{-x^2}: pure principal value, sqrt(pi)") {
    auto psi = multiply_poly(gauss1d(1.0, 2.0), Poly::variable(0, 1));
    auto lim = pv_delta_limit(psi);
    CHECK(std::abs(lim.value - std::sqrt(M_PI)) < 1e-6);
    CHECK(std::abs(lim.value.imag()) < 1e-8);
  }
  SUBCASE("imaginary part trend O(eta) for even psi") {
    auto psi = gauss1d(1.0, 2.0);
    double prev_gap = 1e300;
    for (double eta : {1e-2, 5e-3, 2.5e-3}) {
      double gap = std::abs(pv_delta_eval(psi, eta).imag() + M_PI);
      CHECK(gap < prev_gap);
      prev_gap = gap;
    }
  }
}

TEST_CASE("rate_fit recovers planted rates") {
  SUBCASE("value = 2 + eps^1") {
    SweepSeries s;
    for (double eps : {0.4, 0.2, 0.1, 0.05, 0.025}) s.push(eps, 2.0 + eps, 0.0);
    auto f = rate_fit(s);
    CHECK(std::abs(f.limit - 2.0) < 1e-8);
    CHECK(std::abs(f.rate - 1.0) < 0.05);
    CHECK(f.monotone);
  }
  SUBCASE("value = eps^{1/2}") {
    SweepSeries s;
    for (double eps : {0.4, 0.2, 0.1, 0.05, 0.025}) s.push(eps, std::sqrt(eps), 0.0);
    auto f = rate_fit(s);
    CHECK(std::abs(f.rate - 0.5) < 0.05);
    CHECK(std::abs(f.limit) < 1e-6);
  }
  SUBCASE("complex limit with hypothesis") {
    SweepSeries s;
    Complex L(0.3, -1.2);
    for (double eps : {0.4, 0.2, 0.1, 0.05}) s.push(eps, L + Complex(0.5) * eps, 0.0);
    auto f = rate_fit(s, L);
    CHECK(std::abs(f.rate - 1.0) < 0.05);
    CHECK(f.monotone);
  }
  SUBCASE("non-monotone residuals are flagged") {
    SweepSeries s;
    s.push(0.4, 1.0, 0.0);
    s.push(0.2, 0.2, 0.0);
    s.push(0.1, 0.6, 0.0);
    s.push(0.05, 0.1, 0.0);
    auto f = rate_fit(s, Complex(0.0));
    CHECK(!f.monotone);
  }
}
