#include <doctest.h>

#include <cmath>

#include "helmrays/atom.hpp"
#include "helmrays/mc.hpp"
#include "test_oracles.hpp"

using namespace helmrays;
using namespace helmrays::model;

namespace {

Vec3 rand_vec(quad::RngStream& rng, double scale) {
  return {scale * (2.0 * rng.uniform() - 1.0), scale * (2.0 * rng.uniform() - 1.0),
          scale * (2.0 * rng.uniform() - 1.0)};
}

FieldExpr random_field(quad::RngStream& rng, int d, int n_atoms, bool with_mod = true) {
  FieldExpr f;
  f.dim = d;
  for (int i = 0; i < n_atoms; ++i) {
    Complex amp(2.0 * rng.uniform() - 1.0, 2.0 * rng.uniform() - 1.0);
    double s = 0.5 + 1.5 * rng.uniform();
    Vec3 m = rand_vec(rng, 1.0);
    Vec3 k = with_mod ? rand_vec(rng, 1.5) : Vec3{};
    for (int j = d; j < 3; ++j) {
      m[j] = 0.0;
      k[j] = 0.0;
    }
    f = add(f, gaussian(d, amp, s, m, k));
  }
  return f;
}

}  // namespace

TEST_CASE("unit Gaussian transform value at zero") {
  // S(x) = e^{-|x|^2/2} in d=3  ->  S^(0) = (2pi)^{-3/2}
  auto S = gaussian(3, 1.0, 1.0);
  auto Sh = fourier_transform(S);
  CHECK(std::abs(Sh.eval({0, 0, 0}) - 0.06349363593424097) < 1e-14);
  CHECK(std::abs(Sh.eval({0, 0, 0}).imag()) < 1e-16);
}

TEST_CASE("transform matches direct quadrature oracle at random frequencies") {
  quad::RngStream rng(2024);
  auto f = random_field(rng, 3, 2);
  auto fh = fourier_transform(f);
  for (int t = 0; t < 10; ++t) {
    Vec3 xi = rand_vec(rng, 1.2);
    Complex oracle =
        oracles::fourier_oracle([&](const Vec3& x) { return f.eval(x); }, xi, 3, 9.0, 48);
    CHECK(std::abs(fh.eval(xi) - oracle) < 1e-10);
  }
}

TEST_CASE("shift theorem") {
  quad::RngStream rng(7);
  auto f = random_field(rng, 3, 2);
  Vec3 m{0.4, -1.1, 0.3};
  auto lhs = fourier_transform(shift(f, m));
  auto rhs = fourier_transform(f);
  for (int t = 0; t < 6; ++t) {
    Vec3 xi = rand_vec(rng, 1.5);
    Complex expect = std::exp(-kI * dot(m, xi)) * rhs.eval(xi);
    CHECK(std::abs(lhs.eval(xi) - expect) < 1e-12);
  }
}

TEST_CASE("double transform is reflection over (2pi)^d") {
  quad::RngStream rng(11);
  for (int d : {1, 2, 3}) {
    auto f = random_field(rng, d, 2);
    auto ff = fourier_transform(fourier_transform(f));
    double pref = std::pow(2.0 * M_PI, -d);
    for (int t = 0; t < 8; ++t) {
      Vec3 x = rand_vec(rng, 1.5);
      for (int j = d; j < 3; ++j) x[j] = 0.0;
      CHECK(std::abs(ff.eval(x) - pref * f.eval(-x)) < 1e-12);
    }
  }
}

TEST_CASE("transform linearity is exact") {
  quad::RngStream rng(13);
  auto f = random_field(rng, 3, 2);
  auto g = random_field(rng, 3, 2);
  auto sum = fourier_transform(add(f, g));
  auto parts = add(fourier_transform(f), fourier_transform(g));
  for (int t = 0; t < 5; ++t) {
    Vec3 xi = rand_vec(rng, 1.0);
    CHECK(std::abs(sum.eval(xi) - parts.eval(xi)) < 1e-13);
  }
}

TEST_CASE("inverse transform inverts") {
  quad::RngStream rng(17);
  auto f = random_field(rng, 3, 2);
  auto back = inverse_fourier_transform(fourier_transform(f));
  for (int t = 0; t < 6; ++t) {
    Vec3 x = rand_vec(rng, 1.3);
    CHECK(std::abs(back.eval(x) - f.eval(x)) < 1e-12);
  }
}

TEST_CASE("scale_concentrate") {
  quad::RngStream rng(19);
  auto f = random_field(rng, 3, 2, false);
  Vec3 q{2.0, 0.0, 0.0};

  SUBCASE("identity at eps=1, q=0") {
    auto g = scale_concentrate(f, 1.0, {0, 0, 0});
    Vec3 x = rand_vec(rng, 1.0);
    CHECK(std::abs(g.eval(x) - f.eval(x)) < 1e-14);
  }
  SUBCASE("transform at zero is eps-invariant (mass preservation)") {
    auto fh0 = fourier_transform(f).eval({0, 0, 0});
    for (double eps : {0.5, 0.1, 0.025}) {
      auto gh = fourier_transform(scale_concentrate(f, eps, q));
      Complex expect = std::exp(-kI * dot(q, Vec3{0, 0, 0})) * fh0;
      CHECK(std::abs(gh.eval({0, 0, 0}) - expect) < 1e-12 * std::abs(fh0));
    }
  }
  SUBCASE("transform equals phase times dilated transform, vs oracle") {
    double eps = 0.1;
    auto g = scale_concentrate(f, eps, q);
    auto gh = fourier_transform(g);
    auto fh = fourier_transform(f);
    for (int t = 0; t < 4; ++t) {
      Vec3 xi = rand_vec(rng, 2.0);
      Complex expect = std::exp(-kI * dot(q, xi)) * fh.eval(eps * xi);
      CHECK(std::abs(gh.eval(xi) - expect) < 1e-12);
    }
    // and against the direct-space quadrature oracle (box follows the
    // concentration at q)
    Vec3 xi{0.7, -0.2, 0.4};
    Complex oracle = oracles::fourier_oracle(
        [&](const Vec3& y) { return g.eval(y + q); }, xi, 3, 1.2, 48);
    oracle *= std::exp(-kI * dot(q, xi));  // undo the box shift
    CHECK(std::abs(gh.eval(xi) - oracle) < 5e-9);
  }
}

TEST_CASE("closed-form integral and Parseval") {
  quad::RngStream rng(23);
  auto f = random_field(rng, 3, 2);
  auto g = random_field(rng, 3, 2);
  Complex direct = oracles::tensor_integral_3d(
      [&](const Vec3& x) { return f.eval(x) * std::conj(g.eval(x)); }, {-7.5, -7.5, -7.5},
      {7.5, 7.5, 7.5}, 64);
  Complex closed = inner_product(f, g);
  CHECK(std::abs(closed - direct) < 1e-7);
  // Parseval with the (2pi)^d prefactor
  Complex fourier_side =
      std::pow(2.0 * M_PI, 3) * inner_product(fourier_transform(f), fourier_transform(g));
  CHECK(std::abs(closed - fourier_side) < 1e-12 * (1.0 + std::abs(closed)));
}

TEST_CASE("derivative matches finite differences; polynomial closure") {
  quad::RngStream rng(29);
  auto f = random_field(rng, 3, 2);
  auto df = derivative(f, 0);
  for (int t = 0; t < 5; ++t) {
    Vec3 x = rand_vec(rng, 1.0);
    double h = 1e-5;
    Vec3 xp = x, xm = x;
    xp[0] += h;
    xm[0] -= h;
    Complex fd = (f.eval(xp) - f.eval(xm)) / (2.0 * h);
    CHECK(std::abs(df.eval(x) - fd) < 1e-8);
  }
  // transform of a polynomial-weighted atom against the oracle
  auto pf = multiply_poly(f, Poly::variable(1));
  auto pfh = fourier_transform(pf);
  Vec3 xi{0.3, 0.8, -0.5};
  Complex oracle =
      oracles::fourier_oracle([&](const Vec3& x) { return x[1] * f.eval(x); }, xi, 3, 9.0, 48);
  CHECK(std::abs(pfh.eval(xi) - oracle) < 1e-10);
}

TEST_CASE("products evaluate pointwise") {
  quad::RngStream rng(31);
  auto f = random_field(rng, 3, 2);
  auto g = random_field(rng, 3, 2);
  auto fg = multiply(f, g);
  for (int t = 0; t < 5; ++t) {
    Vec3 x = rand_vec(rng, 1.2);
    CHECK(std::abs(fg.eval(x) - f.eval(x) * g.eval(x)) < 1e-12);
  }
}

TEST_CASE("PairQuadratic against 2D brute force (d=1 pair)") {
  // assemble exp factors: atom1(p), atom2(q), atom3(p - q), atom4((p+q)/2)
  GaussianAtom a1, a2, a3, a4;
  a1.s = 1.0;
  a1.center = {0.2, 0, 0};
  a1.mod = {0.5, 0, 0};
  a2.s = 0.7;
  a2.center = {-0.1, 0, 0};
  a2.mod = {-0.3, 0, 0};
  a3.s = 1.3;
  a3.center = {0.0, 0, 0};
  a3.mod = {0.2, 0, 0};
  a4.s = 0.9;
  a4.center = {0.4, 0, 0};
  a4.mod = {0.0, 0, 0};
  PairQuadratic pq;
  pq.dim = 1;
  pq.absorb(a1, 1.0, 0.0, {0, 0, 0});
  pq.absorb(a2, 0.0, 1.0, {0, 0, 0});
  pq.absorb(a3, 1.0, -1.0, {0, 0, 0});
  pq.absorb(a4, 0.5, 0.5, {0, 0, 0});
  auto brute = oracles::tensor_integral_2d(
      [&](double p, double q) {
        return a1.eval({p, 0, 0}) * a2.eval({q, 0, 0}) * a3.eval({p - q, 0, 0}) *
               a4.eval({0.5 * (p + q), 0, 0});
      },
      -10.0, 10.0, 160);
  CHECK(std::abs(pq.integrate() - brute) < 1e-10);

  SUBCASE("marginalize_p") {
    auto atom_q = pq.marginalize_p();
    for (double qv : {-0.7, 0.0, 0.9}) {
      Complex brute_marg = oracles::tensor_integral_1d(
          [&](double p) {
            return a1.eval({p, 0, 0}) * a2.eval({qv, 0, 0}) * a3.eval({p - qv, 0, 0}) *
                   a4.eval({0.5 * (p + qv), 0, 0});
          },
          -10.0, 10.0, 300);
      CHECK(std::abs(atom_q.eval({qv, 0, 0}) - brute_marg) < 1e-10);
    }
  }
}

TEST_CASE("l2 tail bound is a bound") {
  quad::RngStream rng(37);
  auto f = random_field(rng, 3, 2);
  double R = 4.0;
  // crude true tail from the envelope integral at higher resolution
  Complex tail2 = oracles::tensor_integral_3d(
      [&](const Vec3& x) {
        return norm(x) > R ? Complex(std::norm(f.eval(x)), 0.0) : Complex(0.0);
      },
      {-9, -9, -9}, {9, 9, 9}, 60);
  CHECK(l2_tail_bound(f, R) >= tail2.real() * 0.999);
}
