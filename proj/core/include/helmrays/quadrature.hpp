#pragma once

#include <functional>
#include <vector>

#include "helmrays/vec.hpp"

namespace helmrays::quad {

struct Quad1D {
  std::vector<double> nodes;
  std::vector<double> weights;
  std::size_t size() const { return nodes.size(); }
};

/// Gauss-Legendre rule on [-1,1]; cached by n.
const Quad1D& gauss_legendre(int n);
/// Gauss-Legendre rule mapped to [a,b].
Quad1D gauss_legendre_on(int n, double a, double b);

struct AdaptiveResult {
  Complex value{0.0};
  double error = 0.0;
  long evals = 0;
  bool converged = true;
};

/// Adaptive 1D quadrature (nested Gauss 10/20 per interval, bisection).
/// Non-convergence is reported through `converged` with the partial estimate.
AdaptiveResult adaptive_1d(const std::function<Complex(double)>& f, double a, double b,
                           double tol, int max_intervals = 20000);

/// Nodes and positive weights on S^{d-1}, exact for spherical polynomials up
/// to `order` (enforced by a least-norm weight correction on spiral nodes).
struct SphereRule {
  int dim = 3;
  int order = 0;
  std::vector<Vec3> nodes;
  std::vector<double> weights;
  double total_weight() const;
};

/// d in {2,3}; n_nodes = 0 picks a default node count for the order.
const SphereRule& sphere_rule(int d, int order, int n_nodes = 0);

/// Exact monomial moment int_{S^{d-1}} w^alpha dsigma (0 unless all even).
double sphere_monomial_moment(int d, const std::array<int, 3>& alpha);

/// Radial grid on (0, r_max) resolving a Lorentzian of width w at center c:
/// arctan-substituted core plus composite background panels.
struct RadialGrid {
  std::vector<double> nodes;
  std::vector<double> weights;
  double center = 0.0;
  double width = 0.0;
};

RadialGrid radial_lorentzian_grid(double c, double w, double r_max, int n);

/// Panel rule on [a,b] for integrands  f(r)/(r - z)-type with a simple pole
/// at z = pole_re + i*pole_im (|pole_im| small) and oscillation frequency up
/// to `beta`: arctan-substituted nodes across the pole, geometric panels
/// outward with width capped by the oscillation scale.
struct PoleOscSpec {
  double a = 0.0;
  double b = 1.0;
  double pole_re = 0.5;
  double pole_dist = 1e-3;   // distance of the pole from the real axis
  double beta = 0.0;         // max |d(phase)/dr|
  int level = 1;             // 0 coarse, 1 normal, 2 fine
};

Quad1D pole_osc_rule(const PoleOscSpec& spec);

/// Deterministic pairwise (tree) reduction; independent of chunking.
double pairwise_sum(const std::vector<double>& v);
Complex pairwise_sum(const std::vector<Complex>& v);

}  // namespace helmrays::quad
