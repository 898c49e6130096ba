#include "helmrays/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace helmrays::quad {

namespace {
constexpr double kPi = 3.14159265358979323846;
constexpr double kTwoPi = 2.0 * kPi;
}  // namespace

// ---------------------------------------------------------------------------
// Gauss-Legendre
// ---------------------------------------------------------------------------

namespace {
Quad1D make_gauss_legendre(int n) {
  Quad1D q;
  q.nodes.resize(n);
  q.weights.resize(n);
  for (int i = 0; i < n; ++i) {
    // Newton iteration from the Chebyshev estimate.
    double x = std::cos(kPi * (i + 0.75) / (n + 0.5));
    double pp = 0.0;
    for (int it = 0; it < 100; ++it) {
      double p0 = 1.0, p1 = 0.0;
      for (int j = 0; j < n; ++j) {
        double p2 = p1;
        p1 = p0;
        p0 = ((2.0 * j + 1.0) * x * p1 - j * p2) / (j + 1.0);
      }
      pp = n * (x * p0 - p1) / (x * x - 1.0);
      double dx = p0 / pp;
      x -= dx;
      if (std::abs(dx) < 1e-15) break;
    }
    q.nodes[i] = x;
    q.weights[i] = 2.0 / ((1.0 - x * x) * pp * pp);
  }
  return q;
}
}  // namespace

const Quad1D& gauss_legendre(int n) {
  static std::map<int, Quad1D> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it == cache.end()) it = cache.emplace(n, make_gauss_legendre(n)).first;
  return it->second;
}

Quad1D gauss_legendre_on(int n, double a, double b) {
  const Quad1D& base = gauss_legendre(n);
  Quad1D q;
  q.nodes.resize(n);
  q.weights.resize(n);
  double mid = 0.5 * (a + b), half = 0.5 * (b - a);
  for (int i = 0; i < n; ++i) {
    q.nodes[i] = mid + half * base.nodes[i];
    q.weights[i] = half * base.weights[i];
  }
  return q;
}

// ---------------------------------------------------------------------------
// Adaptive 1D
// ---------------------------------------------------------------------------

AdaptiveResult adaptive_1d(const std::function<Complex(double)>& f, double a, double b,
                           double tol, int max_intervals) {
  struct Interval {
    double a, b;
    Complex coarse;
    double err;
  };
  auto eval_pair = [&f](double a1, double b1, Complex& fine, double& err, long& evals) {
    const Quad1D& g10 = gauss_legendre(10);
    const Quad1D& g20 = gauss_legendre(20);
    double mid = 0.5 * (a1 + b1), half = 0.5 * (b1 - a1);
    Complex s10 = 0.0, s20 = 0.0;
    for (std::size_t i = 0; i < g10.size(); ++i)
      s10 += g10.weights[i] * f(mid + half * g10.nodes[i]);
    for (std::size_t i = 0; i < g20.size(); ++i)
      s20 += g20.weights[i] * f(mid + half * g20.nodes[i]);
    s10 *= half;
    s20 *= half;
    evals += 30;
    fine = s20;
    err = std::abs(s20 - s10);
  };

  AdaptiveResult res;
  std::vector<Interval> stack;
  Complex fine;
  double err;
  eval_pair(a, b, fine, err, res.evals);
  stack.push_back({a, b, fine, err});
  Complex total = 0.0;
  double total_err = 0.0;
  int used = 1;
  while (!stack.empty()) {
    Interval iv = stack.back();
    stack.pop_back();
    double local_tol = tol * std::max(1e-3, (iv.b - iv.a) / (b - a));
    if (iv.err <= local_tol || (iv.b - iv.a) < 1e-14 * (b - a) || used >= max_intervals) {
      total += iv.coarse;
      total_err += iv.err;
      if (iv.err > local_tol) res.converged = false;
      continue;
    }
    double mid = 0.5 * (iv.a + iv.b);
    Complex f1, f2;
    double e1, e2;
    eval_pair(iv.a, mid, f1, e1, res.evals);
    eval_pair(mid, iv.b, f2, e2, res.evals);
    used += 2;
    stack.push_back({iv.a, mid, f1, e1});
    stack.push_back({mid, iv.b, f2, e2});
  }
  res.value = total;
  res.error = total_err;
  return res;
}

// ---------------------------------------------------------------------------
// Sphere rules
// ---------------------------------------------------------------------------

double sphere_monomial_moment(int d, const std::array<int, 3>& alpha) {
  for (int j = d; j < 3; ++j)
    if (alpha[j] != 0) return 0.0;
  for (int j = 0; j < d; ++j)
    if (alpha[j] % 2 == 1) return 0.0;
  // 2 * prod Gamma((a_j+1)/2) / Gamma((|a|+d)/2)
  double num = 2.0;
  double asum = 0.0;
  for (int j = 0; j < d; ++j) {
    num *= std::tgamma(0.5 * (alpha[j] + 1.0));
    asum += alpha[j];
  }
  return num / std::tgamma(0.5 * (asum + d));
}

double SphereRule::total_weight() const {
  double s = 0.0;
  for (double w : weights) s += w;
  return s;
}

namespace {

// Real spherical harmonics with unit L^2(S^2) norm, evaluated at a point.
// Index layout: for l=0..L, m=-l..l  ->  flat index l*l + (m+l).
void real_sph_harmonics(int L, const Vec3& x, std::vector<double>& out) {
  double z = std::clamp(x[2], -1.0, 1.0);
  double phi = std::atan2(x[1], x[0]);
  int B = (L + 1) * (L + 1);
  out.assign(B, 0.0);
  // Associated Legendre P_l^m(z), m >= 0, with Condon-Shortley phase.
  std::vector<std::vector<double>> P(L + 1, std::vector<double>(L + 1, 0.0));
  double somx2 = std::sqrt(std::max(0.0, 1.0 - z * z));
  P[0][0] = 1.0;
  for (int m = 1; m <= L; ++m) P[m][m] = -P[m - 1][m - 1] * (2.0 * m - 1.0) * somx2;
  for (int m = 0; m < L; ++m) P[m + 1][m] = z * (2.0 * m + 1.0) * P[m][m];
  for (int m = 0; m <= L; ++m)
    for (int l = m + 2; l <= L; ++l)
      P[l][m] = ((2.0 * l - 1.0) * z * P[l - 1][m] - (l + m - 1.0) * P[l - 2][m]) / (l - m);
  for (int l = 0; l <= L; ++l) {
    for (int m = 0; m <= l; ++m) {
      double lognorm = 0.5 * (std::log((2.0 * l + 1.0) / (4.0 * kPi)) + std::lgamma(l - m + 1.0) -
                              std::lgamma(l + m + 1.0));
      double N = std::exp(lognorm);
      if (m == 0) {
        out[l * l + l] = N * P[l][0];
      } else {
        double base = std::sqrt(2.0) * N * P[l][m];
        out[l * l + l + m] = base * std::cos(m * phi);
        out[l * l + l - m] = base * std::sin(m * phi);
      }
    }
  }
}

// Solve (G + 0) lambda = rhs with dense Cholesky; G symmetric positive definite.
std::vector<double> solve_spd(std::vector<double>& G, std::vector<double> rhs, int n) {
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j <= i; ++j) {
      double s = G[i * n + j];
      for (int k = 0; k < j; ++k) s -= G[i * n + k] * G[j * n + k];
      if (i == j) {
        if (s <= 0.0) throw std::runtime_error("sphere rule: Gram matrix not SPD");
        G[i * n + i] = std::sqrt(s);
      } else {
        G[i * n + j] = s / G[j * n + j];
      }
    }
  }
  for (int i = 0; i < n; ++i) {
    double s = rhs[i];
    for (int k = 0; k < i; ++k) s -= G[i * n + k] * rhs[k];
    rhs[i] = s / G[i * n + i];
  }
  for (int i = n - 1; i >= 0; --i) {
    double s = rhs[i];
    for (int k = i + 1; k < n; ++k) s -= G[k * n + i] * rhs[k];
    rhs[i] = s / G[i * n + i];
  }
  return rhs;
}

SphereRule make_sphere_rule(int d, int order, int n_nodes) {
  if (d != 2 && d != 3) throw std::invalid_argument("sphere_rule: d must be 2 or 3");
  if (order < 1) throw std::invalid_argument("sphere_rule: order must be >= 1");
  SphereRule rule;
  rule.dim = d;
  rule.order = order;
  if (d == 2) {
    int n = n_nodes > 0 ? n_nodes : std::max(2 * order + 2, 16);
    rule.nodes.resize(n);
    rule.weights.assign(n, kTwoPi / n);
    for (int i = 0; i < n; ++i) {
      double th = kTwoPi * i / n;
      rule.nodes[i] = {std::cos(th), std::sin(th), 0.0};
    }
    return rule;
  }
  int B = (order + 1) * (order + 1);
  int n = n_nodes > 0 ? n_nodes : std::max(3 * B, 128);
  rule.nodes.resize(n);
  rule.weights.assign(n, 4.0 * kPi / n);
  const double golden_angle = kPi * (3.0 - std::sqrt(5.0));
  for (int i = 0; i < n; ++i) {
    double z = 1.0 - (2.0 * i + 1.0) / n;
    double r = std::sqrt(std::max(0.0, 1.0 - z * z));
    double phi = golden_angle * i;
    rule.nodes[i] = {r * std::cos(phi), r * std::sin(phi), z};
  }
  // Least-norm weight correction enforcing exact spherical-harmonic moments
  // up to `order`:  w = w0 + Y^T lambda,  (Y Y^T) lambda = e - Y w0.
  std::vector<double> Y(static_cast<std::size_t>(B) * n);
  std::vector<double> ylm;
  for (int i = 0; i < n; ++i) {
    real_sph_harmonics(order, rule.nodes[i], ylm);
    for (int b = 0; b < B; ++b) Y[static_cast<std::size_t>(b) * n + i] = ylm[b];
  }
  std::vector<double> resid(B, 0.0);
  resid[0] = 4.0 * kPi / std::sqrt(4.0 * kPi);  // integral of Y00 = sqrt(4 pi)
  for (int b = 0; b < B; ++b) {
    double s = 0.0;
    for (int i = 0; i < n; ++i) s += Y[static_cast<std::size_t>(b) * n + i] * rule.weights[i];
    resid[b] -= s;
  }
  std::vector<double> G(static_cast<std::size_t>(B) * B, 0.0);
  for (int b = 0; b < B; ++b)
    for (int c = 0; c <= b; ++c) {
      double s = 0.0;
      for (int i = 0; i < n; ++i)
        s += Y[static_cast<std::size_t>(b) * n + i] * Y[static_cast<std::size_t>(c) * n + i];
      G[static_cast<std::size_t>(b) * B + c] = s;
      G[static_cast<std::size_t>(c) * B + b] = s;
    }
  std::vector<double> lambda = solve_spd(G, resid, B);
  for (int i = 0; i < n; ++i) {
    double corr = 0.0;
    for (int b = 0; b < B; ++b) corr += Y[static_cast<std::size_t>(b) * n + i] * lambda[b];
    rule.weights[i] += corr;
    if (rule.weights[i] <= 0.0)
      throw std::runtime_error("sphere_rule: nonpositive corrected weight; use more nodes");
  }
  return rule;
}

}  // namespace

const SphereRule& sphere_rule(int d, int order, int n_nodes) {
  static std::map<std::tuple<int, int, int>, SphereRule> cache;
  static std::mutex mu;
  std::lock_guard<std::mutex> lock(mu);
  auto key = std::make_tuple(d, order, n_nodes);
  auto it = cache.find(key);
  if (it == cache.end()) it = cache.emplace(key, make_sphere_rule(d, order, n_nodes)).first;
  return it->second;
}

// ---------------------------------------------------------------------------
// Radial Lorentzian grid
// ---------------------------------------------------------------------------

RadialGrid radial_lorentzian_grid(double c, double w, double r_max, int n) {
  if (!(0.0 < w && w < c && c < r_max))
    throw std::invalid_argument("radial_lorentzian_grid: need 0 < w < c < r_max");
  RadialGrid g;
  g.center = c;
  g.width = w;
  int n_core = std::max(16, n);
  int n_panel = 12;
  // Core window: r = c + w tan(u); the Lorentzian becomes flat in u.
  double w_edge = std::min(0.25 * std::min(c, r_max - c), 50.0 * w);
  Quad1D core = gauss_legendre_on(n_core, std::atan(-w_edge / w), std::atan(w_edge / w));
  for (std::size_t i = 0; i < core.size(); ++i) {
    double u = core.nodes[i];
    double r = c + w * std::tan(u);
    double jac = w / (std::cos(u) * std::cos(u));
    g.nodes.push_back(r);
    g.weights.push_back(core.weights[i] * jac);
  }
  // Background: geometric panels growing away from the window edges.
  auto add_geometric = [&g, n_panel](double from, double to, double w0) {
    double dir = to > from ? 1.0 : -1.0;
    double pos = from, width = w0;
    while (dir * (to - pos) > 1e-300) {
      double step = std::min(width, dir * (to - pos));
      double nxt = pos + dir * step;
      Quad1D q = gauss_legendre_on(n_panel, std::min(pos, nxt), std::max(pos, nxt));
      g.nodes.insert(g.nodes.end(), q.nodes.begin(), q.nodes.end());
      g.weights.insert(g.weights.end(), q.weights.begin(), q.weights.end());
      pos = nxt;
      width *= 1.6;
    }
  };
  add_geometric(c - w_edge, 0.0, w_edge);
  add_geometric(c + w_edge, r_max, w_edge);
  return g;
}

// ---------------------------------------------------------------------------
// Pole + oscillation panel rule
// ---------------------------------------------------------------------------

Quad1D pole_osc_rule(const PoleOscSpec& spec) {
  if (!(spec.b > spec.a)) throw std::invalid_argument("pole_osc_rule: empty interval");
  if (!(spec.pole_dist > 0.0)) throw std::invalid_argument("pole_osc_rule: pole_dist <= 0");
  const int level = std::clamp(spec.level, 0, 2);
  const int core_base[3] = {64, 110, 180};
  const int panel_pts[3] = {8, 12, 16};
  const double osc_cap[3] = {4.0, 6.5, 9.0};
  const double growth = 1.6;

  Quad1D out;
  const double span = spec.b - spec.a;
  const double beta = std::max(spec.beta, 0.0);
  const double cap = osc_cap[level] / std::max(beta, 1e-12);

  auto add_gl = [&out, &panel_pts, level](double a, double b) {
    if (b - a < 1e-300) return;
    Quad1D q = gauss_legendre_on(panel_pts[level], a, b);
    out.nodes.insert(out.nodes.end(), q.nodes.begin(), q.nodes.end());
    out.weights.insert(out.weights.end(), q.weights.begin(), q.weights.end());
  };
  auto add_geometric = [&](double from, double to, double w0) {
    // panels from `from` toward `to`, widths growing geometrically, capped.
    if (std::abs(to - from) < 1e-300) return;
    double dir = to > from ? 1.0 : -1.0;
    double pos = from;
    double w = w0;
    while (dir * (to - pos) > 1e-300) {
      double width = std::min({w, cap, dir * (to - pos)});
      double nxt = pos + dir * width;
      add_gl(std::min(pos, nxt), std::max(pos, nxt));
      pos = nxt;
      w *= growth;
    }
  };

  const double xr = spec.pole_re;
  const double dist = spec.pole_dist;
  // Inner window where the pole must be resolved by the arctan substitution.
  double w_in = std::max(40.0 * dist, 1e-9 * std::max(1.0, std::abs(xr)));
  w_in = std::min(w_in, 0.45 * span);
  const double lo = std::max(spec.a, xr - w_in);
  const double hi = std::min(spec.b, xr + w_in);
  if (lo < hi) {
    int n_core = core_base[level] + 8 * static_cast<int>(std::ceil(beta * (hi - lo)));
    n_core = std::min(n_core, 4000);
    double u_lo = std::atan((lo - xr) / dist);
    double u_hi = std::atan((hi - xr) / dist);
    Quad1D core = gauss_legendre_on(n_core, u_lo, u_hi);
    for (std::size_t i = 0; i < core.size(); ++i) {
      double u = core.nodes[i];
      double r = xr + dist * std::tan(u);
      double jac = dist / (std::cos(u) * std::cos(u));
      out.nodes.push_back(r);
      out.weights.push_back(core.weights[i] * jac);
    }
    add_geometric(lo, spec.a, 0.5 * w_in);
    add_geometric(hi, spec.b, 0.5 * w_in);
  } else {
    // Pole outside the interval: refine toward the nearer endpoint.
    double gap = std::max({std::abs(spec.a - xr), 1e-6 * span, dist});
    if (xr <= spec.a) {
      add_geometric(spec.a, spec.b, std::min(gap, 0.25 * span));
    } else {
      gap = std::max({std::abs(spec.b - xr), 1e-6 * span, dist});
      add_geometric(spec.b, spec.a, std::min(gap, 0.25 * span));
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Pairwise reductions
// ---------------------------------------------------------------------------

namespace {
template <typename T>
T pairwise_impl(const T* data, std::size_t n) {
  if (n == 0) return T(0);
  if (n == 1) return data[0];
  if (n == 2) return data[0] + data[1];
  std::size_t half = n / 2;
  return pairwise_impl(data, half) + pairwise_impl(data + half, n - half);
}
}  // namespace

double pairwise_sum(const std::vector<double>& v) { return pairwise_impl(v.data(), v.size()); }
Complex pairwise_sum(const std::vector<Complex>& v) { return pairwise_impl(v.data(), v.size()); }

}  // namespace helmrays::quad
