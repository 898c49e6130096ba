#include "helmrays/norms.hpp"

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace helmrays::norms {

namespace {
constexpr double kPi = 3.14159265358979323846;
}

std::pair<double, double> RingDecomposition::ring_bounds(int j) {
  if (j < -1) throw std::invalid_argument("ring index must be >= -1");
  if (j == -1) return {0.0, 1.0};
  return {std::pow(2.0, j), std::pow(2.0, j + 1)};
}

double DecayMeta::envelope(double r) const {
  if (kind == Kind::gaussian) {
    double u = std::max(0.0, r - radius0);
    return amplitude * std::exp(-0.5 * rate * u * u);
  }
  if (r <= radius0) return amplitude;
  return amplitude * std::pow(radius0 / r, rate);
}

EvaluableField from_field(const FieldExpr& f) {
  EvaluableField e;
  e.dim = f.dim;
  e.eval = [f](const Vec3& x) { return f.eval(x); };
  // Envelope data straight off the atoms.
  double rate = 1e30, r0 = 0.0;
  for (const auto& a : f.atoms) {
    rate = std::min(rate, a.s.real());
    r0 = std::max(r0, norm(a.center) + 1.0);
  }
  e.decay.kind = DecayMeta::Kind::gaussian;
  e.decay.rate = f.atoms.empty() ? 1.0 : rate;
  e.decay.radius0 = r0;
  e.decay.amplitude = abs_envelope_at_radius(f, r0);
  return e;
}

namespace {

/// int_{C(j)} |u|^2 dx by per-ring radial Gauss-Legendre times a sphere rule.
double ring_l2sq(const EvaluableField& u, int j, const NormQuad& q) {
  auto [lo, hi] = RingDecomposition::ring_bounds(j);
  const auto& sph = quad::sphere_rule(u.dim == 2 ? 2 : 3, q.sphere_order);
  auto rad = quad::gauss_legendre_on(q.n_radial, lo, hi);
  double total = 0.0;
  if (u.dim == 1) {
    for (std::size_t i = 0; i < rad.size(); ++i) {
      double r = rad.nodes[i];
      total += rad.weights[i] *
               (std::norm(u.eval({r, 0, 0})) + std::norm(u.eval({-r, 0, 0})));
    }
    return total;
  }
  for (std::size_t i = 0; i < rad.size(); ++i) {
    double r = rad.nodes[i], rw = rad.weights[i];
    double meas = (u.dim == 3) ? r * r : r;
    double shell = 0.0;
    for (std::size_t k = 0; k < sph.nodes.size(); ++k)
      shell += sph.weights[k] * std::norm(u.eval(r * sph.nodes[k]));
    total += rw * meas * shell;
  }
  return total;
}

/// Certified bound on (2^{j+1} int_{C(j)} |f|^2)^{1/2} from the envelope.
double ring_term_bound(const DecayMeta& d, int j, int dim) {
  auto [lo, hi] = RingDecomposition::ring_bounds(j);
  double env = d.envelope(lo);
  double vol;
  if (dim == 3)
    vol = 4.0 * kPi / 3.0 * (hi * hi * hi - lo * lo * lo);
  else if (dim == 2)
    vol = kPi * (hi * hi - lo * lo);
  else
    vol = 2.0 * (hi - lo);
  return std::sqrt(std::pow(2.0, j + 1) * env * env * vol);
}

}  // namespace

BNormResult b_norm(const EvaluableField& f, const RingDecomposition& rd, const NormQuad& q) {
  BNormResult res;
  double sum = 0.0;
  int j = -1;
  for (; j <= rd.j_max; ++j) {
    // Stop as soon as the envelope certifies the remaining rings.
    double tail = 0.0;
    for (int jj = j; jj <= j + 120; ++jj) tail += ring_term_bound(f.decay, jj, f.dim);
    if (tail < q.tail_tol) {
      res.tail_bound = tail;
      break;
    }
    double term = std::sqrt(std::pow(2.0, j + 1) * ring_l2sq(f, j, q));
    res.ring_terms.push_back(term);
    sum += term;
  }
  if (j > rd.j_max) {
    double tail = 0.0;
    for (int jj = j; jj <= j + 120; ++jj) tail += ring_term_bound(f.decay, jj, f.dim);
    res.tail_bound = tail;
    if (tail >= q.tail_tol) {
      std::ostringstream os;
      os << "b_norm: tail bound " << tail << " beyond ring " << rd.j_max
         << " exceeds tolerance " << q.tail_tol << "; increase j_max";
      throw std::runtime_error(os.str());
    }
  }
  res.j_used = j - 1;
  res.value = sum;
  return res;
}

BStarResult bstar_norm(const EvaluableField& u, const RingDecomposition& rd, const NormQuad& q) {
  BStarResult res;
  double best = -1.0;
  for (int j = -1; j <= rd.j_max; ++j) {
    double term = std::sqrt(std::pow(2.0, -j) * ring_l2sq(u, j, q));
    res.ring_terms.push_back(term);
    if (term > best) {
      best = term;
      res.argmax_j = j;
    }
  }
  res.value = best;
  res.attained_interior = res.argmax_j < rd.j_max;
  return res;
}

double weighted_l2(const EvaluableField& u, double exponent, const RingDecomposition& rd,
                   const NormQuad& q) {
  double sum = 0.0;
  std::vector<double> contrib;
  auto weighted_eval = [&u, exponent](const Vec3& x) {
    double w = std::pow(1.0 + norm2(x), 0.5 * exponent);
    return w * u.eval(x);
  };
  EvaluableField w{weighted_eval, u.dim, u.decay};
  for (int j = -1; j <= rd.j_max; ++j) {
    double c = ring_l2sq(w, j, q);
    contrib.push_back(c);
    sum += c;
    if (j >= 2 && c < 1e-14 * sum) break;
  }
  std::size_t n = contrib.size();
  if (n >= 4 && contrib[n - 1] > contrib[n - 2] && contrib[n - 2] > contrib[n - 3] &&
      contrib[n - 1] > 1e-12 * sum)
    throw std::runtime_error("weighted_l2: partial sums do not stabilize (divergent weight)");
  return std::sqrt(sum);
}

double trace_functional(const FieldExpr& f, double tol) {
  if (f.dim != 3) throw std::invalid_argument("trace_functional: d = 3 only");
  // g(x1) = int |f|^2 dx2 dx3 is itself a closed-form 1D atom sum.
  FieldExpr sq = multiply(f, model::conj(f));
  std::vector<model::GaussianAtom> marg;
  for (const auto& a : sq.atoms) {
    if (!a.plain()) throw std::invalid_argument("trace_functional: plain atoms only");
    model::GaussianAtom m = a;
    Complex extra = 1.0;
    for (int j = 1; j < 3; ++j) {
      // int exp(-s(x_j - m_j)^2/2 + i k_j x_j) dx_j
      extra *= std::sqrt(2.0 * kPi / a.s) *
               std::exp(kI * (a.mod[j] * a.center[j]) - 0.5 * a.mod[j] * a.mod[j] / a.s);
      m.center[j] = 0.0;
      m.mod[j] = 0.0;
    }
    m.amp *= extra;
    marg.push_back(m);
  }
  auto g = [&marg](double x1) {
    Complex v = 0.0;
    for (const auto& m : marg) v += m.eval({x1, 0.0, 0.0});
    return std::max(0.0, v.real());
  };
  double lo = -1.0, hi = 1.0;
  for (const auto& a : f.atoms) {
    double sig = std::sqrt(2.0 / a.s.real());
    lo = std::min(lo, a.center[0] - 10.0 * sig);
    hi = std::max(hi, a.center[0] + 10.0 * sig);
  }
  auto r = quad::adaptive_1d([&g](double x) { return Complex(std::sqrt(g(x))); }, lo, hi, tol);
  return r.value.real();
}

double trace_functional(const EvaluableField& f, double radius, double tol) {
  if (f.dim != 3) throw std::invalid_argument("trace_functional: d = 3 only");
  auto slice_l2 = [&](double x1) {
    // polar quadrature in the (x2,x3) plane
    auto rad = quad::gauss_legendre_on(72, 0.0, radius);
    const auto& ang = quad::sphere_rule(2, 16);
    double s = 0.0;
    for (std::size_t i = 0; i < rad.size(); ++i) {
      double rho = rad.nodes[i];
      double ring = 0.0;
      for (std::size_t k = 0; k < ang.nodes.size(); ++k)
        ring += ang.weights[k] *
                std::norm(f.eval({x1, rho * ang.nodes[k][0], rho * ang.nodes[k][1]}));
      s += rad.weights[i] * rho * ring;
    }
    return std::sqrt(std::max(0.0, s));
  };
  auto r = quad::adaptive_1d([&](double x) { return Complex(slice_l2(x)); }, -radius, radius,
                             tol, 4000);
  return r.value.real();
}

double xlambda_norm(const FieldExpr& phi, const FieldExpr& psi, double lambda, double tol) {
  FieldExpr t = model::fourier_transform(psi);
  // sup over x of (1+|x|+s)^{1+lambda} |phi(x)|, via the per-atom radial
  // envelope M(r) = sum_i |amp_i| e^{-Re(s_i)(r - |m_i|)^2/2}.
  struct Env {
    double amp, s, m;
  };
  std::vector<Env> envs;
  for (const auto& a : phi.atoms) {
    if (!a.plain()) throw std::invalid_argument("xlambda_norm: plain atoms only");
    envs.push_back({std::abs(a.amp * a.poly.constant_value()), a.s.real(), norm(a.center)});
  }
  double t_hi = 1.0;
  for (const auto& e : envs) t_hi = std::max(t_hi, e.m + 12.0 / std::sqrt(e.s));
  auto sup_x = [&](double s) {
    auto val = [&](double r) {
      double m = 0.0;
      for (const auto& e : envs) m += e.amp * std::exp(-0.5 * e.s * (r - e.m) * (r - e.m));
      return std::pow(1.0 + r + s, 1.0 + lambda) * m;
    };
    // coarse scan, then ternary refinement around the best bracket
    int n = 240;
    double best = val(0.0);
    int ibest = 0;
    for (int i = 1; i <= n; ++i) {
      double v = val(t_hi * i / n);
      if (v > best) {
        best = v;
        ibest = i;
      }
    }
    double lo = t_hi * std::max(0, ibest - 1) / n;
    double hi = t_hi * std::min(n, ibest + 1) / n;
    for (int it = 0; it < 90; ++it) {
      double m1 = lo + (hi - lo) / 3.0, m2 = hi - (hi - lo) / 3.0;
      if (val(m1) < val(m2))
        lo = m1;
      else
        hi = m2;
    }
    return std::max(best, val(0.5 * (lo + hi)));
  };
  // radial integral over y with the angular mean of |t|
  double R = 1.0;
  for (const auto& a : t.atoms)
    R = std::max(R, norm(a.center) + 12.0 / std::sqrt(std::abs(a.s.real()) + 1e-12));
  const auto& sph = quad::sphere_rule(psi.dim == 2 ? 2 : 3, 8);
  auto integrand = [&](double s) {
    double ang = 0.0;
    for (std::size_t k = 0; k < sph.nodes.size(); ++k)
      ang += sph.weights[k] * std::abs(t.eval(s * sph.nodes[k]));
    double meas = (psi.dim == 3) ? s * s : (psi.dim == 2 ? s : 1.0);
    return Complex(sup_x(s) * ang * meas);
  };
  auto r = quad::adaptive_1d(integrand, 0.0, R, tol, 4000);
  return r.value.real();
}

}  // namespace helmrays::norms
