#include "helmrays/oscillatory.hpp"

#include <cmath>
#include <stdexcept>

#include "helmrays/quadrature.hpp"

namespace helmrays::osc {

void SweepSeries::push(double eps, Complex value, double error) {
  if (!(eps > 0.0)) throw std::invalid_argument("sweep: eps must be positive");
  if (!points.empty() && !(eps < points.back().eps))
    throw std::invalid_argument("sweep: eps grid must be strictly decreasing");
  if (error < 0.0) throw std::invalid_argument("sweep: negative error");
  points.push_back({eps, value, error});
}

LemmaLResult lemma_l_integral(const model::FieldExpr& w, double delta, double eps, double gamma,
                              double q, int level) {
  if (w.dim != 1) throw std::invalid_argument("lemma_l_integral: 1D test function expected");
  if (!(delta > 0.0 && eps > 0.0 && q > 0.0))
    throw std::invalid_argument("lemma_l_integral: need delta, eps, q > 0");
  const double eta = std::pow(eps, 1.0 + gamma);  // eps * alpha_eps
  const double beta = q / eps;
  auto integrand = [&](double r) {
    return std::exp(-kI * (beta * r)) * w.eval({r, 0, 0}) / Complex(-r, eta);
  };
  auto value_at = [&](int lvl) {
    quad::PoleOscSpec spec{-delta, delta, 0.0, eta, beta, lvl};
    auto rule = quad::pole_osc_rule(spec);
    std::vector<Complex> vals(rule.size());
    for (std::size_t i = 0; i < rule.size(); ++i)
      vals[i] = rule.weights[i] * integrand(rule.nodes[i]);
    return quad::pairwise_sum(vals);
  };
  LemmaLResult res;
  res.value = value_at(level);
  res.error = std::abs(res.value - value_at(std::max(0, level - 1)));
  return res;
}

Complex pv_delta_eval(const model::FieldExpr& psi, double eta, int level) {
  if (psi.dim != 1) throw std::invalid_argument("pv_delta_eval: 1D field expected");
  if (!(eta > 0.0)) throw std::invalid_argument("pv_delta_eval: eta must be positive");
  double X = 1.0, beta = 0.0;
  for (const auto& a : psi.atoms) {
    X = std::max(X, std::abs(a.center[0]) + 12.0 / std::sqrt(a.s.real()));
    beta = std::max(beta, std::abs(a.mod[0]));
  }
  quad::PoleOscSpec spec{-X, X, 0.0, eta, beta, level};
  auto rule = quad::pole_osc_rule(spec);
  std::vector<Complex> vals(rule.size());
  for (std::size_t i = 0; i < rule.size(); ++i) {
    double x = rule.nodes[i];
    vals[i] = rule.weights[i] * psi.eval({x, 0, 0}) / Complex(x, eta);
  }
  return quad::pairwise_sum(vals);
}

PvLimit pv_delta_limit(const model::FieldExpr& psi, double eta0) {
  Complex u1 = pv_delta_eval(psi, eta0, 2);
  Complex u2 = pv_delta_eval(psi, 0.5 * eta0, 2);
  Complex u3 = pv_delta_eval(psi, 0.25 * eta0, 2);
  Complex r1 = 2.0 * u2 - u1;
  Complex r2 = 2.0 * u3 - u2;
  return {(4.0 * r2 - r1) / 3.0, std::abs(r2 - r1) / 3.0};
}

namespace {

/// Linear LS of y против basis {1, t}; returns (intercept, slope).
std::pair<double, double> line_fit(const std::vector<double>& t, const std::vector<double>& y) {
  double n = double(t.size()), st = 0, sy = 0, stt = 0, sty = 0;
  for (std::size_t i = 0; i < t.size(); ++i) {
    st += t[i];
    sy += y[i];
    stt += t[i] * t[i];
    sty += t[i] * y[i];
  }
  double det = n * stt - st * st;
  double slope = (n * sty - st * sy) / det;
  double icept = (sy - slope * st) / n;
  return {icept, slope};
}

/// For fixed p, the LS fit of value = L + C eps^p (complex L, C); returns SSE.
double fit_for_rate(const std::vector<double>& eps, const std::vector<Complex>& v, double p,
                    Complex& L, Complex& C) {
  double n = double(eps.size());
  double sb = 0, sbb = 0;
  Complex sv = 0, svb = 0;
  for (std::size_t i = 0; i < eps.size(); ++i) {
    double b = std::pow(eps[i], p);
    sb += b;
    sbb += b * b;
    sv += v[i];
    svb += v[i] * b;
  }
  double det = n * sbb - sb * sb;
  if (std::abs(det) < 1e-300) {
    L = sv / n;
    C = 0.0;
    return 1e300;
  }
  C = (n * svb - sb * sv) / det;
  L = (sv - C * sb) / n;
  double sse = 0.0;
  for (std::size_t i = 0; i < eps.size(); ++i)
    sse += std::norm(v[i] - L - C * std::pow(eps[i], p));
  return sse;
}

}  // namespace

RateFit rate_fit(const SweepSeries& s, std::optional<Complex> limit_hypothesis) {
  if (s.points.size() < 4) throw std::invalid_argument("rate_fit: need >= 4 sweep points");
  std::vector<double> eps;
  std::vector<Complex> v;
  for (const auto& p : s.points) {
    eps.push_back(p.eps);
    v.push_back(p.value);
  }
  RateFit fit;
  if (limit_hypothesis) {
    fit.limit = *limit_hypothesis;
    std::vector<double> t, y;
    double prev = 1e300;
    for (std::size_t i = 0; i < eps.size(); ++i) {
      double d = std::abs(v[i] - fit.limit);
      if (d > prev) fit.monotone = false;
      prev = d;
      if (d > 0.0) {
        t.push_back(std::log(eps[i]));
        y.push_back(std::log(d));
      }
    }
    if (t.size() < 2) {  // values sit exactly on the hypothesis
      fit.rate = 0.0;
      fit.constant = 0.0;
      return fit;
    }
    auto [icept, slope] = line_fit(t, y);
    fit.rate = slope;
    fit.constant = std::exp(icept);
    for (std::size_t i = 0; i < t.size(); ++i)
      fit.residual = std::max(fit.residual, std::abs(std::exp(y[i]) -
                                                     std::exp(icept + slope * t[i])));
    return fit;
  }
  // joint fit: golden-section over the rate
  double lo = 0.05, hi = 4.0;
  Complex L, C;
  for (int it = 0; it < 120; ++it) {
    double m1 = lo + (hi - lo) / 3.0, m2 = hi - (hi - lo) / 3.0;
    if (fit_for_rate(eps, v, m1, L, C) < fit_for_rate(eps, v, m2, L, C))
      hi = m2;
    else
      lo = m1;
  }
  fit.rate = 0.5 * (lo + hi);
  double sse = fit_for_rate(eps, v, fit.rate, L, C);
  fit.limit = L;
  fit.constant = std::abs(C);
  fit.residual = std::sqrt(sse / double(eps.size()));
  double prev = 1e300;
  for (std::size_t i = 0; i < eps.size(); ++i) {
    double d = std::abs(v[i] - L);
    if (d > prev * (1.0 + 1e-12)) fit.monotone = false;
    prev = d;
  }
  return fit;
}

}  // namespace helmrays::osc
