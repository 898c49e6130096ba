#pragma once

#include <optional>
#include <string>
#include <vector>

#include "helmrays/atom.hpp"

namespace helmrays::osc {

struct SweepPoint {
  double eps = 0.0;
  Complex value{0.0};
  double error = 0.0;
};

/// A finite eps-sweep of one functional; the carrier of every limit claim.
struct SweepSeries {
  std::string functional;
  std::string scenario_id;
  std::vector<SweepPoint> points;  // eps strictly decreasing

  void push(double eps, Complex value, double error);
};

struct RateFit {
  Complex limit{0.0};
  double rate = 0.0;
  double constant = 0.0;   // |C| in  value ~ limit + C eps^rate
  double residual = 0.0;   // max deviation of the fit from the data
  bool monotone = true;    // |value - limit| decreasing along the sweep
};

/// Scalar model integral of the two-source analysis:
///   \int_{|r| <= delta} e^{-i (q/eps) r} w(r) / (-r + i eps^{1+gamma}) dr.
struct LemmaLResult {
  Complex value{0.0};
  double error = 0.0;
};
LemmaLResult lemma_l_integral(const model::FieldExpr& w, double delta, double eps, double gamma,
                              double q, int level = 1);

/// \int psi(x) / (x + i eta) dx over R (1D psi).
Complex pv_delta_eval(const model::FieldExpr& psi, double eta, int level = 1);

/// Richardson eta -> 0 limit of pv_delta_eval; converges to
/// p.v. \int psi/x - i pi psi(0).
struct PvLimit {
  Complex value{0.0};
  double error = 0.0;
};
PvLimit pv_delta_limit(const model::FieldExpr& psi, double eta0 = 1e-2);

/// Fit value ~ limit + C eps^rate on a sweep. With a limit hypothesis the
/// rate comes from log-log regression of |value - hypothesis|; otherwise
/// (limit, C, rate) are fitted jointly. Non-monotone residuals are flagged
/// and no rate should be trusted then.
RateFit rate_fit(const SweepSeries& s, std::optional<Complex> limit_hypothesis = {});

}  // namespace helmrays::osc
