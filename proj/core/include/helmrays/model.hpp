#pragma once

#include <string>
#include <vector>

#include "helmrays/atom.hpp"

namespace helmrays::model {

/// The fixed Fourier convention of the whole artifact:
///   (F u)(xi)    = (2pi)^{-d} \int e^{-i x.xi} u(x) dx
///   (F^{-1} v)(x) = \int e^{i x.xi} v(xi) dxi
/// and hence \int u conj(v) dx = (2pi)^d \int (Fu) conj(Fv) dxi.
/// Every constant downstream is derived from these two lines.
struct FourierConvention {
  static double forward_prefactor(int d);   // (2pi)^{-d}
  static double parseval_prefactor(int d);  // (2pi)^{+d}
};

/// A full problem instance: two source profiles concentrating at 0 and q1
/// at scale eps, the damping exponent gamma (alpha_eps = eps^gamma), and
/// the weight exponent N of the moment hypothesis.
struct Scenario {
  int d = 3;
  std::vector<double> epsilons;
  double gamma = 1.0;
  Vec3 q1{2.0, 0.0, 0.0};
  FieldExpr S0;
  FieldExpr S1;
  double N = 2.1;
  std::string id = "scenario";

  double alpha(double eps) const;      // alpha_eps = eps^gamma
  double damping(double eps) const;    // eta = eps * alpha_eps
};

struct ValidationReport {
  bool ok = true;
  double h3_threshold = 0.0;  // 1/2 + 3 gamma / (gamma + 1)
  std::vector<std::string> violations;

  std::string summary() const;
};

/// Accepts iff q1 != 0, epsilons strictly decreasing and positive,
/// gamma > 0 and N > 1/2 + 3 gamma/(gamma+1). Violations are listed by
/// hypothesis name (H1 / H3 / geometry / epsilons).
ValidationReport validate(const Scenario& s);

/// Scenario (de)serialization; one human-readable JSON config with fields
/// d, epsilons, gamma, q1, N and per-source atom lists keyed
/// amplitude_re, amplitude_im, center, inv_variance, modulation.
Scenario load_scenario(const std::string& path);
void save_scenario(const Scenario& s, const std::string& path);
Scenario parse_scenario_json(const std::string& text);
std::string scenario_to_json(const Scenario& s);

}  // namespace helmrays::model
