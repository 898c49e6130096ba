#include "helmrays/harness.hpp"

#include <chrono>
#include <cstdio>
#include <fstream>
#include <map>
#include <stdexcept>

#include "helmrays/helmholtz.hpp"
#include "helmrays/norms.hpp"
#include "helmrays/oscillatory.hpp"

namespace helmrays::harness {

std::string csv_header() {
  return "scenario_id,epsilon,functional,observable_id,value_re,value_im,error,n_samples,seed,"
         "wall_ms";
}

namespace {
std::string fmt17(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}
}  // namespace

std::string to_csv_line(const ResultRow& r) {
  std::string s;
  s += r.scenario_id + ",";
  s += fmt17(r.epsilon) + ",";
  s += r.functional + ",";
  s += r.observable_id + ",";
  s += fmt17(r.value_re) + ",";
  s += fmt17(r.value_im) + ",";
  s += fmt17(r.error) + ",";
  s += std::to_string(r.n_samples) + ",";
  s += std::to_string(r.seed) + ",";
  s += fmt17(r.wall_ms);
  return s;
}

void write_csv(const std::vector<ResultRow>& rows, const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write CSV: " + path);
  out << csv_header() << "\n";
  for (const auto& r : rows) out << to_csv_line(r) << "\n";
}

model::Scenario reference_scenario() {
  model::Scenario s;
  s.d = 3;
  s.epsilons = {0.4, 0.2, 0.1, 0.05, 0.025};
  s.gamma = 1.0;
  s.q1 = {2.0, 0.0, 0.0};
  s.N = 2.1;
  s.S0 = model::gaussian(3, 1.0, 1.0);
  s.S1 = model::gaussian(3, 1.0, 1.0);
  s.id = "reference";
  return s;
}

namespace {

using model::gaussian;

std::map<std::string, wigner::Observable> build_observables() {
  std::map<std::string, wigner::Observable> m;
  auto psi_unit = gaussian(3, 1.0, 1.0);
  m["g0"] = wigner::make_observable(gaussian(3, 1.0, 1.0), psi_unit, "g0");
  m["gq1"] = wigner::make_observable(gaussian(3, 1.0, 1.0, {2.0, 0, 0}), psi_unit, "gq1");
  m["mid"] = wigner::make_observable(gaussian(3, 1.0, 2.0, {1.0, 0, 0}), psi_unit, "mid");
  m["offsphere"] = wigner::make_observable(gaussian(3, 1.0, 1.0, {1.0, 0, 0}),
                                           gaussian(3, 1.0, 70.0), "offsphere");
  m["offzero"] = wigner::make_observable(gaussian(3, 1.0, 2.0, {0.5, 0, 0}),
                                         gaussian(3, 1.0, 30.0, {1.5, 0, 0}), "offzero");
  m["dir_plus"] = wigner::make_observable(gaussian(3, 1.0, 4.0, {3.0, 0, 0}),
                                          gaussian(3, 1.0, 4.0, {1.0, 0, 0}), "dir_plus");
  m["v0"] = wigner::make_observable(gaussian(3, 1.0, 1.0), psi_unit, "v0");
  m["v1"] = wigner::make_observable(gaussian(3, 1.0, 1.5, {1.0, 0, 0}), psi_unit, "v1");
  m["v2"] = wigner::make_observable(gaussian(3, 1.0, 1.0, {0, 0.4, 0}, {0, 0.5, 0}), psi_unit,
                                    "v2");
  return m;
}

const std::map<std::string, wigner::Observable>& observables() {
  static const auto m = build_observables();
  return m;
}

}  // namespace

wigner::Observable observable_by_name(const std::string& name) {
  auto it = observables().find(name);
  if (it == observables().end())
    throw std::invalid_argument("unknown observable: " + name);
  return it->second;
}

std::vector<std::string> observable_names() {
  std::vector<std::string> names;
  for (const auto& [k, v] : observables()) names.push_back(k);
  return names;
}

std::vector<std::string> registry_names() {
  return {"bstar_w0",      "pair_aeps",    "wigner_diag", "cross_term",
          "source_term0",  "source_term1", "transport_residual"};
}

std::uint64_t cell_hash(const ExperimentSpec& spec, const std::string& obs, double eps) {
  // FNV-1a over the canonical key text
  std::string key = spec.scenario.id + "|" + spec.functional + "|" + obs + "|" +
                    fmt17(eps) + "|" + std::to_string(spec.quad.mc_samples) + "|" +
                    std::to_string(spec.quad.seed) + "|" + std::to_string(spec.quad.det_level);
  std::uint64_t h = 1469598103934665603ULL;
  for (unsigned char c : key) {
    h ^= c;
    h *= 1099511628211ULL;
  }
  return h;
}

namespace {

ResultRow evaluate_cell(const ExperimentSpec& spec, const std::string& obs_name, double eps) {
  const model::Scenario& s = spec.scenario;
  ResultRow row;
  row.scenario_id = s.id;
  row.epsilon = eps;
  row.functional = spec.functional;
  row.observable_id = obs_name;
  row.seed = cell_hash(spec, obs_name, eps);

  wigner::WignerQuad wq;
  wq.n_samples = spec.quad.mc_samples;
  wq.seed = row.seed;
  wq.n_jobs = spec.quad.jobs;
  wq.det_level = spec.quad.det_level;

  Complex value = 0.0;
  double error = 0.0;
  long n_samples = 0;

  if (spec.functional == "bstar_w0") {
    norms::RingDecomposition rd{12};
    auto field = helmholtz::rescaled_profile_field(s, eps, 0, 260.0);
    auto r = norms::bstar_norm(field, rd);
    value = r.value;
  } else if (spec.functional == "pair_aeps") {
    auto v = observable_by_name(obs_name);
    auto aeps = helmholtz::solve_rescaled_single(s, eps, 0, 1);
    auto r = helmholtz::pairing_err(aeps, v.phi, helmholtz::EvalQuad{spec.quad.det_level});
    value = r.value;
    error = r.error;
  } else if (spec.functional == "wigner_diag") {
    auto a = observable_by_name(obs_name);
    auto u = helmholtz::solve_full(s, eps);
    auto r = wigner::wigner_pairing(u, u, a, eps, wq);
    value = r.value;
    error = r.error;
    n_samples = r.n_samples;
  } else if (spec.functional == "cross_term") {
    auto a = observable_by_name(obs_name);
    auto r = wigner::cross_term(s, eps, a, wq);
    value = r.value;
    error = r.error;
    n_samples = r.n_samples;
  } else if (spec.functional == "source_term0" || spec.functional == "source_term1") {
    auto a = observable_by_name(obs_name);
    int which = spec.functional.back() == '0' ? 0 : 1;
    auto r = wigner::source_term_pairing(s, eps, which, a, spec.quad.det_level);
    value = r.value;
    error = r.error;
  } else if (spec.functional == "transport_residual") {
    auto a = observable_by_name(obs_name);
    auto r = wigner::transport_identity_residual(s, eps, a, wq);
    value = r.residual;
    error = r.combined_error;
    n_samples = spec.quad.mc_samples;
  } else {
    throw std::invalid_argument("unknown functional: " + spec.functional);
  }
  row.value_re = value.real();
  row.value_im = value.imag();
  row.error = error;
  row.n_samples = n_samples;
  return row;
}

}  // namespace

RunResult run(const ExperimentSpec& spec) {
  auto rep = model::validate(spec.scenario);
  if (!rep.ok) throw std::invalid_argument("scenario rejected: " + rep.summary());
  RunResult out;
  std::vector<double> eps = spec.use_scenario_grid ? spec.scenario.epsilons : spec.epsilons;
  std::vector<std::string> obs = spec.observables;
  if (obs.empty()) obs = {"g0"};
  std::map<std::uint64_t, ResultRow> cache;
  for (const auto& o : obs) {
    for (double e : eps) {
      std::uint64_t h = cell_hash(spec, o, e);
      auto hit = cache.find(h);
      if (hit != cache.end()) {
        out.rows.push_back(hit->second);
        ++out.cache_hits;
        continue;
      }
      try {
        auto t0 = std::chrono::steady_clock::now();
        ResultRow row = evaluate_cell(spec, o, e);
        auto t1 = std::chrono::steady_clock::now();
        if (spec.quad.record_timing)
          row.wall_ms = std::chrono::duration<double, std::milli>(t1 - t0).count();
        cache.emplace(h, row);
        out.rows.push_back(row);
      } catch (const std::exception& ex) {
        out.failures.push_back(spec.functional + "/" + o + "/eps=" + fmt17(e) + ": " +
                               ex.what());
      }
    }
  }
  return out;
}

}  // namespace helmrays::harness
