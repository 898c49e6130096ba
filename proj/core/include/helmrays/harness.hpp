#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "helmrays/liouville.hpp"
#include "helmrays/model.hpp"
#include "helmrays/wigner.hpp"

namespace helmrays::harness {

/// Quadrature/sampling budget of one experiment cell.
struct QuadConfig {
  long mc_samples = 1'500'000;
  std::uint64_t seed = 1;
  int jobs = 1;
  int det_level = 1;
  double tol = 1e-6;
  bool record_timing = true;
};

struct ResultRow {
  std::string scenario_id;
  double epsilon = 0.0;
  std::string functional;
  std::string observable_id;
  double value_re = 0.0;
  double value_im = 0.0;
  double error = 0.0;
  long n_samples = 0;
  std::uint64_t seed = 0;
  double wall_ms = 0.0;
};

std::string csv_header();
std::string to_csv_line(const ResultRow& r);  // 17 significant digits
void write_csv(const std::vector<ResultRow>& rows, const std::string& path);

/// The scenario every acceptance number is pinned to: d = 3, q1 = (2,0,0),
/// gamma = 1, N = 2.1, unit Gaussian profiles, eps in {0.4,...,0.025}.
model::Scenario reference_scenario();

/// Named observables shared by the CLI and the acceptance suite.
wigner::Observable observable_by_name(const std::string& name);
std::vector<std::string> observable_names();

/// Registered sweep functionals (value per (eps, observable) cell).
std::vector<std::string> registry_names();

struct ExperimentSpec {
  model::Scenario scenario;
  std::string functional;
  std::vector<std::string> observables;
  std::vector<double> epsilons;   // used when use_scenario_grid is false
  bool use_scenario_grid = true;  // otherwise run exactly `epsilons` (may be empty)
  QuadConfig quad;
};

struct RunResult {
  std::vector<ResultRow> rows;
  std::vector<std::string> failures;  // per-cell failures; the run continues
  long cache_hits = 0;
};

/// Executes all (eps x observable) cells with per-cell derived seeds and a
/// content-hash cache; rows come back in canonical (functional, observable,
/// eps-descending) order.
RunResult run(const ExperimentSpec& spec);

/// Stable content hash of a cell key (scenario, functional, observable,
/// quad, eps, seed).
std::uint64_t cell_hash(const ExperimentSpec& spec, const std::string& obs, double eps);

}  // namespace helmrays::harness

namespace helmrays::acceptance {

struct CriterionResult {
  int id = 0;
  std::string name;
  bool pass = false;
  bool informative = false;  // reported, not gating
  std::string details;
};

struct Options {
  long mc_samples = 1'500'000;
  std::uint64_t seed = 20240801;
  int jobs = 1;
  bool quick = false;  // trimmed budgets (smoke runs)
};

/// Runs every acceptance criterion on the reference scenario, printing one
/// pass/fail line per criterion to `log` when given.
std::vector<CriterionResult> run_all(const Options& opt, std::ostream* log);

/// Identity-only subset (criteria that need no sweeps).
std::vector<CriterionResult> run_identities(const Options& opt, std::ostream* log);

std::string report_json(const std::vector<CriterionResult>& results);
bool all_passed(const std::vector<CriterionResult>& results);

}  // namespace helmrays::acceptance
