// Command-line front end: solve / pair / wigner / mu / sweep / verify / export.
// Exit codes: 0 success, 1 assertion failure, 2 configuration error.

#include <CLI11.hpp>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <sstream>

#include "helmrays/harness.hpp"
#include "helmrays/helmholtz.hpp"
#include "helmrays/oscillatory.hpp"

using namespace helmrays;

namespace {

model::Scenario load_or_reference(const std::string& config) {
  if (config.empty()) return harness::reference_scenario();
  return model::load_scenario(config);
}

Vec3 parse_vec(const std::string& s) {
  Vec3 v{0, 0, 0};
  std::stringstream ss(s);
  std::string tok;
  int i = 0;
  while (std::getline(ss, tok, ',') && i < 3) v[i++] = std::stod(tok);
  return v;
}

std::string out_path(const std::string& dir, const std::string& name) {
  if (dir.empty()) return name;
  std::filesystem::create_directories(dir);
  return (std::filesystem::path(dir) / name).string();
}

void print_sweep_summary(const std::vector<harness::ResultRow>& rows) {
  std::map<std::string, osc::SweepSeries> series;
  for (const auto& r : rows) {
    auto& s = series[r.functional + "/" + r.observable_id];
    s.functional = r.functional;
    if (s.points.empty() || r.epsilon < s.points.back().eps)
      s.push(r.epsilon, Complex(r.value_re, r.value_im), r.error);
  }
  for (auto& [key, s] : series) {
    if (s.points.size() < 4) continue;
    auto fit = osc::rate_fit(s);
    std::cout << key << ": fitted limit |L| = " << std::abs(fit.limit)
              << ", rate = " << fit.rate << (fit.monotone ? "" : " (non-monotone)") << "\n";
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"helmrays: a desk-scale laboratory for the high-frequency limit of the "
               "two-point-source Helmholtz equation"};
  app.require_subcommand(1);
  app.fallthrough();  // global options may follow the subcommand

  std::string config, out_dir;
  std::uint64_t seed = 1;
  int jobs = 1;
  double tol = 1e-6;
  app.add_option("--config", config, "scenario config file (default: built-in reference)");
  app.add_option("--seed", seed, "base RNG seed");
  app.add_option("--jobs", jobs, "worker threads");
  app.add_option("--tol", tol, "target tolerance for adaptive quadratures");
  app.add_option("--out", out_dir, "output directory");

  // solve
  auto* solve = app.add_subcommand("solve", "evaluate solution fields at probe points");
  double solve_eps = 0.1;
  std::string probe = "1,0,0";
  std::string which = "rescaled0";
  double sommerfeld_r = 0.0;
  solve->add_option("--eps", solve_eps, "epsilon");
  solve->add_option("--probe", probe, "comma-separated point");
  solve->add_option("--solution", which, "full | rescaled0 | rescaled1 | outgoing0 | outgoing1");
  solve->add_option("--sommerfeld", sommerfeld_r, "also report Sommerfeld residuals at radius");

  // pair
  auto* pair = app.add_subcommand("pair", "<a^eps, v> pairings over the eps grid");
  std::vector<std::string> pair_obs{"v0"};
  pair->add_option("--observable", pair_obs, "test-field names");

  // wigner
  auto* wig = app.add_subcommand("wigner", "<W^eps(u,u), a> pairings over the eps grid");
  std::vector<std::string> wig_obs{"g0"};
  long samples = 1'500'000;
  wig->add_option("--observable", wig_obs, "observable names");
  wig->add_option("--samples", samples, "MC samples per cell");

  // mu
  auto* mu = app.add_subcommand("mu", "limit-measure pairings <Q,a>, <mu,a>");
  std::vector<std::string> mu_obs{"g0"};
  mu->add_option("--observable", mu_obs, "observable names");

  // sweep
  auto* sweep = app.add_subcommand("sweep", "run a registered functional over the eps grid");
  std::string functional = "source_term0";
  std::vector<std::string> sweep_obs{"g0"};
  long sweep_samples = 1'500'000;
  sweep->add_option("--functional", functional, "one of the registered functionals");
  sweep->add_option("--observable", sweep_obs, "observable names");
  sweep->add_option("--samples", sweep_samples, "MC samples per cell");

  // verify
  auto* verify = app.add_subcommand("verify", "run invariant / acceptance suites");
  std::string suite = "identities";
  bool quick = false;
  long vsamples = 1'500'000;
  verify->add_option("--suite", suite, "identities | acceptance");
  verify->add_flag("--quick", quick, "trimmed budgets");
  verify->add_option("--samples", vsamples, "MC samples per pairing");

  // export
  auto* exp = app.add_subcommand("export", "re-emit a results CSV in the documented schema");
  std::string in_file, format = "csv";
  exp->add_option("--in", in_file, "input CSV")->required();
  exp->add_option("--format", format, "csv | json-report");

  CLI11_PARSE(app, argc, argv);

  try {
    model::Scenario scen = load_or_reference(config);
    auto rep = model::validate(scen);
    if (!rep.ok) {
      std::cerr << "scenario rejected: " << rep.summary() << "\n";
      return 2;
    }

    if (*solve) {
      Vec3 x = parse_vec(probe);
      if (which == "outgoing0" || which == "outgoing1") {
        auto w = helmholtz::solve_outgoing(which.back() == '0' ? scen.S0 : scen.S1);
        Complex a = w.eval_fourier(x);
        Complex b = w.eval_kernel(x, 1e-9);
        std::cout << "outgoing via damped resolvent: " << a << "\n";
        std::cout << "outgoing via kernel (sign " << w.kernel_sign << "): " << b << "\n";
        if (sommerfeld_r > 0.0) {
          auto sr = helmholtz::sommerfeld_residual(
              [&](const Vec3& y) { return w.eval_kernel(y, 1e-9); }, sommerfeld_r);
          std::cout << "sommerfeld residuals at r=" << sommerfeld_r << ": +i " << sr.plus
                    << ", -i " << sr.minus << "\n";
        }
      } else {
        helmholtz::SpectralSolution sol;
        if (which == "full")
          sol = helmholtz::solve_full(scen, solve_eps);
        else if (which == "rescaled1")
          sol = helmholtz::solve_rescaled(scen, solve_eps, 1);
        else
          sol = helmholtz::solve_rescaled(scen, solve_eps, 0);
        auto v = helmholtz::evaluate_err(sol, x);
        std::cout << which << "(" << probe << ") at eps=" << solve_eps << ": " << v.value
                  << " +- " << v.error << "\n";
      }
      return 0;
    }

    auto run_spec = [&](const std::string& fn, const std::vector<std::string>& obs,
                        long n_samples, const std::string& file) {
      harness::ExperimentSpec spec;
      spec.scenario = scen;
      spec.functional = fn;
      spec.observables = obs;
      spec.quad.mc_samples = n_samples;
      spec.quad.seed = seed;
      spec.quad.jobs = jobs;
      spec.quad.tol = tol;
      auto res = harness::run(spec);
      for (const auto& f : res.failures) std::cerr << "cell failed: " << f << "\n";
      std::string path = out_path(out_dir, file);
      harness::write_csv(res.rows, path);
      std::cout << res.rows.size() << " rows -> " << path << "\n";
      print_sweep_summary(res.rows);
      return res.failures.empty() ? 0 : 1;
    };

    if (*pair) return run_spec("pair_aeps", pair_obs, 0, "pair_aeps.csv");
    if (*wig) return run_spec("wigner_diag", wig_obs, samples, "wigner_diag.csv");
    if (*sweep) return run_spec(functional, sweep_obs, sweep_samples, functional + ".csv");

    if (*mu) {
      auto Q = liouville::make_source(scen);
      auto muB = liouville::make_ray_measure(scen);
      std::cout << "scale between Wigner limits and the (4pi)^-2 convention: "
                << liouville::wigner_source_scale() << "\n";
      for (const auto& name : mu_obs) {
        auto a = harness::observable_by_name(name);
        std::cout << name << ": <Q,a> = " << liouville::q_pairing(Q, a)
                  << ", <mu,a> = " << liouville::mu_pairing(muB, a) << "\n";
      }
      return 0;
    }

    if (*verify) {
      acceptance::Options opt;
      opt.quick = quick;
      opt.jobs = jobs;
      opt.seed = seed;
      opt.mc_samples = vsamples;
      std::vector<acceptance::CriterionResult> results;
      if (suite == "acceptance")
        results = acceptance::run_all(opt, &std::cout);
      else if (suite == "identities")
        results = acceptance::run_identities(opt, &std::cout);
      else {
        std::cerr << "unknown suite: " << suite << "\n";
        return 2;
      }
      std::ofstream rep_out(out_path(out_dir, "report.json"));
      rep_out << acceptance::report_json(results);
      return acceptance::all_passed(results) ? 0 : 1;
    }

    if (*exp) {
      std::ifstream in(in_file);
      if (!in) {
        std::cerr << "cannot open " << in_file << "\n";
        return 2;
      }
      std::string line;
      std::getline(in, line);
      if (line != harness::csv_header()) {
        std::cerr << "unexpected CSV header\n";
        return 2;
      }
      if (format == "csv") {
        std::cout << line << "\n";
        while (std::getline(in, line)) std::cout << line << "\n";
      } else if (format == "json-report") {
        std::cout << "{\n  \"rows\": [\n";
        bool first = true;
        while (std::getline(in, line)) {
          std::stringstream ss(line);
          std::string f[10];
          for (int i = 0; i < 10; ++i) std::getline(ss, f[i], ',');
          if (!first) std::cout << ",\n";
          first = false;
          std::cout << "    {\"scenario_id\": \"" << f[0] << "\", \"epsilon\": " << f[1]
                    << ", \"functional\": \"" << f[2] << "\", \"observable_id\": \"" << f[3]
                    << "\", \"value_re\": " << f[4] << ", \"value_im\": " << f[5]
                    << ", \"error\": " << f[6] << ", \"n_samples\": " << f[7]
                    << ", \"seed\": " << f[8] << ", \"wall_ms\": " << f[9] << "}";
        }
        std::cout << "\n  ]\n}\n";
      } else {
        std::cerr << "unknown format: " << format << "\n";
        return 2;
      }
      return 0;
    }
  } catch (const std::invalid_argument& ex) {
    std::cerr << "configuration error: " << ex.what() << "\n";
    return 2;
  } catch (const std::exception& ex) {
    std::cerr << "error: " << ex.what() << "\n";
    return 1;
  }
  return 0;
}
