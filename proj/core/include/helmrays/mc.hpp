#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "helmrays/vec.hpp"

namespace helmrays::quad {

/// Deterministic, portable RNG (xoshiro256++ seeded through splitmix64).
/// Streams are derived from (seed, stream index) so parallel batches are
/// reproducible independently of scheduling.
class RngStream {
 public:
  explicit RngStream(std::uint64_t seed, std::uint64_t stream = 0);
  std::uint64_t next_u64();
  double uniform();              // (0,1)
  double normal();               // standard normal (Box-Muller, cached pair)
  Vec3 unit_sphere();            // uniform direction on S^2

 private:
  std::uint64_t s_[4];
  bool have_spare_ = false;
  double spare_ = 0.0;
};

struct McEstimate {
  Complex value{0.0};
  double stderr_est = 0.0;
  long n_samples = 0;
  std::uint64_t seed = 0;
  long n_bad = 0;  // non-finite samples, dropped and reported as diagnostics
};

/// A sampler over R^k: fills x and returns the density at x.
struct Sampler {
  int k = 1;
  std::function<double(RngStream&, std::vector<double>&)> draw;
};

/// Unbiased MC over R^k: E[f/p]. Deterministic for fixed (seed, n, sampler):
/// fixed batch size, per-batch derived streams, pairwise reduction.
McEstimate mc_integrate(const std::function<Complex(const std::vector<double>&)>& f,
                        const Sampler& sampler, long n, std::uint64_t seed);

/// Same samples applied to several integrands at once (shared factors are
/// the caller's business); estimates share the underlying stream.
std::vector<McEstimate> mc_integrate_multi(
    const std::function<void(const std::vector<double>&, std::vector<Complex>&)>& f_multi,
    int n_out, const Sampler& sampler, long n, std::uint64_t seed, int n_jobs = 1);

/// Ready-made samplers.
Sampler gaussian_sampler(const std::vector<double>& mean, double sigma);

/// Truncated Cauchy density on (lo, hi) with given center and width.
double truncated_cauchy_pdf(double x, double center, double width, double lo, double hi);
double truncated_cauchy_sample(RngStream& rng, double center, double width, double lo, double hi);

}  // namespace helmrays::quad
