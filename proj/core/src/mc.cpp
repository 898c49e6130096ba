#include "helmrays/mc.hpp"

#include <atomic>
#include <cmath>
#include <stdexcept>
#include <thread>

#include "helmrays/quadrature.hpp"

namespace helmrays::quad {

namespace {
constexpr double kPi = 3.14159265358979323846;

std::uint64_t splitmix64(std::uint64_t& x) {
  x += 0x9e3779b97f4a7c15ULL;
  std::uint64_t z = x;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }
}  // namespace

RngStream::RngStream(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t x = seed ^ (0xd1342543de82ef95ULL * (stream + 1));
  for (int i = 0; i < 4; ++i) s_[i] = splitmix64(x);
}

std::uint64_t RngStream::next_u64() {
  std::uint64_t result = rotl(s_[0] + s_[3], 23) + s_[0];
  std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);
  return result;
}

double RngStream::uniform() {
  // 53-bit mantissa in (0,1); never exactly 0.
  return ((next_u64() >> 11) + 0.5) * (1.0 / 9007199254740992.0);
}

double RngStream::normal() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  double u1 = uniform(), u2 = uniform();
  double r = std::sqrt(-2.0 * std::log(u1));
  double th = 2.0 * kPi * u2;
  spare_ = r * std::sin(th);
  have_spare_ = true;
  return r * std::cos(th);
}

Vec3 RngStream::unit_sphere() {
  double z = 2.0 * uniform() - 1.0;
  double phi = 2.0 * kPi * uniform();
  double r = std::sqrt(std::max(0.0, 1.0 - z * z));
  return {r * std::cos(phi), r * std::sin(phi), z};
}

namespace {
constexpr long kBatch = 8192;
}

std::vector<McEstimate> mc_integrate_multi(
    const std::function<void(const std::vector<double>&, std::vector<Complex>&)>& f_multi,
    int n_out, const Sampler& sampler, long n, std::uint64_t seed, int n_jobs) {
  if (n <= 0) throw std::invalid_argument("mc_integrate: n must be positive");
  long n_batches = (n + kBatch - 1) / kBatch;
  long n_total = n_batches * kBatch;

  std::vector<std::vector<Complex>> batch_sum(n_batches, std::vector<Complex>(n_out, 0.0));
  std::vector<std::vector<double>> batch_sum2(n_batches, std::vector<double>(n_out, 0.0));
  std::vector<long> batch_bad(n_batches, 0);

  auto run_batch = [&](long b) {
    RngStream rng(seed, static_cast<std::uint64_t>(b));
    std::vector<double> x(sampler.k);
    std::vector<Complex> fx(n_out);
    std::vector<Complex> acc(n_out, 0.0);
    std::vector<double> acc2(n_out, 0.0);
    long bad = 0;
    for (long i = 0; i < kBatch; ++i) {
      double pdf = sampler.draw(rng, x);
      f_multi(x, fx);
      for (int j = 0; j < n_out; ++j) {
        Complex w = fx[j] / pdf;
        if (!std::isfinite(w.real()) || !std::isfinite(w.imag())) {
          ++bad;  // dropped; reported through n_bad
          continue;
        }
        acc[j] += w;
        acc2[j] += std::norm(w);
      }
    }
    batch_sum[b] = std::move(acc);
    batch_sum2[b] = std::move(acc2);
    batch_bad[b] = bad;
  };

  if (n_jobs <= 1) {
    for (long b = 0; b < n_batches; ++b) run_batch(b);
  } else {
    std::vector<std::thread> pool;
    std::atomic<long> next{0};
    for (int t = 0; t < n_jobs; ++t)
      pool.emplace_back([&]() {
        for (;;) {
          long b = next.fetch_add(1);
          if (b >= n_batches) return;
          run_batch(b);
        }
      });
    for (auto& th : pool) th.join();
  }

  std::vector<McEstimate> out(n_out);
  for (int j = 0; j < n_out; ++j) {
    std::vector<Complex> sums(n_batches);
    std::vector<double> sums2(n_batches);
    for (long b = 0; b < n_batches; ++b) {
      sums[b] = batch_sum[b][j];
      sums2[b] = batch_sum2[b][j];
    }
    Complex total = pairwise_sum(sums);
    double total2 = pairwise_sum(sums2);
    McEstimate e;
    e.n_samples = n_total;
    e.seed = seed;
    for (long b = 0; b < n_batches; ++b) e.n_bad += batch_bad[b];
    e.value = total / double(n_total);
    double var = std::max(0.0, total2 / double(n_total) - std::norm(e.value));
    e.stderr_est = std::sqrt(var / double(n_total));
    // batch-means spread; sturdier than the moment estimate when the
    // importance weights are heavy-tailed
    if (n_batches >= 8) {
      double bvar = 0.0;
      for (long b = 0; b < n_batches; ++b)
        bvar += std::norm(sums[b] / double(kBatch) - e.value);
      double se_batch = std::sqrt(bvar / double(n_batches - 1) / double(n_batches));
      e.stderr_est = std::max(e.stderr_est, se_batch);
    }
    out[j] = e;
  }
  return out;
}

McEstimate mc_integrate(const std::function<Complex(const std::vector<double>&)>& f,
                        const Sampler& sampler, long n, std::uint64_t seed) {
  auto multi = [&f](const std::vector<double>& x, std::vector<Complex>& out) { out[0] = f(x); };
  return mc_integrate_multi(multi, 1, sampler, n, seed)[0];
}

Sampler gaussian_sampler(const std::vector<double>& mean, double sigma) {
  if (!(sigma > 0.0)) throw std::invalid_argument("gaussian_sampler: sigma <= 0");
  Sampler s;
  s.k = static_cast<int>(mean.size());
  double lognorm = -0.5 * s.k * std::log(2.0 * kPi * sigma * sigma);
  s.draw = [mean, sigma, lognorm](RngStream& rng, std::vector<double>& x) {
    double q = 0.0;
    for (std::size_t j = 0; j < mean.size(); ++j) {
      double z = rng.normal();
      x[j] = mean[j] + sigma * z;
      q += z * z;
    }
    return std::exp(lognorm - 0.5 * q);
  };
  return s;
}

double truncated_cauchy_pdf(double x, double center, double width, double lo, double hi) {
  if (x < lo || x > hi) return 0.0;
  double Flo = std::atan((lo - center) / width);
  double Fhi = std::atan((hi - center) / width);
  double dens = 1.0 / (width * (1.0 + ((x - center) / width) * ((x - center) / width)));
  return dens / (Fhi - Flo);
}

double truncated_cauchy_sample(RngStream& rng, double center, double width, double lo,
                               double hi) {
  double Flo = std::atan((lo - center) / width);
  double Fhi = std::atan((hi - center) / width);
  double u = Flo + (Fhi - Flo) * rng.uniform();
  return center + width * std::tan(u);
}

}  // namespace helmrays::quad
