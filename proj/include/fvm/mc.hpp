#pragma once

// Seeded Monte Carlo harness: replica running over splittable sub-streams,
// estimators with standard errors, and atom-aware goodness of fit.
//
// Replica i always draws from RngStream(seed, i), so results are identical
// whether replicas run serially or across threads, and any single replica
// can be reproduced in isolation.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "fvm/rng.hpp"
#include "fvm/telegraph.hpp"

namespace fvm {

enum class Verdict { pass, fail, na };

struct McReport {
  std::string name;
  double estimate = 0.0;
  double std_error = 0.0;
  long replicas = 0;
  std::uint64_t seed = 0;
  std::optional<double> target;
  double k = 3.0;                       // sigma multiple for the verdict
  double atol = 0.0;                    // absolute slack for exact strata (se = 0)
  Verdict verdict = Verdict::na;
};

const char* to_string(Verdict v);

// Evaluate the k-sigma rule: pass iff |estimate - target| <= k*se + atol.
void apply_verdict(McReport& r);

// One double per replica; threads = 0 means hardware concurrency.
std::vector<double> run_replicas(const std::function<double(RngStream&)>& fn, long n,
                                 std::uint64_t seed, int threads = 0);

// Structured-sample variant; identical stream assignment.
template <class T, class Fn>
std::vector<T> run_replicas_t(const Fn& fn, long n, std::uint64_t seed, int threads = 0) {
  if (n < 1) throw std::domain_error("run_replicas_t: requires n >= 1");
  std::vector<T> out(static_cast<std::size_t>(n));
  if (threads <= 0) {
    const unsigned hc = std::thread::hardware_concurrency();
    threads = hc == 0 ? 1 : static_cast<int>(hc);
  }
  threads = static_cast<int>(std::min<long>(threads, n));
  auto worker = [&](int w) {
    for (long i = w; i < n; i += threads) {
      RngStream rng(seed, static_cast<std::uint64_t>(i));
      out[static_cast<std::size_t>(i)] = fn(rng);
    }
  };
  if (threads == 1) {
    worker(0);
    return out;
  }
  std::vector<std::thread> pool;
  pool.reserve(threads);
  for (int w = 0; w < threads; ++w) pool.emplace_back(worker, w);
  for (auto& th : pool) th.join();
  return out;
}

// k-th raw sample moment with plug-in standard error.
McReport moment_estimate(const std::vector<double>& samples, int k);

// Mean with standard error, compared against a target.
McReport compare_mean(std::string name, const std::vector<double>& samples, double target,
                      std::uint64_t seed, double k_sigma = 3.0, double atol = 0.0);

struct MixedCdf {
  std::function<double(double)> cdf;  // right-continuous, atoms included
  std::vector<Atom> atoms;
};

// Kolmogorov-Smirnov sup-distance between the empirical CDF of `samples`
// and a mixed law; evaluated at the sample points (both one-sided parts)
// and at the atom locations, where the law jumps.
double ks_with_atoms(std::vector<double> samples, const MixedCdf& law);

// Tabulated CDF of an AnalyticDensity at fixed t: one accumulation sweep of
// the continuous part plus the atom jumps, then monotone interpolation.
// Cheap to evaluate at the ~1e5 points a KS pass needs.
MixedCdf tabulate_cdf(const AnalyticDensity& law, double t, int grid = 4001);

// Pearson chi^2 p-value for observed counts vs expected counts (same total);
// bins with expected < min_expected are pooled.
double chi_squared_gof_pvalue(const std::vector<double>& observed,
                              const std::vector<double>& expected,
                              double min_expected = 5.0);

}  // namespace fvm
