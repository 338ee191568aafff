#include "fvm/mc.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <stdexcept>
#include <thread>

#include "fvm/quad.hpp"
#include "fvm/specfun.hpp"

namespace fvm {

const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::pass: return "pass";
    case Verdict::fail: return "fail";
    default: return "n/a";
  }
}

void apply_verdict(McReport& r) {
  if (!r.target) {
    r.verdict = Verdict::na;
    return;
  }
  r.verdict = std::abs(r.estimate - *r.target) <= r.k * r.std_error + r.atol ? Verdict::pass
                                                                             : Verdict::fail;
}

std::vector<double> run_replicas(const std::function<double(RngStream&)>& fn, long n,
                                 std::uint64_t seed, int threads) {
  return run_replicas_t<double>(fn, n, seed, threads);
}

namespace {

McReport basic_stats(const std::vector<double>& samples) {
  if (samples.empty()) throw std::domain_error("estimator: samples must be nonempty");
  McReport r;
  r.replicas = static_cast<long>(samples.size());
  double mean = 0.0;
  for (double x : samples) mean += x;
  mean /= r.replicas;
  double ss = 0.0;
  for (double x : samples) ss += (x - mean) * (x - mean);
  const double var = r.replicas > 1 ? ss / (r.replicas - 1) : 0.0;
  r.estimate = mean;
  r.std_error = std::sqrt(var / r.replicas);
  return r;
}

}  // namespace

McReport moment_estimate(const std::vector<double>& samples, int k) {
  if (k < 1) throw std::domain_error("moment_estimate: requires k >= 1");
  std::vector<double> powers(samples.size());
  for (std::size_t i = 0; i < samples.size(); ++i) powers[i] = std::pow(samples[i], k);
  McReport r = basic_stats(powers);
  r.name = "moment_" + std::to_string(k);
  return r;
}

McReport compare_mean(std::string name, const std::vector<double>& samples, double target,
                      std::uint64_t seed, double k_sigma, double atol) {
  McReport r = basic_stats(samples);
  r.name = std::move(name);
  r.seed = seed;
  r.target = target;
  r.k = k_sigma;
  r.atol = atol;
  apply_verdict(r);
  return r;
}

double ks_with_atoms(std::vector<double> samples, const MixedCdf& law) {
  if (samples.empty()) throw std::domain_error("ks_with_atoms: samples must be nonempty");
  std::sort(samples.begin(), samples.end());
  const double n = static_cast<double>(samples.size());
  auto atom_mass_at = [&](double x) {
    double m = 0.0;
    for (const Atom& a : law.atoms)
      if (a.location == x) m = a.mass;
    return m;
  };
  double d = 0.0;
  // Walk blocks of tied samples: the empirical CDF jumps from lo/n to hi/n
  // at a tie block, and the law may jump too (atoms).
  for (std::size_t i = 0; i < samples.size();) {
    std::size_t j = i;
    while (j < samples.size() && samples[j] == samples[i]) ++j;
    const double F = law.cdf(samples[i]);
    const double F_left = F - atom_mass_at(samples[i]);
    d = std::max(d, std::abs(F - j / n));
    d = std::max(d, std::abs(F_left - i / n));
    i = j;
  }
  // Also probe the atom locations themselves (they may carry no samples).
  for (const Atom& a : law.atoms) {
    const double F = law.cdf(a.location);
    const double emp =
        static_cast<double>(std::upper_bound(samples.begin(), samples.end(), a.location) -
                            samples.begin()) / n;
    const double emp_left =
        static_cast<double>(std::lower_bound(samples.begin(), samples.end(), a.location) -
                            samples.begin()) / n;
    d = std::max(d, std::abs(emp - F));
    d = std::max(d, std::abs(emp_left - (F - a.mass)));
  }
  return d;
}

MixedCdf tabulate_cdf(const AnalyticDensity& law, double t, int grid) {
  if (grid < 3) throw std::domain_error("tabulate_cdf: grid too small");
  const Interval sp = law.support(t);
  const auto atoms = law.atoms(t);
  const double eps = 1e-10 * (sp.hi - sp.lo);
  const double lo = sp.lo + eps;
  const double hi = sp.hi - eps;
  const double h = (hi - lo) / (grid - 1);
  auto knots = std::make_shared<std::vector<double>>(grid);
  auto cum = std::make_shared<std::vector<double>>(grid);
  auto f = [&](double z) { return law.continuous(z, t); };
  (*knots)[0] = lo;
  (*cum)[0] = 0.0;
  for (int i = 1; i < grid; ++i) {
    (*knots)[i] = lo + i * h;
    (*cum)[i] = (*cum)[i - 1] + integrate(f, (*knots)[i - 1], (*knots)[i], 1e-12);
  }
  MixedCdf out;
  out.atoms = atoms;
  out.cdf = [knots, cum, atoms, sp](double z) {
    double acc = 0.0;
    for (const Atom& a : atoms)
      if (a.location <= z) acc += a.mass;
    if (z <= knots->front()) return acc;
    if (z >= knots->back()) return acc + cum->back();
    const auto it = std::upper_bound(knots->begin(), knots->end(), z);
    const std::size_t i = static_cast<std::size_t>(it - knots->begin()) - 1;
    const double frac = (z - (*knots)[i]) / ((*knots)[i + 1] - (*knots)[i]);
    return acc + (*cum)[i] + frac * ((*cum)[i + 1] - (*cum)[i]);
  };
  return out;
}

double chi_squared_gof_pvalue(const std::vector<double>& observed,
                              const std::vector<double>& expected, double min_expected) {
  if (observed.size() != expected.size() || observed.empty())
    throw std::domain_error("chi_squared_gof_pvalue: size mismatch");
  double stat = 0.0;
  int cells = 0;
  double pool_obs = 0.0, pool_exp = 0.0;
  for (std::size_t i = 0; i < observed.size(); ++i) {
    if (expected[i] < min_expected) {
      pool_obs += observed[i];
      pool_exp += expected[i];
      continue;
    }
    stat += (observed[i] - expected[i]) * (observed[i] - expected[i]) / expected[i];
    ++cells;
  }
  if (pool_exp > 0.0) {
    stat += (pool_obs - pool_exp) * (pool_obs - pool_exp) / pool_exp;
    ++cells;
  }
  if (cells < 2) throw std::domain_error("chi_squared_gof_pvalue: not enough populated cells");
  return specfun::chi_squared_pvalue(stat, cells - 1);
}

}  // namespace fvm
