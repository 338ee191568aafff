#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "fvm/mc.hpp"
#include "fvm/telegraph.hpp"

using namespace fvm;

TEST_CASE("replica runs are reproducible and thread-count independent") {
  auto fn = [](RngStream& rng) { return rng.uniform() + rng.normal(); };
  const auto a = run_replicas(fn, 5000, 42, 1);
  const auto b = run_replicas(fn, 5000, 42, 1);
  const auto c = run_replicas(fn, 5000, 42, 4);
  CHECK(a == b);
  CHECK(a == c);
  const auto single = run_replicas(fn, 1, 42, 0);
  CHECK(single.size() == 1);
  CHECK(single[0] == a[0]);
}

TEST_CASE("sub-streams are empirically uncorrelated") {
  auto fn = [](RngStream& rng) { return rng.uniform(); };
  const long n = 100000;
  const auto a = run_replicas(fn, n, 1, 0);
  const auto b = run_replicas(fn, n, 2, 0);
  double corr = 0.0;
  for (long i = 0; i < n; ++i) corr += (a[i] - 0.5) * (b[i] - 0.5);
  corr /= n * (1.0 / 12.0);  // normalize by uniform variance
  CHECK(std::abs(corr) < 4.0 / std::sqrt(static_cast<double>(n)));

  // Adjacent streams within one seed.
  double lag = 0.0;
  for (long i = 0; i + 1 < n; ++i) lag += (a[i] - 0.5) * (a[i + 1] - 0.5);
  lag /= n * (1.0 / 12.0);
  CHECK(std::abs(lag) < 4.0 / std::sqrt(static_cast<double>(n)));
}

TEST_CASE("normal and exponential draws have the right first moments") {
  const long n = 200000;
  const auto z = run_replicas([](RngStream& rng) { return rng.normal(); }, n, 3, 0);
  CHECK(compare_mean("norm mean", z, 0.0, 3, 4.0).verdict == Verdict::pass);
  std::vector<double> z2(z.size());
  for (std::size_t i = 0; i < z.size(); ++i) z2[i] = z[i] * z[i];
  CHECK(compare_mean("norm var", z2, 1.0, 3, 4.0).verdict == Verdict::pass);
  const auto e = run_replicas([](RngStream& rng) { return rng.exponential(2.0); }, n, 4, 0);
  CHECK(compare_mean("exp mean", e, 0.5, 4, 4.0).verdict == Verdict::pass);
}

TEST_CASE("moment_estimate basics") {
  const std::vector<double> constant(100, 3.5);
  const auto m = moment_estimate(constant, 1);
  CHECK(m.estimate == doctest::Approx(3.5).epsilon(1e-15));
  CHECK(m.std_error == 0.0);

  std::vector<double> pm(10000);
  for (std::size_t i = 0; i < pm.size(); ++i) pm[i] = (i % 2 == 0) ? 1.0 : -1.0;
  const auto v = moment_estimate(pm, 2);
  CHECK(v.estimate == doctest::Approx(1.0).epsilon(1e-15));
}

TEST_CASE("verdict rule") {
  McReport r;
  r.estimate = 1.0;
  r.std_error = 0.1;
  r.target = 1.25;
  r.k = 3.0;
  apply_verdict(r);
  CHECK(r.verdict == Verdict::pass);
  r.k = 2.0;
  apply_verdict(r);
  CHECK(r.verdict == Verdict::fail);
  r.target.reset();
  apply_verdict(r);
  CHECK(r.verdict == Verdict::na);
  // Degenerate strata: zero spread, matching target, absolute slack.
  McReport d;
  d.estimate = 0.5;
  d.std_error = 0.0;
  d.target = 0.5 + 1e-13;
  d.atol = 1e-12;
  apply_verdict(d);
  CHECK(d.verdict == Verdict::pass);
}

TEST_CASE("E[T(1)^2] cross-module oracle") {
  const TelegraphParams p{1.0, 1.0};
  const auto ends = run_replicas(
      [&](RngStream& rng) { return sample_endpoint(p, 1.0, rng); }, 400000, 5, 0);
  auto m2 = moment_estimate(ends, 2);
  m2.target = moment_even(p, 1, 1.0);
  m2.k = 3.0;
  apply_verdict(m2);
  CHECK(m2.verdict == Verdict::pass);
}

TEST_CASE("ks_with_atoms: self-consistency, point mass, and shift sensitivity") {
  // Uniform law against its own samples.
  const long n = 100000;
  const auto u = run_replicas([](RngStream& rng) { return rng.uniform(); }, n, 6, 0);
  MixedCdf uniform{[](double x) { return std::min(1.0, std::max(0.0, x)); }, {}};
  CHECK(ks_with_atoms(u, uniform) < 1.63 / std::sqrt(static_cast<double>(n)));

  // A pure point mass matched by constant samples.
  MixedCdf point{[](double x) { return x >= 2.0 ? 1.0 : 0.0; }, {{2.0, 1.0}}};
  CHECK(ks_with_atoms(std::vector<double>(50, 2.0), point) == 0.0);

  // Mixed law: half point mass at 0, half uniform on (0,1).
  MixedCdf mixed{[](double x) {
                   if (x < 0.0) return 0.0;
                   return 0.5 + 0.5 * std::min(1.0, x);
                 },
                 {{0.0, 0.5}}};
  std::vector<double> good;
  RngStream rng(7, 0);
  for (int i = 0; i < 20000; ++i) good.push_back(i % 2 == 0 ? 0.0 : rng.uniform());
  CHECK(ks_with_atoms(good, mixed) < 0.02);

  // Shifting the continuous part by delta moves the statistic by about delta/2.
  std::vector<double> shifted;
  for (double x : good) shifted.push_back(x == 0.0 ? 0.0 : std::min(1.0, x + 0.2));
  const double d = ks_with_atoms(shifted, mixed);
  CHECK(d > 0.05);
  CHECK(d < 0.2);
}

TEST_CASE("tabulated telegraph CDF matches direct quadrature") {
  const TelegraphParams p{1.0, 1.0};
  const auto law = analytic_density(p);
  const auto tab = tabulate_cdf(law, 1.0);
  for (double z : {-0.99, -0.5, 0.0, 0.4, 0.99})
    CHECK(tab.cdf(z) == doctest::Approx(law.cdf(z, 1.0)).epsilon(1e-7));
  CHECK(tab.cdf(-1.0) == doctest::Approx(atom_mass(p, 1.0)).epsilon(1e-9));
  CHECK(tab.cdf(1.0) == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("chi-squared p-value of a faithful histogram is not extreme") {
  RngStream rng(9, 1);
  const int bins = 20;
  const long n = 100000;
  std::vector<double> observed(bins, 0.0), expected(bins, static_cast<double>(n) / bins);
  for (long i = 0; i < n; ++i) ++observed[std::min(bins - 1, static_cast<int>(rng.uniform() * bins))];
  CHECK(chi_squared_gof_pvalue(observed, expected) > 0.01);
}
