#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <vector>

#include "fvm/mc.hpp"
#include "fvm/quad.hpp"
#include "fvm/specfun.hpp"
#include "fvm/telegraph.hpp"

using namespace fvm;

TEST_CASE("sampler is deterministic per (seed, stream)") {
  const TelegraphParams p{1.0, 1.0};
  RngStream a(42, 7), b(42, 7);
  const auto pa = sample_path(p, 1.0, a);
  const auto pb = sample_path(p, 1.0, b);
  CHECK(pa.initial_direction == pb.initial_direction);
  REQUIRE(pa.event_times.size() == pb.event_times.size());
  for (std::size_t i = 0; i < pa.event_times.size(); ++i)
    CHECK(pa.event_times[i] == pb.event_times[i]);
}

TEST_CASE("vanishing intensity gives straight runs") {
  const TelegraphParams p{1e-12, 2.0};
  RngStream rng(1, 0);
  const auto path = sample_path(p, 3.0, rng);
  CHECK(path.event_times.empty());
  CHECK(std::abs(path.endpoint()) == doctest::Approx(2.0 * 3.0));
}

TEST_CASE("void probability e^{-lambda t} at lambda=2, t=1") {
  const TelegraphParams p{2.0, 1.0};
  const auto hits = run_replicas(
      [&](RngStream& rng) {
        return sample_path(p, 1.0, rng).event_times.empty() ? 1.0 : 0.0;
      },
      1000000, 99, 0);
  const auto r = compare_mean("void", hits, std::exp(-2.0), 99, 3.0);
  CHECK(r.verdict == Verdict::pass);
}

TEST_CASE("path evaluator is piecewise linear with speed c") {
  const TelegraphParams p{3.0, 1.7};
  RngStream rng(5, 11);
  for (int k = 0; k < 200; ++k) {
    const auto path = sample_path(p, 2.0, rng);
    CHECK(path.value(0.0) == 0.0);
    for (double t : {0.1, 0.5, 1.0, 1.9, 2.0}) CHECK(std::abs(path.value(t)) <= p.c * t + 1e-12);
    // slope between consecutive queries inside one segment
    const double t0 = path.event_times.empty() ? 1.0 : path.event_times[0] * 0.5;
    const double d = (path.value(t0 + 1e-6) - path.value(t0)) / 1e-6;
    CHECK(std::abs(std::abs(d) - p.c) < 1e-5);
  }
}

TEST_CASE("density closed-form value at the origin") {
  const TelegraphParams p{1.0, 1.0};
  // (e^{-1}/2) [I_0(1) + I_1(1)], from the analytic d/dt of I_0.
  CHECK(density(p, 0.0, 1.0) == doctest::Approx(0.33683501147167444269).epsilon(1e-13));
  CHECK(density(p, 0.3, 1.0) == doctest::Approx(density(p, -0.3, 1.0)).epsilon(1e-15));
  CHECK_THROWS_AS(density(p, 1.0, 1.0), std::domain_error);
  CHECK_THROWS_AS(density(p, 1.5, 1.0), std::domain_error);
}

TEST_CASE("atoms and normalization") {
  const TelegraphParams p{1.0, 1.0};
  CHECK(atom_mass(p, 0.001) == doctest::Approx(0.4995).epsilon(1e-4));
  CHECK(atom_mass(TelegraphParams{2.0, 1.0}, 1.0) ==
        doctest::Approx(0.5 * std::exp(-2.0)).epsilon(1e-15));

  const TelegraphParams q{1.7, 0.9};
  CHECK(analytic_density(q).total_mass(2.0, 1e-10) == doctest::Approx(1.0).epsilon(1e-8));
}

TEST_CASE("zero-event frequency matches twice the atom mass") {
  const TelegraphParams p{1.3, 1.0};
  const auto hits = run_replicas(
      [&](RngStream& rng) {
        return sample_path(p, 1.0, rng).event_times.empty() ? 1.0 : 0.0;
      },
      400000, 7, 0);
  const auto r = compare_mean("atoms", hits, 2.0 * atom_mass(p, 1.0), 7, 3.0);
  CHECK(r.verdict == Verdict::pass);
}

TEST_CASE("even moments: closed forms and oracles") {
  const TelegraphParams p{1.0, 1.0};
  CHECK(moment_even(p, 0, 1.0) == 1.0);
  // n = 1 closed form c^2 t/lambda - c^2 (1-e^{-2 lambda t})/(2 lambda^2).
  CHECK(moment_even(p, 1, 1.0) ==
        doctest::Approx(1.0 - 0.5 * (1.0 - std::exp(-2.0))).epsilon(1e-13));
  // Double-integral oracle for the second moment at other parameters.
  const TelegraphParams q{1.7, 0.9};
  const double quad = exp_kernel_double_integral([](double) { return 1.0; }, q.lambda, q.c,
                                                 1.3, 1.3, 1e-12);
  CHECK(moment_even(q, 1, 1.3) == doctest::Approx(quad).epsilon(1e-9));

  const auto ends = run_replicas(
      [&](RngStream& rng) { return sample_endpoint(p, 1.0, rng); }, 1000000, 2024, 0);
  std::vector<double> sq(ends.size());
  for (std::size_t i = 0; i < ends.size(); ++i) sq[i] = ends[i] * ends[i];
  CHECK(compare_mean("m2", sq, moment_even(p, 1, 1.0), 2024, 3.0).verdict == Verdict::pass);

  // Odd moments vanish.
  CHECK(compare_mean("m1", ends, 0.0, 2024, 3.0).verdict == Verdict::pass);
  std::vector<double> cu(ends.size());
  for (std::size_t i = 0; i < ends.size(); ++i) cu[i] = ends[i] * ends[i] * ends[i];
  CHECK(compare_mean("m3", cu, 0.0, 2024, 3.0).verdict == Verdict::pass);

  CHECK_THROWS_AS(moment_even(p, 31, 1.0), std::out_of_range);
}

TEST_CASE("cdf edges, symmetry, and KS against simulation") {
  const TelegraphParams p{1.0, 1.0};
  const double t = 1.0;
  CHECK(cdf(p, -1.0 - 1e-9, t) == 0.0);
  CHECK(cdf(p, 1.0, t) == doctest::Approx(1.0).epsilon(1e-9));
  CHECK(cdf(p, 0.0, t) == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(cdf(p, -1.0, t) == doctest::Approx(atom_mass(p, t)).epsilon(1e-12));

  const auto samples = run_replicas(
      [&](RngStream& rng) { return sample_endpoint(p, t, rng); }, 100000, 31337, 0);
  const auto law = tabulate_cdf(analytic_density(p), t);
  const double d = ks_with_atoms(samples, law);
  CHECK(d < 1.63 / std::sqrt(100000.0));
}

TEST_CASE("density solves the telegraph equation (finite-difference residual)") {
  const TelegraphParams p{1.0, 1.0};
  const double t = 1.0, h = 0.02;
  auto f = [&](double z, double tt) { return density(p, z, tt); };
  double worst = 0.0;
  for (double z = -0.6; z <= 0.6; z += 0.12) {
    // Fourth-order central stencils.
    auto d2 = [&](auto g) {
      return (-g(2.0 * h) + 16.0 * g(h) - 30.0 * g(0.0) + 16.0 * g(-h) - g(-2.0 * h)) /
             (12.0 * h * h);
    };
    auto d1 = [&](auto g) {
      return (-g(2.0 * h) + 8.0 * g(h) - 8.0 * g(-h) + g(-2.0 * h)) / (12.0 * h);
    };
    const double ftt = d2([&](double e) { return f(z, t + e); });
    const double ft = d1([&](double e) { return f(z, t + e); });
    const double fzz = d2([&](double e) { return f(z + e, t); });
    const double residual = ftt + 2.0 * p.lambda * ft - p.c * p.c * fzz;
    const double scale = std::max({std::abs(ftt), 2.0 * p.lambda * std::abs(ft),
                                   p.c * p.c * std::abs(fzz)});
    worst = std::max(worst, std::abs(residual) / scale);
  }
  CHECK(worst < 1e-4);
}

TEST_CASE("hydrodynamic limit: endpoint law approaches a standard Gaussian") {
  const TelegraphParams p{1e4, 100.0};
  const auto samples = run_replicas(
      [&](RngStream& rng) { return sample_endpoint(p, 1.0, rng); }, 100000, 4242, 0);
  MixedCdf gauss{[](double x) { return 0.5 * std::erfc(-x / 1.4142135623730951); }, {}};
  CHECK(ks_with_atoms(samples, gauss) < 0.01);
}
