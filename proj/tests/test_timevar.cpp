#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "fvm/mc.hpp"
#include "fvm/quad.hpp"
#include "fvm/telegraph.hpp"
#include "fvm/timevar.hpp"

using namespace fvm;

namespace {

// Closed form of c^2 int_0^t int_0^s e^{-2l|x-y|} dx dy for sigma == 1, s <= t.
double cov_const(double lambda, double c, double s, double t) {
  if (s > t) std::swap(s, t);
  const double l2 = 4.0 * lambda * lambda;
  return c * c * (s / lambda - (1.0 - std::exp(-2.0 * lambda * s)) / l2 -
                  (std::exp(-2.0 * lambda * (t - s)) - std::exp(-2.0 * lambda * t)) / l2);
}

}  // namespace

TEST_CASE("unit profile reduces pathwise to the telegraph process") {
  const TelegraphParams p{1.0, 1.5};
  RngStream rng(4, 1);
  const auto path = sample_path(SigmaProfile::constant(1.0), p, 2.0, rng);
  for (double t : {0.3, 1.0, 2.0})
    CHECK(path.value(t) == doctest::Approx(path.telegraph_path.value(t)).epsilon(1e-12));
}

TEST_CASE("straight runs under the ramp profile") {
  const TelegraphParams p{1e-12, 2.0};
  RngStream rng(6, 0);
  const double x = sample_endpoint(SigmaProfile::linear(1.0), p, 3.0, rng);
  CHECK(std::abs(x) == doctest::Approx(2.0 * 4.5).epsilon(1e-12));  // c * t^2/2
}

TEST_CASE("covariance quadrature against the closed form") {
  const auto unit = SigmaProfile::constant(1.0);
  for (double lambda : {0.5, 1.0, 2.0})
    for (double c : {1.0, 1.3}) {
      const TelegraphParams p{lambda, c};
      CHECK(covariance(unit, p, 1.0, 1.0, 1e-11) ==
            doctest::Approx(cov_const(lambda, c, 1.0, 1.0)).epsilon(1e-8));
      CHECK(covariance(unit, p, 0.7, 1.6, 1e-11) ==
            doctest::Approx(cov_const(lambda, c, 0.7, 1.6)).epsilon(1e-8));
    }
  // Agreement with the telegraph second moment at s = t.
  const TelegraphParams q{1.7, 0.9};
  CHECK(covariance(unit, q, 1.3, 1.3, 1e-11) ==
        doctest::Approx(moment_even(q, 1, 1.3)).epsilon(1e-9));
  // Symmetry and the empty-range edge.
  const auto ramp = SigmaProfile::linear(1.0);
  const TelegraphParams p{1.0, 1.0};
  CHECK(covariance(ramp, p, 0.6, 1.1) ==
        doctest::Approx(covariance(ramp, p, 1.1, 0.6)).epsilon(1e-12));
  CHECK(covariance(ramp, p, 0.0, 1.0) == 0.0);
}

TEST_CASE("covariance scales quartically when sigma doubles") {
  const TelegraphParams p{1.0, 1.0};
  const double base = covariance(SigmaProfile::constant(1.0), p, 0.8, 1.2, 1e-13);
  const double twice = covariance(SigmaProfile::constant(2.0), p, 0.8, 1.2, 1e-13);
  CHECK(twice == doctest::Approx(4.0 * base).epsilon(1e-12));
  const double ramp1 = covariance(SigmaProfile::linear(1.0), p, 1.0, 1.0, 1e-13);
  const double ramp2 = covariance(SigmaProfile::linear(2.0), p, 1.0, 1.0, 1e-13);
  CHECK(ramp2 == doctest::Approx(4.0 * ramp1).epsilon(1e-12));
}

TEST_CASE("MC second moment matches the covariance quadrature for sigma = u") {
  const TelegraphParams p{1.0, 1.0};
  const auto ramp = SigmaProfile::linear(1.0);
  const auto sq = run_replicas(
      [&](RngStream& rng) {
        const double x = sample_endpoint(ramp, p, 1.0, rng);
        return x * x;
      },
      500000, 321, 0);
  CHECK(compare_mean("cov", sq, covariance(ramp, p, 1.0, 1.0, 1e-11), 321, 3.0).verdict ==
        Verdict::pass);
}

TEST_CASE("mean endpoint vanishes") {
  const TelegraphParams p{1.0, 1.0};
  const auto xs = run_replicas(
      [&](RngStream& rng) { return sample_endpoint(SigmaProfile::linear(1.0), p, 1.0, rng); },
      500000, 55, 0);
  CHECK(compare_mean("mean", xs, 0.0, 55, 3.0).verdict == Verdict::pass);
}

TEST_CASE("pathwise bound |X(t)| <= c int_0^t sigma") {
  const TelegraphParams p{2.0, 1.5};
  const auto ramp = SigmaProfile::linear(1.0);
  RngStream rng(8, 8);
  for (int k = 0; k < 300; ++k) {
    const auto path = sample_path(ramp, p, 2.0, rng);
    for (double t : {0.5, 1.2, 2.0})
      CHECK(std::abs(path.value(t)) <= p.c * ramp.segment_integral(0.0, t) + 1e-12);
  }
}

TEST_CASE("limit covariance and limit density") {
  const auto unit = SigmaProfile::constant(1.0);
  CHECK(limit_covariance(unit, 0.4, 1.0) == doctest::Approx(0.4).epsilon(1e-14));
  const auto ramp = SigmaProfile::linear(1.0);
  CHECK(limit_covariance(ramp, 1.0, 1.0) == doctest::Approx(1.0 / 3.0).epsilon(1e-14));

  // Finite-lambda covariance approaches the limit in the hydrodynamic regime.
  const TelegraphParams hydro{1e4, 100.0};
  const double cov = covariance(ramp, hydro, 1.0, 1.0, 1e-11);
  CHECK(std::abs(cov - 1.0 / 3.0) < 0.01 / 3.0);

  CHECK(integrate([&](double x) { return limit_density(ramp, x, 1.0); }, -10.0, 10.0, 1e-12) ==
        doctest::Approx(1.0).epsilon(1e-10));
  CHECK(limit_density(unit, 0.3, 1.0) ==
        doctest::Approx(std::exp(-0.045) / std::sqrt(2.0 * 3.14159265358979324)).epsilon(1e-13));
}

TEST_CASE("moderately scaled regime is already near-Gaussian (sanity)") {
  const TelegraphParams p{2500.0, 50.0};
  const auto ramp = SigmaProfile::linear(1.0);
  const auto xs = run_replicas(
      [&](RngStream& rng) { return sample_endpoint(ramp, p, 1.0, rng); }, 20000, 17, 0);
  const double sd = std::sqrt(1.0 / 3.0);
  MixedCdf law{[sd](double x) { return 0.5 * std::erfc(-x / (sd * 1.4142135623730951)); }, {}};
  CHECK(ks_with_atoms(xs, law) < 0.03);
}

TEST_CASE("tabulated profile matches its closed-form counterpart") {
  const auto table = SigmaProfile::from_table({0.0, 0.5, 1.0, 1.5, 2.0},
                                              {0.0, 0.5, 1.0, 1.5, 2.0});
  const auto ramp = SigmaProfile::linear(1.0);
  for (double t : {0.2, 0.7, 1.9}) CHECK(table.sigma(t) == doctest::Approx(t).epsilon(1e-12));
  for (double a : {0.0, 0.3})
    for (double b : {0.9, 1.8})
      CHECK(table.segment_integral(a, b) ==
            doctest::Approx(ramp.segment_integral(a, b)).epsilon(1e-12));
  // Interpolated profiles fall back to quadrature for int sigma^2.
  CHECK(table.square_integral(2.0) == doctest::Approx(8.0 / 3.0).epsilon(1e-9));
  CHECK_THROWS_AS(SigmaProfile::from_table({0.0, 0.0}, {1.0, 1.0}), std::domain_error);
}
