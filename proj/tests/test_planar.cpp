#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cmath>
#include <vector>

#include "fvm/mc.hpp"
#include "fvm/planar.hpp"
#include "fvm/quad.hpp"

using namespace fvm;

TEST_CASE("paths stay inside the rotated square") {
  const PlanarParams p{2.0, 1.3, 0.5};
  RngStream rng(11, 0);
  for (int k = 0; k < 300; ++k) {
    const auto path = sample_planar(p, 1.5, rng);
    for (double t : {0.2, 0.8, 1.5}) {
      const auto [u, v] = path.value(t);
      CHECK(std::abs(u + v) <= p.c * t + 1e-12);
      CHECK(std::abs(u - v) <= p.c * t + 1e-12);
    }
  }
}

TEST_CASE("zero-event paths sit at the corners of the square") {
  const PlanarParams p{1e-12, 1.0, 0.5};
  RngStream rng(2, 3);
  for (int k = 0; k < 50; ++k) {
    const auto e = sample_planar_endpoint(p, 1.0, rng);
    CHECK(e.events == 0);
    // Corners of S_t are (+-ct, 0) and (0, +-ct).
    CHECK(std::min(std::abs(e.u), std::abs(e.v)) == doctest::Approx(0.0));
    CHECK(std::max(std::abs(e.u), std::abs(e.v)) == doctest::Approx(1.0).epsilon(1e-9));
  }
}

TEST_CASE("extreme splits only use their own arcs") {
  RngStream rng(13, 1);
  {
    const PlanarParams p{5.0, 1.0, 1.0};  // red arcs only: d0<->d1, d2<->d3
    for (int k = 0; k < 100; ++k) {
      const auto path = sample_planar(p, 1.0, rng);
      int d = path.initial_direction;
      for (int nd : path.directions) {
        CHECK(nd == (d ^ 1));  // 0<->1, 2<->3
        d = nd;
      }
    }
  }
  {
    const PlanarParams p{5.0, 1.0, 0.0};  // green arcs only: 0<->3, 1<->2
    for (int k = 0; k < 100; ++k) {
      const auto path = sample_planar(p, 1.0, rng);
      int d = path.initial_direction;
      for (int nd : path.directions) {
        CHECK(nd == 3 - d);
        d = nd;
      }
    }
  }
}

TEST_CASE("markov transition tallies follow the generator split") {
  const PlanarParams p{4.0, 1.0, 0.7};
  RngStream rng(17, 9);
  std::array<std::array<long, 4>, 4> tally{};
  for (int k = 0; k < 20000; ++k) {
    const auto path = sample_planar(p, 1.0, rng);
    int d = path.initial_direction;
    for (int nd : path.directions) {
      ++tally[d][nd];
      d = nd;
    }
  }
  const int red[4] = {1, 0, 3, 2};
  for (int d = 0; d < 4; ++d) {
    long total = 0, reds = 0;
    for (int nd = 0; nd < 4; ++nd) {
      total += tally[d][nd];
      if (nd == red[d]) reds += tally[d][nd];
      // transitions to self or to the opposite direction never occur
      if (nd == d || nd == (d + 2) % 4) CHECK(tally[d][nd] == 0);
    }
    const double frac = static_cast<double>(reds) / total;
    CHECK(std::abs(frac - 0.7) < 3.0 / std::sqrt(static_cast<double>(total)));
  }
}

TEST_CASE("interior density symmetry and product structure") {
  const PlanarParams p{1.0, 1.0, 0.5};
  const double t = 1.0;
  for (double u : {-0.3, 0.1, 0.4})
    for (double v : {-0.2, 0.0, 0.3}) {
      const double f = interior_density_uv(p, u, v, t);
      CHECK(f == doctest::Approx(interior_density_uv(p, v, u, t)).epsilon(1e-13));
      CHECK(f == doctest::Approx(interior_density_uv(p, -u, -v, t)).epsilon(1e-13));
      // product of rotated telegraph factors
      const double byhand = 2.0 * density_with_rate(0.5, 1.0, u + v, t) *
                            density_with_rate(0.5, 1.0, u - v, t);
      CHECK(f == doctest::Approx(byhand).epsilon(1e-13));
    }
  CHECK_THROWS_AS(interior_density_uv(p, 0.9, 0.4, t), std::domain_error);
}

static double interior_mass(const PlanarParams& p, double t) {
  const double span = p.c * t;
  return integrate2d(
      [&](double u, double v) { return interior_density_uv(p, u, v, t); },
      -span + 1e-11, span - 1e-11,
      [&](double u) { return std::abs(u) - span + 1e-11; },
      [&](double u) { return span - std::abs(u) - 1e-11; }, 1e-9);
}

TEST_CASE("interior mass plus boundary probability is one") {
  for (double p_split : {0.5, 0.3}) {
    const PlanarParams p{1.0, 1.0, p_split};
    const double total = interior_mass(p, 1.0) + boundary_probability(p, 1.0);
    CHECK(total == doctest::Approx(1.0).epsilon(1e-7));
  }
}

TEST_CASE("MC boundary frequency matches the combinatorial formula") {
  const PlanarParams p{1.0, 1.0, 0.5};
  const auto ends = run_replicas_t<PlanarEndpoint>(
      [&](RngStream& rng) { return sample_planar_endpoint(p, 1.0, rng); }, 1000000, 2025, 0);
  std::vector<double> ind(ends.size());
  for (std::size_t i = 0; i < ends.size(); ++i) {
    const auto& e = ends[i];
    const bool b = (!e.used[2] && !e.used[3]) || (!e.used[0] && !e.used[1]) ||
                   (!e.used[1] && !e.used[2]) || (!e.used[0] && !e.used[3]);
    ind[i] = b ? 1.0 : 0.0;
  }
  CHECK(compare_mean("bnd", ind, boundary_probability(p, 1.0), 2025, 3.0).verdict ==
        Verdict::pass);
  CHECK(boundary_probability(p, 1.0) ==
        doctest::Approx(2.0 * std::exp(-0.5) - std::exp(-1.0)).epsilon(1e-15));
}

TEST_CASE("side densities: symmetry, mass, and the q&H reparametrization") {
  const PlanarParams p{1.0, 1.0, 0.5};
  const double t = 1.0, span = 1.0;
  for (double u : {0.1, 0.35, 0.8})
    CHECK(side_density_q(p, u, t) ==
          doctest::Approx(side_density_q(p, span - u, t)).epsilon(1e-13));
  for (double eta : {0.3, 0.7})
    CHECK(side_density_H(p, eta, t) ==
          doctest::Approx(side_density_H(p, -eta, t)).epsilon(1e-13));

  // q(u) du = H(eta) d(eta) under eta = 2u - ct.
  for (double u : {0.15, 0.5, 0.77})
    CHECK(side_density_q(p, u, t) ==
          doctest::Approx(2.0 * side_density_H(p, 2.0 * u - span, t)).epsilon(1e-10));

  const double mass_q =
      integrate([&](double u) { return side_density_q(p, u, t); }, 1e-12, span - 1e-12, 1e-11);
  const double target = 0.5 * (std::exp(-0.5) - std::exp(-1.0));
  CHECK(mass_q == doctest::Approx(target).epsilon(1e-8));
  const double mass_h = integrate([&](double e) { return side_density_H(p, e, t); },
                                  -span + 1e-12, span - 1e-12, 1e-11);
  CHECK(mass_h == doctest::Approx(mass_q).epsilon(1e-9));

  // Boundary total: four sides plus four corner atoms.
  CHECK(4.0 * mass_q + 4.0 * corner_mass(p, t) ==
        doctest::Approx(boundary_probability(p, t)).epsilon(1e-9));

  const PlanarParams biased{1.0, 1.0, 0.3};
  CHECK_THROWS_AS(side_density_q(biased, 0.3, t), std::invalid_argument);
  CHECK_THROWS_AS(side_density_q(p, 1.2, t), std::domain_error);
}

TEST_CASE("conditional law of U on the first-quadrant side") {
  const PlanarParams p{1.0, 1.0, 0.5};
  const double t = 1.0;
  const auto ends = run_replicas_t<PlanarEndpoint>(
      [&](RngStream& rng) { return sample_planar_endpoint(p, t, rng); }, 200000, 31, 0);
  std::vector<double> side_u;
  for (const auto& e : ends)
    if (on_side_s1(e)) side_u.push_back(e.u);
  REQUIRE(side_u.size() > 20000);

  const double z = 0.5 * (std::exp(-0.5) - std::exp(-1.0));
  AnalyticDensity law;
  law.continuous = [&](double u, double tt) { return side_density_q(p, u, tt) / z; };
  law.atoms = [](double) { return std::vector<Atom>{}; };
  law.support = [&](double tt) { return Interval{0.0, p.c * tt}; };
  const double d = ks_with_atoms(side_u, tabulate_cdf(law, t));
  CHECK(d < 1.63 / std::sqrt(static_cast<double>(side_u.size())));
}

TEST_CASE("on-side classification equals the geometric condition") {
  const PlanarParams p{1.5, 1.0, 0.5};
  RngStream rng(77, 4);
  for (int k = 0; k < 2000; ++k) {
    const auto e = sample_planar_endpoint(p, 1.0, rng);
    if (on_side_s1(e)) CHECK(e.u + e.v == doctest::Approx(p.c * 1.0).epsilon(1e-12));
  }
}

TEST_CASE("rotated coordinates are empirically uncorrelated") {
  const PlanarParams p{2.0, 1.0, 0.5};
  const auto ends = run_replicas_t<PlanarEndpoint>(
      [&](RngStream& rng) { return sample_planar_endpoint(p, 1.0, rng); }, 100000, 8, 0);
  std::vector<double> prod(ends.size()), w1sq(ends.size()), w2sq(ends.size()),
      sqprod(ends.size());
  for (std::size_t i = 0; i < ends.size(); ++i) {
    const double w1 = ends[i].u + ends[i].v;
    const double w2 = ends[i].u - ends[i].v;
    prod[i] = w1 * w2;
    w1sq[i] = w1 * w1;
    w2sq[i] = w2 * w2;
    sqprod[i] = w1 * w1 * w2 * w2;
  }
  CHECK(compare_mean("w1w2", prod, 0.0, 8, 3.0).verdict == Verdict::pass);
  double m1 = 0, m2 = 0;
  for (std::size_t i = 0; i < ends.size(); ++i) {
    m1 += w1sq[i];
    m2 += w2sq[i];
  }
  m1 /= ends.size();
  m2 /= ends.size();
  CHECK(compare_mean("w1^2 w2^2 factorizes", sqprod, m1 * m2, 8, 3.0).verdict == Verdict::pass);
}

TEST_CASE("wrapped density: constant model reduces to the uv density") {
  const PlanarParams p{1.0, 1.0, 0.5};
  const auto cm = constant_model(1.0, 0.0);
  for (double x : {-0.2, 0.1})
    for (double y : {0.0, 0.3})
      CHECK(wrapped_density_xy(cm, p, x, y, 1.0) ==
            doctest::Approx(interior_density_uv(p, x, y, 1.0)).epsilon(1e-14));
}

TEST_CASE("wrapped tanh model: total mass and boundary abscissa law") {
  const PlanarParams p{1.0, 1.0, 0.5};
  const auto sm = symlogistic_model(1.0, 0.0);
  const double t = 1.0, span = 1.0;
  const double interior = integrate2d(
      [&](double x, double y) { return wrapped_density_xy(sm, p, x, y, t); },
      sm.Winv(-span) + 1e-12, sm.Winv(span) - 1e-12,
      [&](double x) { return sm.Winv(std::abs(sm.W(x)) - span + 1e-11); },
      [&](double x) { return sm.Winv(span - std::abs(sm.W(x)) - 1e-11); }, 1e-8);
  CHECK(interior + boundary_probability(p, t) == doctest::Approx(1.0).epsilon(1e-7));

  // h(x,t) = q(atanh x, t) / (1 - x^2)
  for (double x : {0.1, 0.4, 0.7}) {
    const double expected = side_density_q(p, std::atanh(x), t) / (1.0 - x * x);
    CHECK(wrapped_boundary_abscissa(sm, p, x, t) == doctest::Approx(expected).epsilon(1e-13));
  }
  const double side_mass = integrate(
      [&](double x) { return wrapped_boundary_abscissa(sm, p, x, t); }, 1e-9,
      std::tanh(span) - 1e-12, 1e-11);
  CHECK(side_mass == doctest::Approx(0.5 * (std::exp(-0.5) - std::exp(-1.0))).epsilon(1e-7));
}

TEST_CASE("support boundary parametrizations") {
  {
    const auto cm = constant_model(1.0, 0.0);
    const auto sides = support_boundary(cm, 1.0);
    REQUIRE(sides.size() == 4);
    for (const auto& s : sides)
      for (int i = 1; i < 8; ++i) {
        const double x = s.x_lo + i * (s.x_hi - s.x_lo) / 8.0;
        const double y = s.y_of_x(x);
        const double w1 = std::abs(x + y), w2 = std::abs(x - y);
        CHECK(std::max(w1, w2) == doctest::Approx(1.0).epsilon(1e-12));
      }
  }
  {
    const auto sm = symlogistic_model(1.0, 0.0);
    const double T = std::tanh(1.0);
    const auto sides = support_boundary(sm, 1.0);
    CHECK(sides[0].y_of_x(T) == doctest::Approx(0.0));
    CHECK(sides[0].y_of_x(1e-14) == doctest::Approx(T).epsilon(1e-10));
    // y = (tanh(ct) - x)/(1 - x tanh(ct)) on the first-quadrant side
    for (double x : {0.1, 0.3, 0.6})
      CHECK(sides[0].y_of_x(x) == doctest::Approx((T - x) / (1.0 - x * T)).epsilon(1e-12));
    // as t grows the support approaches the square [-1,1]^2
    const auto far = support_boundary(sm, 20.0);
    CHECK(far[0].y_of_x(0.0) == doctest::Approx(1.0).epsilon(1e-8));
  }
  CHECK_THROWS_AS(support_boundary(logistic_model(1.0, 0.5), 1.0), std::invalid_argument);
}

TEST_CASE("2-D histogram of interior endpoints matches the density (chi-squared)") {
  // Binned in the rotated coordinates (u+v, u-v), where the support is the
  // axis-aligned square and bin edges line up with it.
  const PlanarParams p{1.0, 1.0, 0.5};
  const double t = 1.0, span = 1.0;
  const long n = 1000000;
  const auto ends = run_replicas_t<PlanarEndpoint>(
      [&](RngStream& rng) { return sample_planar_endpoint(p, t, rng); }, n, 606, 0);
  const int bins = 30;
  const double h = 2.0 * span / bins;
  auto bin_of = [&](double w) {
    return std::min(bins - 1, std::max(0, static_cast<int>((w + span) / h)));
  };
  std::vector<double> observed(bins * bins, 0.0);
  for (const auto& e : ends) {
    const bool boundary = (!e.used[2] && !e.used[3]) || (!e.used[0] && !e.used[1]) ||
                          (!e.used[1] && !e.used[2]) || (!e.used[0] && !e.used[3]);
    if (boundary) continue;
    observed[bin_of(e.u + e.v) * bins + bin_of(e.u - e.v)] += 1.0;
  }
  // In rotated coordinates the interior law is a product of two telegraph
  // densities with rate lambda/2.
  std::vector<double> edge_mass(bins, 0.0);
  for (int i = 0; i < bins; ++i) {
    const double lo = std::max(-span + i * h, -span + 1e-13);
    const double hi = std::min(-span + (i + 1) * h, span - 1e-13);
    edge_mass[i] =
        integrate([&](double w) { return density_with_rate(0.5 * p.lambda, p.c, w, t); }, lo,
                  hi, 1e-11);
  }
  std::vector<double> expected(bins * bins, 0.0);
  for (int i = 0; i < bins; ++i)
    for (int j = 0; j < bins; ++j) expected[i * bins + j] = n * edge_mass[i] * edge_mass[j];
  CHECK(chi_squared_gof_pvalue(observed, expected) > 0.01);
}
