#pragma once

// Standard constant-velocity telegraph process T(t): motion at speed +-c on
// the line, direction switching at the events of a Poisson(lambda) process.
// Exact path sampling, the exact law (continuous interior density plus the
// two no-switch atoms at +-ct), even moments, and the mixed CDF.

#include <functional>
#include <vector>

#include "fvm/rng.hpp"

namespace fvm {

struct TelegraphParams {
  double lambda = 1.0;  // switch intensity, 1/time
  double c = 1.0;       // speed, space/time
};

void validate(const TelegraphParams& p);

// One sampled path: piecewise linear with |slope| = c, kinks at event_times.
struct PathSample {
  double horizon = 0.0;
  int initial_direction = 1;       // +-1
  std::vector<double> event_times; // strictly increasing, in (0, horizon]
  TelegraphParams params;

  // T(t) for 0 <= t <= horizon.
  double value(double t) const;
  double endpoint() const { return value(horizon); }
  // Direction in effect at time t.
  int direction(double t) const;
};

PathSample sample_path(const TelegraphParams& p, double horizon, RngStream& rng);

// T(t) without materializing the event list; O(lambda*t) time, O(1) memory.
// This is the sampler of choice in the hydrodynamic regime.
double sample_endpoint(const TelegraphParams& p, double t, RngStream& rng);

// Continuous part of the law of a telegraph process with switching rate mu
// and speed c, at displacement w, |w| < c*t:
//
//   p(w,t) = e^{-mu t}/(2c) [ mu I_0(A) + mu^2 t I_1(A)/A ],
//   A = (mu/c) sqrt(c^2 t^2 - w^2),
//
// where the second term is the analytic d/dt of I_0(A) (chain rule; never a
// finite difference). Evaluated in exponentially scaled form, so it stays
// finite for arbitrarily large mu*t.
double density_with_rate(double mu, double c, double w, double t);

// Law of T(t) itself. Throws std::domain_error for |z| >= c*t.
double density(const TelegraphParams& p, double z, double t);

// Mass e^{-lambda t}/2 carried by each of the atoms at +-ct.
double atom_mass(const TelegraphParams& p, double t);

// E[T(t)^(2n)] (odd moments vanish). Requires 0 <= n <= 30.
double moment_even(const TelegraphParams& p, int n, double t);

// Right-continuous CDF of T(t), atoms included.
double cdf(const TelegraphParams& p, double z, double t);

struct Atom {
  double location = 0.0;
  double mass = 0.0;
};

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

// An evaluable mixed law: continuous density, explicit atoms, support.
struct AnalyticDensity {
  std::function<double(double, double)> continuous;        // (point, t)
  std::function<std::vector<Atom>(double)> atoms;          // t -> atoms
  std::function<Interval(double)> support;                 // t -> interval
  // Atom masses plus quadrature of the continuous part; should be 1.
  double total_mass(double t, double tol = 1e-10) const;
  double cdf(double z, double t) const;
};

AnalyticDensity analytic_density(const TelegraphParams& p);

}  // namespace fvm
