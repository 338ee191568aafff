#pragma once

// Correlated bivariate geometric telegraph: (X,Y) = (x0 e^U, y0 e^V) where
// (U,V) is the planar orthogonal motion with switching split p. In the
// hydrodynamic limit it converges to a correlated bivariate geometric
// Brownian motion with rho = 2p - 1.

#include <utility>

#include "fvm/planar.hpp"
#include "fvm/rng.hpp"

namespace fvm {

struct Geo2dParams {
  double lambda = 1.0;
  double c = 1.0;
  double p = 0.5;   // in (0,1): the limit map needs 4p(1-p) > 0
  double x0 = 1.0;  // positive starting prices
  double y0 = 1.0;
};

void validate(const Geo2dParams& g);

struct Geo2dSample {
  double x = 0.0, y = 0.0;
  PlanarEndpoint log_state;  // (u, v) = (log(x/x0), log(y/y0)) plus usage flags
};

Geo2dSample sample(const Geo2dParams& g, double t, RngStream& rng);

// Exact joint density in the open image of Int(S_t):
// f(x,y,t) = g_p(log(x/x0), log(y/y0), t) / (x y).
double joint_density(const Geo2dParams& g, double x, double y, double t);

// Hydrodynamic-limit joint density (lambda = c^2 -> infinity):
// sqrt(p(1-p))/(pi t x y) exp(-[(1-p) log^2(xy/x0y0) + p log^2(x y0 / x0 y)]/(2t)).
double limit_density(double p, double x0, double y0, double x, double y, double t);

struct ItoParams {
  double mu = 0.0;
  double kappa = 0.0;
  double sigma_sq = 0.0;
  double eta_sq = 0.0;
  double rho = 0.0;
};

// Parameters of the limiting correlated geometric diffusion:
// mu = kappa = 1/(8p(1-p)), sigma^2 = eta^2 = 1/(4p(1-p)), rho = 2p - 1.
ItoParams param_map(double p);

}  // namespace fvm
