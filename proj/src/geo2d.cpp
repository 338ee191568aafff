#include "fvm/geo2d.hpp"

#include <cmath>
#include <stdexcept>

namespace fvm {

namespace {

constexpr double kPi = 3.14159265358979323846264338327950288;

PlanarParams planar_of(const Geo2dParams& g) { return {g.lambda, g.c, g.p}; }

}  // namespace

void validate(const Geo2dParams& g) {
  if (!(g.lambda > 0.0) || !(g.c > 0.0))
    throw std::domain_error("Geo2dParams: lambda and c must be positive");
  if (!(g.p > 0.0 && g.p < 1.0))
    throw std::domain_error("Geo2dParams: p must lie strictly inside (0,1)");
  if (!(g.x0 > 0.0) || !(g.y0 > 0.0))
    throw std::domain_error("Geo2dParams: x0 and y0 must be positive");
}

Geo2dSample sample(const Geo2dParams& g, double t, RngStream& rng) {
  validate(g);
  Geo2dSample s;
  s.log_state = sample_planar_endpoint(planar_of(g), t, rng);
  s.x = g.x0 * std::exp(s.log_state.u);
  s.y = g.y0 * std::exp(s.log_state.v);
  return s;
}

double joint_density(const Geo2dParams& g, double x, double y, double t) {
  validate(g);
  if (!(x > 0.0 && y > 0.0)) throw std::domain_error("joint_density: requires x, y > 0");
  const double u = std::log(x / g.x0);
  const double v = std::log(y / g.y0);
  return interior_density_uv(planar_of(g), u, v, t) / (x * y);
}

double limit_density(double p, double x0, double y0, double x, double y, double t) {
  if (!(p > 0.0 && p < 1.0)) throw std::domain_error("limit_density: requires p in (0,1)");
  if (!(x0 > 0.0 && y0 > 0.0)) throw std::domain_error("limit_density: requires x0, y0 > 0");
  if (!(x > 0.0 && y > 0.0)) throw std::domain_error("limit_density: requires x, y > 0");
  if (!(t > 0.0)) throw std::domain_error("limit_density: requires t > 0");
  // The U+V channel switches at rate lambda(1-p), so its limit variance is
  // t/(1-p): the exponent pairs 1-p with log(xy/x0y0) and p with the
  // difference coordinate. (The opposite pairing would imply a limiting
  // correlation of 1-2p instead of 2p-1.)
  const double sum_log = std::log(x * y / (x0 * y0));
  const double diff_log = std::log(x * y0 / (x0 * y));
  const double expo =
      ((1.0 - p) * sum_log * sum_log + p * diff_log * diff_log) / (2.0 * t);
  return std::sqrt(p * (1.0 - p)) / (kPi * t * x * y) * std::exp(-expo);
}

ItoParams param_map(double p) {
  if (!(p > 0.0 && p < 1.0)) throw std::domain_error("param_map: requires p in (0,1)");
  const double q = 4.0 * p * (1.0 - p);
  return {1.0 / (2.0 * q), 1.0 / (2.0 * q), 1.0 / q, 1.0 / q, 2.0 * p - 1.0};
}

}  // namespace fvm
