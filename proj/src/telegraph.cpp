#include "fvm/telegraph.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "fvm/quad.hpp"
#include "fvm/specfun.hpp"

namespace fvm {

void validate(const TelegraphParams& p) {
  if (!(p.lambda > 0.0) || !std::isfinite(p.lambda) || !(p.c > 0.0) || !std::isfinite(p.c))
    throw std::domain_error("TelegraphParams: lambda and c must be positive and finite");
}

double PathSample::value(double t) const {
  if (t < 0.0 || t > horizon + 1e-12 * horizon)
    throw std::domain_error("PathSample::value: t outside [0, horizon]");
  double pos = 0.0;
  double prev = 0.0;
  double dir = initial_direction;
  for (double ev : event_times) {
    if (ev >= t) break;
    pos += dir * params.c * (ev - prev);
    prev = ev;
    dir = -dir;
  }
  return pos + dir * params.c * (t - prev);
}

int PathSample::direction(double t) const {
  std::size_t flips = 0;
  for (double ev : event_times) {
    if (ev > t) break;
    ++flips;
  }
  return (flips % 2 == 0) ? initial_direction : -initial_direction;
}

PathSample sample_path(const TelegraphParams& p, double horizon, RngStream& rng) {
  validate(p);
  if (!(horizon > 0.0)) throw std::domain_error("sample_path: horizon must be positive");
  PathSample path;
  path.horizon = horizon;
  path.params = p;
  path.initial_direction = rng.sign();
  double t = rng.exponential(p.lambda);
  while (t <= horizon) {
    path.event_times.push_back(t);
    t += rng.exponential(p.lambda);
  }
  return path;
}

double sample_endpoint(const TelegraphParams& p, double t, RngStream& rng) {
  validate(p);
  const int v0 = rng.sign();
  double pos = 0.0;
  double prev = 0.0;
  double dir = 1.0;
  double ev = rng.exponential(p.lambda);
  while (ev <= t) {
    pos += dir * (ev - prev);
    prev = ev;
    dir = -dir;
    ev += rng.exponential(p.lambda);
  }
  pos += dir * (t - prev);
  return v0 * p.c * pos;
}

double density_with_rate(double mu, double c, double w, double t) {
  const double span = c * t;
  const double gap = (span - w) * (span + w);  // c^2 t^2 - w^2
  if (gap <= 0.0) throw std::domain_error("density_with_rate: requires |w| < c*t");
  const double arg = (mu / c) * std::sqrt(gap);
  // e^{-mu t} [mu I_0 + mu^2 t I_1/arg] = e^{arg - mu t} [mu i0e + mu^2 t i1e/arg]
  const double bracket =
      mu * specfun::bessel_i0e(arg) + mu * mu * t * specfun::bessel_i1e_over_x(arg);
  return std::exp(arg - mu * t) * bracket / (2.0 * c);
}

double density(const TelegraphParams& p, double z, double t) {
  validate(p);
  if (!(t > 0.0)) throw std::domain_error("density: requires t > 0");
  if (std::abs(z) >= p.c * t)
    throw std::domain_error("density: requires |z| < c*t (atoms live on the boundary)");
  return density_with_rate(p.lambda, p.c, z, t);
}

double atom_mass(const TelegraphParams& p, double t) {
  validate(p);
  if (!(t > 0.0)) throw std::domain_error("atom_mass: requires t > 0");
  return 0.5 * std::exp(-p.lambda * t);
}

double moment_even(const TelegraphParams& p, int n, double t) {
  validate(p);
  if (n < 0 || n > 30) throw std::out_of_range("moment_even: requires 0 <= n <= 30");
  if (!(t > 0.0)) throw std::domain_error("moment_even: requires t > 0");
  if (n == 0) return 1.0;
  const double x = p.lambda * t;
  const double bess = specfun::bessel_i(specfun::HalfIntOrder{2 * n + 1}, x) +
                      specfun::bessel_i(specfun::HalfIntOrder{2 * n - 1}, x);
  return std::exp(-x) * std::pow(p.c * t, 2 * n) * std::pow(2.0 / x, n - 0.5) *
         specfun::gamma_n_plus_half(n) * bess;
}

double AnalyticDensity::total_mass(double t, double tol) const {
  const Interval sp = support(t);
  double mass = 0.0;
  for (const Atom& a : atoms(t)) mass += a.mass;
  // Nudge off the edges: the continuous part is defined on the open interval.
  const double eps = 1e-12 * (sp.hi - sp.lo);
  mass += integrate([&](double z) { return continuous(z, t); }, sp.lo + eps, sp.hi - eps, tol);
  return mass;
}

double AnalyticDensity::cdf(double z, double t) const {
  const Interval sp = support(t);
  double acc = 0.0;
  for (const Atom& a : atoms(t))
    if (a.location <= z) acc += a.mass;
  const double eps = 1e-12 * (sp.hi - sp.lo);
  const double lo = sp.lo + eps;
  const double hi = std::min(z, sp.hi - eps);
  if (hi > lo) acc += integrate([&](double w) { return continuous(w, t); }, lo, hi, 1e-11);
  return std::min(acc, 1.0);
}

AnalyticDensity analytic_density(const TelegraphParams& p) {
  validate(p);
  AnalyticDensity law;
  law.continuous = [p](double z, double t) { return density(p, z, t); };
  law.atoms = [p](double t) {
    const double m = atom_mass(p, t);
    return std::vector<Atom>{{-p.c * t, m}, {p.c * t, m}};
  };
  law.support = [p](double t) { return Interval{-p.c * t, p.c * t}; };
  return law;
}

double cdf(const TelegraphParams& p, double z, double t) {
  validate(p);
  if (!(t > 0.0)) throw std::domain_error("cdf: requires t > 0");
  return analytic_density(p).cdf(z, t);
}

}  // namespace fvm
