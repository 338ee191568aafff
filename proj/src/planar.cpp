#include "fvm/planar.hpp"

#include <cmath>
#include <stdexcept>

#include "fvm/specfun.hpp"

namespace fvm {

namespace {

// Unit displacement per direction.
constexpr double kDx[4] = {1.0, 0.0, -1.0, 0.0};
constexpr double kDy[4] = {0.0, 1.0, 0.0, -1.0};

// Transition targets: with probability p along d_0<->d_1 / d_2<->d_3,
// with probability 1-p along d_0<->d_3 / d_1<->d_2.
constexpr int kPTarget[4] = {1, 0, 3, 2};
constexpr int kQTarget[4] = {3, 2, 1, 0};

void require_symmetric(const PlanarParams& p, const char* who) {
  if (p.p != 0.5)
    throw std::invalid_argument(std::string(who) + ": side densities require p = 1/2");
}

}  // namespace

void validate(const PlanarParams& p) {
  if (!(p.lambda > 0.0) || !(p.c > 0.0))
    throw std::domain_error("PlanarParams: lambda and c must be positive");
  if (!(p.p >= 0.0 && p.p <= 1.0)) throw std::domain_error("PlanarParams: p must be in [0,1]");
}

std::pair<double, double> PlanarPath::value(double t) const {
  if (t < 0.0 || t > horizon + 1e-12 * horizon)
    throw std::domain_error("PlanarPath::value: t outside [0, horizon]");
  double u = 0.0, v = 0.0, prev = 0.0;
  int d = initial_direction;
  for (std::size_t i = 0; i < event_times.size() && event_times[i] < t; ++i) {
    const double dt = event_times[i] - prev;
    u += params.c * kDx[d] * dt;
    v += params.c * kDy[d] * dt;
    prev = event_times[i];
    d = directions[i];
  }
  u += params.c * kDx[d] * (t - prev);
  v += params.c * kDy[d] * (t - prev);
  return {u, v};
}

PlanarPath sample_planar(const PlanarParams& p, double horizon, RngStream& rng) {
  validate(p);
  if (!(horizon > 0.0)) throw std::domain_error("sample_planar: horizon must be positive");
  PlanarPath path;
  path.horizon = horizon;
  path.params = p;
  path.initial_direction = rng.uniform_int(4);
  int d = path.initial_direction;
  double t = rng.exponential(p.lambda);
  while (t <= horizon) {
    d = (rng.uniform() < p.p) ? kPTarget[d] : kQTarget[d];
    path.event_times.push_back(t);
    path.directions.push_back(d);
    t += rng.exponential(p.lambda);
  }
  return path;
}

PlanarEndpoint sample_planar_endpoint(const PlanarParams& p, double t, RngStream& rng) {
  validate(p);
  PlanarEndpoint e;
  int d = rng.uniform_int(4);
  e.used[d] = true;
  double prev = 0.0;
  double ev = rng.exponential(p.lambda);
  while (ev <= t) {
    e.u += p.c * kDx[d] * (ev - prev);
    e.v += p.c * kDy[d] * (ev - prev);
    d = (rng.uniform() < p.p) ? kPTarget[d] : kQTarget[d];
    e.used[d] = true;
    ++e.events;
    prev = ev;
    ev += rng.exponential(p.lambda);
  }
  e.u += p.c * kDx[d] * (t - prev);
  e.v += p.c * kDy[d] * (t - prev);
  return e;
}

bool on_side_s1(const PlanarEndpoint& e) {
  return e.used[0] && e.used[1] && !e.used[2] && !e.used[3];
}

double interior_density_uv(const PlanarParams& p, double u, double v, double t) {
  validate(p);
  if (!(t > 0.0)) throw std::domain_error("interior_density_uv: requires t > 0");
  const double span = p.c * t;
  if (!(std::abs(u + v) < span) || !(std::abs(u - v) < span))
    throw std::domain_error("interior_density_uv: (u,v) outside the open square support");
  const double mu1 = p.lambda * (1.0 - p.p);
  const double mu2 = p.lambda * p.p;
  if (mu1 == 0.0 || mu2 == 0.0) return 0.0;  // all mass on the boundary diagonals
  return 2.0 * density_with_rate(mu1, p.c, u + v, t) * density_with_rate(mu2, p.c, u - v, t);
}

double boundary_probability(const PlanarParams& p, double t) {
  validate(p);
  if (!(t > 0.0)) throw std::domain_error("boundary_probability: requires t > 0");
  return std::exp(-p.lambda * (1.0 - p.p) * t) + std::exp(-p.lambda * p.p * t) -
         std::exp(-p.lambda * t);
}

double corner_mass(const PlanarParams& p, double t) {
  validate(p);
  if (!(t > 0.0)) throw std::domain_error("corner_mass: requires t > 0");
  return 0.25 * std::exp(-p.lambda * t);
}

double side_density_q(const PlanarParams& p, double u, double t) {
  validate(p);
  require_symmetric(p, "side_density_q");
  if (!(t > 0.0)) throw std::domain_error("side_density_q: requires t > 0");
  const double span = p.c * t;
  if (!(u > 0.0 && u < span)) throw std::domain_error("side_density_q: requires 0 < u < ct");
  // q(u,t) = e^{-lt}/(2c) [ (l/2) I_0(B) + (l^2 t/4) I_1(B)/B ],
  // B = (l/c) sqrt(u (ct-u)). The d/dt term is taken in the side coordinate
  // eta = 2u - ct (fixed eta), which is what the change of variables from
  // the H-law requires; see side_density_H.
  const double B = (p.lambda / p.c) * std::sqrt(u * (span - u));
  const double bracket = 0.5 * p.lambda * specfun::bessel_i0e(B) +
                         0.25 * p.lambda * p.lambda * t * specfun::bessel_i1e_over_x(B);
  return std::exp(B - p.lambda * t) * bracket / (2.0 * p.c);
}

double side_density_H(const PlanarParams& p, double eta, double t) {
  validate(p);
  require_symmetric(p, "side_density_H");
  if (!(t > 0.0)) throw std::domain_error("side_density_H: requires t > 0");
  const double span = p.c * t;
  if (!(std::abs(eta) < span)) throw std::domain_error("side_density_H: requires |eta| < ct");
  const double C = (p.lambda / (2.0 * p.c)) * std::sqrt((span - eta) * (span + eta));
  const double bracket = 0.5 * p.lambda * specfun::bessel_i0e(C) +
                         0.25 * p.lambda * p.lambda * t * specfun::bessel_i1e_over_x(C);
  return std::exp(C - p.lambda * t) * bracket / (4.0 * p.c);
}

double wrapped_density_xy(const VelocityModel& m, const PlanarParams& p, double x,
                          double y, double t) {
  if (m.c != p.c)
    throw std::invalid_argument("wrapped_density_xy: model and params must share the speed c");
  const double u = m.W(x);
  const double v = m.W(y);
  return interior_density_uv(p, u, v, t) * p.c * p.c / (m.v(x) * m.v(y));
}

double wrapped_boundary_abscissa(const VelocityModel& m, const PlanarParams& p,
                                 double x, double t) {
  if (m.c != p.c)
    throw std::invalid_argument("wrapped_boundary_abscissa: model and params must share the speed c");
  const double u = m.W(x);
  return side_density_q(p, u, t) * p.c / m.v(x);
}

std::vector<BoundarySide> support_boundary(const VelocityModel& m, double t) {
  if (m.family != "constant" && m.family != "symlogistic")
    throw std::invalid_argument("support_boundary: supported for constant and symlogistic models");
  if (!(t > 0.0)) throw std::domain_error("support_boundary: requires t > 0");
  const double span = m.c * t;
  const double mid = m.Winv(0.0);
  const double hi = m.Winv(span);
  const double lo = m.Winv(-span);
  std::vector<BoundarySide> sides;
  sides.push_back({"u+v=+ct", mid, hi, [m, span](double x) { return m.Winv(span - m.W(x)); }});
  sides.push_back({"u-v=+ct", mid, hi, [m, span](double x) { return m.Winv(m.W(x) - span); }});
  sides.push_back({"u+v=-ct", lo, mid, [m, span](double x) { return m.Winv(-span - m.W(x)); }});
  sides.push_back({"u-v=-ct", lo, mid, [m, span](double x) { return m.Winv(m.W(x) + span); }});
  return sides;
}

}  // namespace fvm
