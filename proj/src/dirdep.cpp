#include "fvm/dirdep.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "fvm/mc.hpp"
#include "fvm/specfun.hpp"

namespace fvm {

namespace {

// Exact relaxation over a segment of length dt in direction d.
inline double relax(double x, int d, double c, double dt) {
  const double decay = std::exp(-c * dt);
  return d == 0 ? 1.0 - (1.0 - x) * decay : x * decay;
}

int draw_start(const DirDepParams& p, RngStream& rng) {
  return p.d0_start ? *p.d0_start : (rng.sign() > 0 ? 0 : 1);
}

}  // namespace

void validate(const DirDepParams& p) {
  if (!(p.lambda > 0.0) || !(p.c > 0.0))
    throw std::domain_error("DirDepParams: lambda and c must be positive");
  if (!(p.x0 > 0.0 && p.x0 < 1.0))
    throw std::domain_error("DirDepParams: x0 must lie strictly inside (0,1)");
  if (p.d0_start && *p.d0_start != 0 && *p.d0_start != 1)
    throw std::domain_error("DirDepParams: d0_start must be 0 or 1");
}

double DirDepPath::value(double t) const {
  if (t < 0.0 || t > horizon + 1e-12 * horizon)
    throw std::domain_error("DirDepPath::value: t outside [0, horizon]");
  double x = params.x0;
  double prev = 0.0;
  int d = initial_direction;
  for (std::size_t i = 0; i < event_times.size() && event_times[i] <= t; ++i) {
    x = x_at_events[i];
    prev = event_times[i];
    d = (initial_direction + static_cast<int>(i) + 1) % 2;
  }
  return relax(x, d, params.c, t - prev);
}

DirDepPath sample_path(const DirDepParams& p, double horizon, RngStream& rng) {
  validate(p);
  if (!(horizon > 0.0)) throw std::domain_error("sample_path: horizon must be positive");
  DirDepPath path;
  path.horizon = horizon;
  path.params = p;
  path.initial_direction = draw_start(p, rng);
  int d = path.initial_direction;
  double x = p.x0;
  double prev = 0.0;
  double ev = rng.exponential(p.lambda);
  while (ev <= horizon) {
    x = relax(x, d, p.c, ev - prev);
    path.event_times.push_back(ev);
    path.x_at_events.push_back(x);
    d = 1 - d;
    prev = ev;
    ev += rng.exponential(p.lambda);
  }
  return path;
}

double sample_endpoint(const DirDepParams& p, double t, RngStream& rng) {
  validate(p);
  int d = draw_start(p, rng);
  double x = p.x0;
  double prev = 0.0;
  double ev = rng.exponential(p.lambda);
  while (ev <= t) {
    x = relax(x, d, p.c, ev - prev);
    d = 1 - d;
    prev = ev;
    ev += rng.exponential(p.lambda);
  }
  return relax(x, d, p.c, t - prev);
}

double sample_endpoint_conditional(const DirDepParams& p, int d_start, int n, double t,
                                   RngStream& rng) {
  validate(p);
  if (n < 0) throw std::domain_error("sample_endpoint_conditional: requires n >= 0");
  if (d_start != 0 && d_start != 1)
    throw std::domain_error("sample_endpoint_conditional: d_start must be 0 or 1");
  std::vector<double> times(n);
  for (auto& s : times) s = t * rng.uniform();
  std::sort(times.begin(), times.end());
  double x = p.x0;
  double prev = 0.0;
  int d = d_start;
  for (double ev : times) {
    x = relax(x, d, p.c, ev - prev);
    d = 1 - d;
    prev = ev;
  }
  return relax(x, d, p.c, t - prev);
}

double cond_mean(const DirDepParams& p, int d_start, int n, double t) {
  validate(p);
  if (n < 0) throw std::domain_error("cond_mean: requires n >= 0");
  if (d_start != 0 && d_start != 1) throw std::domain_error("cond_mean: d_start must be 0 or 1");
  if (!(t >= 0.0)) throw std::domain_error("cond_mean: requires t >= 0");
  const double z = p.c * t;
  const double decay = std::exp(-z);
  // S_n = sum_{j=0}^n (-1)^j 1F1(j; n+1; ct); Neumaier compensation since
  // the terms alternate and grow with n.
  double sum = 0.0, comp = 0.0;
  for (int j = 0; j <= n; ++j) {
    const double term = (j % 2 == 0 ? 1.0 : -1.0) * specfun::hyp1f1(j, n + 1, z);
    const double s = sum + term;
    comp += (std::abs(sum) >= std::abs(term)) ? (sum - s) + term : (term - s) + sum;
    sum = s;
  }
  const double S = sum + comp;
  const bool even = (n % 2 == 0);
  if (d_start == 0) return even ? 1.0 + p.x0 * decay - decay * S : p.x0 * decay - decay * S;
  return even ? -(1.0 - p.x0) * decay + decay * S : 1.0 - (1.0 - p.x0) * decay + decay * S;
}

double uncond_mean(const DirDepParams& p, double t) {
  validate(p);
  if (!(t >= 0.0)) throw std::domain_error("uncond_mean: requires t >= 0");
  const double decay = std::exp(-p.c * t);
  return p.x0 * decay + 0.5 * (1.0 - decay);
}

CollapseResult collapse_experiment(double c, double t, long replicas, double band,
                                   double x0, std::uint64_t seed, int threads) {
  if (!(c > 0.0) || !(t > 0.0)) throw std::domain_error("collapse_experiment: c, t must be positive");
  if (!(band > 0.0)) throw std::domain_error("collapse_experiment: band must be positive");
  if (replicas < 1) throw std::domain_error("collapse_experiment: requires replicas >= 1");
  // Unit switching intensity, speed c. For c >> lambda the exponential
  // relaxation between events pins each path near 0 or 1 (the endpoint
  // fractions approach 1/2 each). Scaling lambda together with c^2 would
  // instead average the two pulls out and concentrate paths at 1/2.
  DirDepParams p{1.0, c, x0, std::nullopt};
  validate(p);
  const auto ends = run_replicas(
      [&](RngStream& rng) { return sample_endpoint(p, t, rng); }, replicas, seed, threads);
  CollapseResult r;
  r.replicas = replicas;
  long near0 = 0, near1 = 0;
  for (double x : ends) {
    if (x <= band) ++near0;
    if (x >= 1.0 - band) ++near1;
  }
  r.frac_near_0 = static_cast<double>(near0) / replicas;
  r.frac_near_1 = static_cast<double>(near1) / replicas;
  return r;
}

}  // namespace fvm
