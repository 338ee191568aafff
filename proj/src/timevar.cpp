#include "fvm/timevar.hpp"

#include <algorithm>
#include <cmath>
#include <memory>
#include <stdexcept>

#include "fvm/quad.hpp"

namespace fvm {

namespace {

constexpr double kTwoPi = 6.28318530717958647692528676655900577;

// Fritsch-Carlson monotone cubic Hermite through the knots, with constant
// extrapolation outside, plus exact prefix integrals of the piecewise cubic.
struct Table {
  std::vector<double> t, s, m, prefix;

  double eval(double x) const {
    if (x <= t.front()) return s.front();
    if (x >= t.back()) return s.back();
    const std::size_t i = std::upper_bound(t.begin(), t.end(), x) - t.begin() - 1;
    const double h = t[i + 1] - t[i];
    const double u = (x - t[i]) / h;
    const double u2 = u * u, u3 = u2 * u;
    return (2 * u3 - 3 * u2 + 1) * s[i] + (u3 - 2 * u2 + u) * h * m[i] +
           (-2 * u3 + 3 * u2) * s[i + 1] + (u3 - u2) * h * m[i + 1];
  }

  // int_0^x of the interpolant (constant-extended below t0 and above tn).
  double integral(double x) const {
    if (x <= t.front()) return s.front() * x;
    double acc = s.front() * t.front();
    if (x >= t.back()) return acc + prefix.back() + s.back() * (x - t.back());
    const std::size_t i = std::upper_bound(t.begin(), t.end(), x) - t.begin() - 1;
    acc += prefix[i];
    const double h = t[i + 1] - t[i];
    const double u = (x - t[i]) / h;
    const double u2 = u * u, u3 = u2 * u, u4 = u2 * u2;
    // Antiderivatives of the Hermite basis on [0,1], scaled by h.
    acc += h * ((0.5 * u4 - u3 + u) * s[i] + (0.25 * u4 - (2.0 / 3.0) * u3 + 0.5 * u2) * h * m[i] +
                (-0.5 * u4 + u3) * s[i + 1] + (0.25 * u4 - u3 / 3.0) * h * m[i + 1]);
    return acc;
  }
};

std::shared_ptr<Table> build_table(std::vector<double> t, std::vector<double> s) {
  if (t.size() != s.size() || t.size() < 2)
    throw std::domain_error("SigmaProfile::from_table: need >= 2 knots of equal length");
  for (std::size_t i = 0; i + 1 < t.size(); ++i)
    if (!(t[i + 1] > t[i]))
      throw std::domain_error("SigmaProfile::from_table: knot times must be strictly increasing");
  if (t.front() < 0.0) throw std::domain_error("SigmaProfile::from_table: knot times must be >= 0");
  for (double v : s)
    if (!(v >= 0.0)) throw std::domain_error("SigmaProfile::from_table: sigma must be nonnegative");
  auto tab = std::make_shared<Table>();
  tab->t = std::move(t);
  tab->s = std::move(s);
  const std::size_t n = tab->t.size();
  std::vector<double> d(n - 1);
  for (std::size_t i = 0; i + 1 < n; ++i) d[i] = (tab->s[i + 1] - tab->s[i]) / (tab->t[i + 1] - tab->t[i]);
  tab->m.assign(n, 0.0);
  tab->m[0] = d[0];
  tab->m[n - 1] = d[n - 2];
  for (std::size_t i = 1; i + 1 < n; ++i)
    tab->m[i] = (d[i - 1] * d[i] <= 0.0) ? 0.0 : 0.5 * (d[i - 1] + d[i]);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    if (d[i] == 0.0) {
      tab->m[i] = tab->m[i + 1] = 0.0;
      continue;
    }
    const double alpha = tab->m[i] / d[i];
    const double beta = tab->m[i + 1] / d[i];
    const double r2 = alpha * alpha + beta * beta;
    if (r2 > 9.0) {
      const double tau = 3.0 / std::sqrt(r2);
      tab->m[i] = tau * alpha * d[i];
      tab->m[i + 1] = tau * beta * d[i];
    }
  }
  tab->prefix.assign(n, 0.0);
  for (std::size_t i = 0; i + 1 < n; ++i) {
    const double h = tab->t[i + 1] - tab->t[i];
    tab->prefix[i + 1] = tab->prefix[i] + h * (0.5 * (tab->s[i] + tab->s[i + 1]) +
                                               h * (tab->m[i] - tab->m[i + 1]) / 12.0);
  }
  return tab;
}

}  // namespace

double SigmaProfile::segment_integral(double a, double b) const {
  if (antiderivative) return (*antiderivative)(b) - (*antiderivative)(a);
  return integrate(sigma, a, b, 1e-10);
}

double SigmaProfile::square_integral(double t) const {
  if (antiderivative_sq) return (*antiderivative_sq)(t);
  return integrate([this](double u) { const double s = sigma(u); return s * s; }, 0.0, t, 1e-12);
}

SigmaProfile SigmaProfile::constant(double value) {
  if (!(value > 0.0)) throw std::domain_error("SigmaProfile::constant: value must be positive");
  SigmaProfile pr;
  pr.sigma = [value](double) { return value; };
  pr.antiderivative = [value](double t) { return value * t; };
  pr.antiderivative_sq = [value](double t) { return value * value * t; };
  return pr;
}

SigmaProfile SigmaProfile::linear(double slope) {
  if (!(slope > 0.0)) throw std::domain_error("SigmaProfile::linear: slope must be positive");
  SigmaProfile pr;
  pr.sigma = [slope](double u) { return slope * u; };
  pr.antiderivative = [slope](double t) { return 0.5 * slope * t * t; };
  pr.antiderivative_sq = [slope](double t) { return slope * slope * t * t * t / 3.0; };
  return pr;
}

SigmaProfile SigmaProfile::from_table(std::vector<double> t, std::vector<double> s) {
  auto tab = build_table(std::move(t), std::move(s));
  SigmaProfile pr;
  pr.sigma = [tab](double x) { return tab->eval(x); };
  pr.antiderivative = [tab](double x) { return tab->integral(x); };
  return pr;
}

double TimevarPath::value(double t) const {
  const PathSample& tel = telegraph_path;
  if (t < 0.0 || t > tel.horizon + 1e-12 * tel.horizon)
    throw std::domain_error("TimevarPath::value: t outside [0, horizon]");
  double x = 0.0, prev = 0.0;
  double dir = tel.initial_direction;
  for (double ev : tel.event_times) {
    if (ev >= t) break;
    x += dir * profile.segment_integral(prev, ev);
    prev = ev;
    dir = -dir;
  }
  x += dir * profile.segment_integral(prev, t);
  return tel.params.c * x;
}

TimevarPath sample_path(const SigmaProfile& profile, const TelegraphParams& p,
                        double horizon, RngStream& rng) {
  return TimevarPath{sample_path(p, horizon, rng), profile};
}

double sample_endpoint(const SigmaProfile& profile, const TelegraphParams& p, double t,
                       RngStream& rng) {
  validate(p);
  const int v0 = rng.sign();
  double x = 0.0, prev = 0.0;
  double dir = 1.0;
  double ev = rng.exponential(p.lambda);
  while (ev <= t) {
    x += dir * profile.segment_integral(prev, ev);
    prev = ev;
    dir = -dir;
    ev += rng.exponential(p.lambda);
  }
  x += dir * profile.segment_integral(prev, t);
  return v0 * p.c * x;
}

double covariance(const SigmaProfile& profile, const TelegraphParams& p, double s,
                  double t, double abs_tol) {
  validate(p);
  if (s < 0.0 || t < 0.0) throw std::domain_error("covariance: requires s, t >= 0");
  if (s == 0.0 || t == 0.0) return 0.0;
  return exp_kernel_double_integral(profile.sigma, p.lambda, p.c, s, t, abs_tol);
}

double limit_covariance(const SigmaProfile& profile, double s, double t) {
  if (s < 0.0 || t < 0.0) throw std::domain_error("limit_covariance: requires s, t >= 0");
  return profile.square_integral(std::min(s, t));
}

double limit_density(const SigmaProfile& profile, double x, double t) {
  if (!(t > 0.0)) throw std::domain_error("limit_density: requires t > 0");
  const double var = profile.square_integral(t);
  if (!(var > 0.0)) throw std::domain_error("limit_density: requires int sigma^2 > 0");
  return std::exp(-0.5 * x * x / var) / std::sqrt(kTwoPi * var);
}

}  // namespace fvm
