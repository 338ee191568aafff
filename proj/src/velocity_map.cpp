#include "fvm/velocity_map.hpp"

#include <cmath>
#include <stdexcept>

#include "fvm/euler_poly.hpp"
#include "fvm/quad.hpp"
#include "fvm/specfun.hpp"

namespace fvm {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();
constexpr double kSqrtPi = 1.77245385090551602729816748334114518;

void require_speed(double c) {
  if (!(c > 0.0) || !std::isfinite(c)) throw std::domain_error("velocity model: c must be positive");
}

}  // namespace

VelocityModel constant_model(double c, double x0) {
  require_speed(c);
  VelocityModel m;
  m.family = "constant";
  m.c = c;
  m.x0 = x0;
  m.domain = {-kInf, kInf};
  m.v = [c](double) { return c; };
  m.W = [x0](double x) { return x - x0; };
  m.Winv = [x0](double z) { return x0 + z; };
  return m;
}

VelocityModel linear_model(double c, double x0) {
  require_speed(c);
  if (!(x0 > 0.0)) throw std::domain_error("linear_model: requires x0 > 0");
  VelocityModel m;
  m.family = "linear";
  m.c = c;
  m.x0 = x0;
  m.domain = {0.0, kInf};
  m.v = [c](double x) { return c * x; };
  m.W = [x0](double x) { return std::log(x / x0); };
  m.Winv = [x0](double z) { return x0 * std::exp(z); };
  m.lower = {false, 0.0};  // v vanishes linearly at 0: unreachable
  return m;
}

VelocityModel power_model(double c, double alpha, double x0, PowerVariant variant) {
  require_speed(c);
  if (!(alpha > 0.0 && alpha < 1.0)) throw std::domain_error("power_model: requires alpha in (0,1)");
  if (!(x0 > 0.0)) throw std::domain_error("power_model: requires x0 > 0");
  VelocityModel m;
  m.family = "power";
  m.c = c;
  m.x0 = x0;
  m.domain = {0.0, kInf};
  const double b = 1.0 - alpha;
  const double x0b = std::pow(x0, b);
  m.v = [c, alpha](double x) { return c * std::pow(x, alpha); };
  m.W = [b, x0b](double x) { return (std::pow(x, b) - x0b) / b; };
  m.Winv = [b, x0b](double z) {
    const double base = x0b + b * z;
    return base <= 0.0 ? 0.0 : std::pow(base, 1.0 / b);
  };
  // Sublinear decay at 0: a straight leftward run reaches it at t*.
  m.lower = {true, x0b / (c * b)};
  m.variant = variant;
  m.barrier_level = -x0b / b;  // W(0)
  return m;
}

VelocityModel logistic_model(double c, double x0) {
  require_speed(c);
  if (!(x0 > 0.0 && x0 < 1.0)) throw std::domain_error("logistic_model: requires x0 in (0,1)");
  VelocityModel m;
  m.family = "logistic";
  m.c = c;
  m.x0 = x0;
  m.domain = {0.0, 1.0};
  m.v = [c](double x) { return c * x * (1.0 - x); };
  // W(x) = log odds ratio; Winv is the logistic map.
  m.W = [x0](double x) { return std::log(x * (1.0 - x0) / (x0 * (1.0 - x))); };
  m.Winv = [x0](double z) {
    const double e = std::exp(z);
    return x0 * e / (1.0 - x0 * (1.0 - e));
  };
  return m;
}

VelocityModel symlogistic_model(double c, double x0) {
  require_speed(c);
  if (!(x0 > -1.0 && x0 < 1.0)) throw std::domain_error("symlogistic_model: requires x0 in (-1,1)");
  VelocityModel m;
  m.family = "symlogistic";
  m.c = c;
  m.x0 = x0;
  m.domain = {-1.0, 1.0};
  const double w0 = std::atanh(x0);
  m.v = [c](double x) { return c * (1.0 - x * x); };
  m.W = [w0](double x) { return std::atanh(x) - w0; };
  m.Winv = [w0](double z) { return std::tanh(w0 + z); };
  return m;
}

VelocityModel model_from_speed(std::function<double(double)> v, double c, double x0,
                               Interval domain, std::string name) {
  require_speed(c);
  if (!(x0 > domain.lo && x0 < domain.hi))
    throw std::domain_error("model_from_speed: x0 must lie inside the domain");
  VelocityModel m;
  m.family = std::move(name);
  m.c = c;
  m.x0 = x0;
  m.domain = domain;
  m.v = v;
  auto W = [v, c, x0](double x) {
    return c * integrate([&](double w) { return 1.0 / v(w); }, x0, x, 1e-12);
  };
  m.W = W;
  m.Winv = [W, domain, x0](double z) {
    // Bracket by doubling steps from x0, then bisect W(x) = z to 1e-12.
    double lo = x0, hi = x0;
    double step = 1e-3 * (std::isfinite(domain.hi - domain.lo)
                              ? (domain.hi - domain.lo)
                              : std::max(1.0, std::abs(x0)));
    if (z >= 0.0) {
      while (W(hi) < z) {
        lo = hi;
        hi = std::min(hi + step, domain.hi - 1e-15 * std::max(1.0, std::abs(domain.hi)));
        step *= 2.0;
        if (hi >= domain.hi) break;
      }
    } else {
      while (W(lo) > z) {
        hi = lo;
        lo = std::max(lo - step, domain.lo + 1e-15 * std::max(1.0, std::abs(domain.lo)));
        step *= 2.0;
        if (lo <= domain.lo) break;
      }
    }
    for (int i = 0; i < 200; ++i) {
      const double mid = 0.5 * (lo + hi);
      if (hi - lo < 1e-14 * std::max(1.0, std::abs(mid))) return mid;
      (W(mid) < z ? lo : hi) = mid;
    }
    return 0.5 * (lo + hi);
  };
  return m;
}

std::function<double(double)> transform_path(const VelocityModel& m, const PathSample& tel_path) {
  if (m.lower.reachable || m.upper.reachable) {
    if (!m.variant)
      throw std::invalid_argument("transform_path: reachable barrier requires a reflect/absorb variant");
    const double level = m.barrier_level;
    if (*m.variant == PowerVariant::reflect) {
      return [m, tel_path, level](double t) {
        const double z = tel_path.value(t);
        return m.Winv(level + std::abs(z - level));
      };
    }
    // Absorbing: first time the piecewise-linear T(t) reaches `level` (< 0).
    double tau0 = kInf;
    {
      const double c = tel_path.params.c;
      double seg_start = 0.0, z = 0.0;
      double dir = tel_path.initial_direction;
      auto cross = [&](double seg_end) {
        const double z_end = z + dir * c * (seg_end - seg_start);
        if (dir < 0 && z_end <= level) {
          tau0 = seg_start + (z - level) / c;
          return true;
        }
        seg_start = seg_end;
        z = z_end;
        dir = -dir;
        return false;
      };
      for (double ev : tel_path.event_times)
        if (cross(ev)) break;
      if (tau0 == kInf) cross(tel_path.horizon);
    }
    return [m, tel_path, level, tau0](double t) {
      if (t >= tau0) return m.Winv(level);
      return m.Winv(tel_path.value(t));
    };
  }
  return [m, tel_path](double t) { return m.Winv(tel_path.value(t)); };
}

double density_x(const VelocityModel& m, double lambda, double x, double t) {
  if (!(lambda > 0.0)) throw std::domain_error("density_x: lambda must be positive");
  if (!(t > 0.0)) throw std::domain_error("density_x: requires t > 0");
  if (m.lower.reachable && t >= m.lower.t_star)
    throw std::invalid_argument("density_x: analytic density undefined for t >= t* (reachable barrier)");
  if (m.upper.reachable && t >= m.upper.t_star)
    throw std::invalid_argument("density_x: analytic density undefined for t >= t* (reachable barrier)");
  const double z = m.W(x);
  if (!(std::abs(z) < m.c * t)) throw std::domain_error("density_x: x outside the open support");
  return m.c * density_with_rate(lambda, m.c, z, t) / m.v(x);
}

SupportInfo support(const VelocityModel& m, double lambda, double t) {
  if (!(lambda > 0.0)) throw std::domain_error("support: lambda must be positive");
  if (!(t > 0.0)) throw std::domain_error("support: requires t > 0");
  if ((m.lower.reachable && t >= m.lower.t_star) || (m.upper.reachable && t >= m.upper.t_star))
    throw std::invalid_argument("support: undefined for t >= t* (reachable barrier)");
  SupportInfo s;
  s.interval = {m.Winv(-m.c * t), m.Winv(m.c * t)};
  const double mass = 0.5 * std::exp(-lambda * t);
  s.atoms = {{s.interval.lo, mass}, {s.interval.hi, mass}};
  return s;
}

namespace {

MomentResult sum_moment_series(double a, double x0, int N,
                               const std::function<double(int)>& term_weight) {
  if (!(a > 0.0)) throw std::domain_error("logistic moment: requires a > 0");
  if (!(x0 > 0.0 && x0 < 1.0)) throw std::domain_error("logistic moment: requires x0 in (0,1)");
  if (N < 0 || 2 * N > specfun::kStirlingMaxK)
    throw std::out_of_range("logistic moment: requires 0 <= N <= 30 (degree window)");
  const double theta0 = x0 / (1.0 - x0);
  const auto poly_at_a = euler_poly_values(2 * N, a, theta0, a);
  MomentResult r;
  double sum = 0.0;
  double last = 0.0;
  double fact2n = 1.0;  // (2n)!
  for (int n = 0; n <= N; ++n) {
    if (n > 0) fact2n *= (2.0 * n - 1.0) * (2.0 * n);
    last = poly_at_a[2 * n] / fact2n * term_weight(n);
    sum += last;
  }
  r.value = std::pow(x0, a) * sum;
  r.last_term = std::pow(x0, a) * last;
  r.terms = N + 1;
  r.converged = std::abs(last) <= 1e-8 * std::abs(sum);
  return r;
}

}  // namespace

MomentResult logistic_moment(double a, const TelegraphParams& p, double x0, double t, int N) {
  validate(p);
  if (!(t >= 0.0)) throw std::domain_error("logistic_moment: requires t >= 0");
  if (t == 0.0) return {std::pow(x0, a), 0.0, 1, true};
  const double x = p.lambda * t;
  if (x > 500.0)
    throw std::domain_error("logistic_moment: lambda*t too large for the Bessel series window");
  const double g = 2.0 * p.c * p.c * t / p.lambda;
  const double prefactor = std::sqrt(0.5 * x) * std::exp(-x);
  auto weight = [&](int n) {
    const double bess = specfun::bessel_i(specfun::HalfIntOrder{2 * n + 1}, x) +
                        specfun::bessel_i(specfun::HalfIntOrder{2 * n - 1}, x);
    return prefactor * specfun::gamma_n_plus_half(n) * bess * std::pow(g, n);
  };
  return sum_moment_series(a, x0, N, weight);
}

MomentResult logistic_moment_hydro(double a, double x0, double t, int N) {
  if (!(t >= 0.0)) throw std::domain_error("logistic_moment_hydro: requires t >= 0");
  if (t == 0.0) return {std::pow(x0, a), 0.0, 1, true};
  auto weight = [&](int n) {
    return specfun::gamma_n_plus_half(n) * std::pow(2.0 * t, n) / kSqrtPi;
  };
  return sum_moment_series(a, x0, N, weight);
}

}  // namespace fvm
