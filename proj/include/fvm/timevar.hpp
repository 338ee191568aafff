#pragma once

// Motion with time-dependent velocity v(t) = c * sigma(t), represented
// pathwise as X(t) = int_0^t sigma(u) dT(u) over a standard telegraph
// process: along each constant-direction segment the increment is the
// signed integral of sigma over the segment.

#include <functional>
#include <optional>
#include <vector>

#include "fvm/rng.hpp"
#include "fvm/telegraph.hpp"

namespace fvm {

struct SigmaProfile {
  std::function<double(double)> sigma;
  // Closed forms, used instead of quadrature when present.
  std::optional<std::function<double(double)>> antiderivative;     // int_0^t sigma
  std::optional<std::function<double(double)>> antiderivative_sq;  // int_0^t sigma^2
  bool integrable = true;

  // int_a^b sigma(u) du; closed form if available, else adaptive Simpson.
  double segment_integral(double a, double b) const;
  // int_0^t sigma^2(u) du.
  double square_integral(double t) const;

  static SigmaProfile constant(double value = 1.0);
  static SigmaProfile linear(double slope = 1.0);  // sigma(u) = slope * u
  // Monotone cubic (Fritsch-Carlson) through (t_i, sigma_i) knots; constant
  // extrapolation beyond the last knot. Exact piecewise-polynomial integrals.
  static SigmaProfile from_table(std::vector<double> t, std::vector<double> s);
};

struct TimevarPath {
  PathSample telegraph_path;
  SigmaProfile profile;
  double value(double t) const;  // X(t)
};

TimevarPath sample_path(const SigmaProfile& profile, const TelegraphParams& p,
                        double horizon, RngStream& rng);

// X(t) without materializing events.
double sample_endpoint(const SigmaProfile& profile, const TelegraphParams& p, double t,
                       RngStream& rng);

// E[X(s) X(t)] = c^2 int_0^t int_0^s e^{-2 lambda |x-y|} sigma(x) sigma(y).
double covariance(const SigmaProfile& profile, const TelegraphParams& p, double s,
                  double t, double abs_tol = 1e-10);

// Hydrodynamic limit: int_0^{min(s,t)} sigma^2.
double limit_covariance(const SigmaProfile& profile, double s, double t);

// Hydrodynamic-limit law of X(t): centered Gaussian, variance int_0^t sigma^2.
double limit_density(const SigmaProfile& profile, double x, double t);

}  // namespace fvm
