#pragma once

// Space-varying-velocity motions. A motion X(t) with speed profile v(x) is
// the image of a constant-speed telegraph process under the inverse of the
// integral map W(x) = c * int_{x0}^x dw / v(w):  X(t) = Winv(T(t)).
//
// Built-in profiles: constant speed, linear v = c*x (geometric telegraph),
// power v = c*x^alpha with alpha in (0,1) (barrier at 0 reachable at finite
// t*; reflecting and absorbing variants), logistic v = c*x(1-x) (confined to
// (0,1)), and symmetric logistic v = c(1-x^2) (confined to (-1,1)).

#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "fvm/telegraph.hpp"

namespace fvm {

enum class PowerVariant { reflect, absorb };

struct BarrierInfo {
  bool reachable = false;
  double t_star = 0.0;  // finite hitting time of a straight run, if reachable
};

struct VelocityModel {
  std::string family;
  double x0 = 0.0;
  double c = 1.0;
  Interval domain{0.0, 0.0};  // open state space of the motion
  std::function<double(double)> v;
  std::function<double(double)> W;
  std::function<double(double)> Winv;
  BarrierInfo lower, upper;
  std::optional<PowerVariant> variant;  // set iff a barrier is reachable
  double barrier_level = 0.0;           // W-coordinate of the reachable barrier
};

VelocityModel constant_model(double c, double x0);
VelocityModel linear_model(double c, double x0);                        // requires x0 > 0
VelocityModel power_model(double c, double alpha, double x0, PowerVariant variant);
VelocityModel logistic_model(double c, double x0);                      // requires x0 in (0,1)
VelocityModel symlogistic_model(double c, double x0);                   // requires x0 in (-1,1)

// Generic profile with numerically integrated W and root-found Winv
// (tolerance 1e-10); fallback for profiles without closed forms.
VelocityModel model_from_speed(std::function<double(double)> v, double c, double x0,
                               Interval domain, std::string name = "custom");

// Pathwise transform X(t) = Winv(T(t)). The absorbing variant freezes the
// path at the first time the W-coordinate reaches the barrier level; the
// reflecting variant folds the W-coordinate at the barrier.
std::function<double(double)> transform_path(const VelocityModel& m, const PathSample& tel_path);

// f(x,t) = c * p(W(x), t) / v(x), the change-of-variables image of the
// telegraph density. Domain error outside the open support; the power
// family only admits this density for t < t*.
double density_x(const VelocityModel& m, double lambda, double x, double t);

struct SupportInfo {
  Interval interval;        // closed endpoints Winv(-ct), Winv(+ct)
  std::vector<Atom> atoms;  // the two no-switch endpoint atoms
};

SupportInfo support(const VelocityModel& m, double lambda, double t);

// Truncated moment series; `converged` is false when the reported last term
// still exceeds 1e-8 of the sum.
struct MomentResult {
  double value = 0.0;
  double last_term = 0.0;
  int terms = 0;
  bool converged = true;
};

// E[X(t)^a] for the logistic motion started at x0, truncated at N terms of
// the even-order series in the generalized Euler polynomials.
MomentResult logistic_moment(double a, const TelegraphParams& p, double x0, double t, int N);

// Hydrodynamic-limit counterpart (lambda = c^2 -> infinity).
MomentResult logistic_moment_hydro(double a, double x0, double t, int N);

}  // namespace fvm
