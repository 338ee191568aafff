#pragma once

// Adaptive quadrature used by the analytic-law mass checks and the
// covariance integrals.

#include <functional>
#include <vector>

namespace fvm {

// Adaptive Simpson rule with absolute tolerance.
double integrate(const std::function<double(double)>& f, double a, double b,
                 double abs_tol = 1e-10, int max_depth = 48);

// Same, with forced subdivision at the given interior knots.
double integrate_split(const std::function<double(double)>& f, double a, double b,
                       const std::vector<double>& knots, double abs_tol = 1e-10);

// Iterated 2-D integral of f over { (u,v) : u_lo < u < u_hi,
// v_lo(u) < v < v_hi(u) }. Tolerance budget is split between the outer and
// inner rules.
double integrate2d(const std::function<double(double, double)>& f, double u_lo,
                   double u_hi, const std::function<double(double)>& v_lo,
                   const std::function<double(double)>& v_hi, double abs_tol = 1e-9);

// c^2 * int_0^t int_0^s exp(-2*lambda*|x-y|) sigma(x) sigma(y) dx dy.
//
// Evaluated in rotated coordinates u=(x+y)/2, v=(x-y)/2 with the substitution
// xi = 4*lambda*v, which keeps the kernel spike resolved for arbitrarily
// large lambda (the hydrodynamic regime lambda = c^2 = 1e4 is in routine use).
double exp_kernel_double_integral(const std::function<double(double)>& sigma,
                                  double lambda, double c, double s, double t,
                                  double abs_tol = 1e-10);

}  // namespace fvm
