#pragma once

// Scalar special-function kernels: Stirling numbers of the second kind,
// generalized binomials, modified Bessel functions of the first kind at
// integer and half-integer order, and the Kummer function 1F1(j; b; z)
// for integer parameters.

#include <gmpxx.h>

#include <cstdint>

namespace fvm::specfun {

// Largest k for which stirling2 is defined. Values are exact integers
// (arbitrary precision); the cap keeps the recursion table small.
inline constexpr int kStirlingMaxK = 64;

// Stirling number of the second kind {k, j}, exact.
// Throws std::out_of_range for k > kStirlingMaxK or j > k.
const mpz_class& stirling2(int k, int j);

// {k, j} rounded to double.
double stirling2_d(int k, int j);

// binom(-a, j) = prod_{i=0}^{j-1} (-a - i) / j!. Total function of a.
double gen_binomial(double a, int j);

// Bessel order nu encoded as 2*nu so half-integers are exact.
struct HalfIntOrder {
  int twice_nu;
  static constexpr HalfIntOrder integer(int n) { return {2 * n}; }
  static constexpr HalfIntOrder half_plus(int n) { return {2 * n + 1}; }  // n + 1/2
};

// Modified Bessel function of the first kind I_nu(x), x >= 0,
// nu in {-1/2, 0, 1/2, 1, 3/2, ...}.
//
// nu = +-1/2 use the hyperbolic closed forms; all other orders use the
// ascending series, whose terms are all positive here (no cancellation at
// any order, unlike upward recurrence which loses all digits for nu > x).
double bessel_i(HalfIntOrder nu, double x);

// Exponentially scaled e^{-x} I_0(x) and e^{-x} I_1(x). Large-argument
// evaluation (x beyond series range) is provided for the density kernels,
// which need the products e^{-mu t} I_nu(arg) deep in the hydrodynamic
// regime where I_nu alone overflows.
double bessel_i0e(double x);
double bessel_i1e(double x);

// e^{-x} I_1(x) / x, finite at x = 0 (limit 1/2). This is the form in which
// the analytic d/dt of I_0 enters every density formula.
double bessel_i1e_over_x(double x);

// Kummer confluent hypergeometric 1F1(j; b; z) for integers 0 <= j <= b-1
// and z >= 0. Direct series with compensated summation.
double hyp1f1(int j, int b, double z);

// Gamma(n + 1/2), exact recurrence from Gamma(1/2) = sqrt(pi). n >= 0.
double gamma_n_plus_half(int n);

// Regularized upper incomplete gamma Q(a, x) = Gamma(a,x)/Gamma(a).
double gamma_q(double a, double x);

// P(Chi2_dof > stat) = Q(dof/2, stat/2).
double chi_squared_pvalue(double stat, int dof);

}  // namespace fvm::specfun
