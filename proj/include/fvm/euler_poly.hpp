#pragma once

// Two-parameter generalized Euler polynomials E_n^{(a,theta)}(x), defined by
//
//   ((theta+1)/(theta e^t + 1))^a e^{xt} = sum_n E_n^{(a,theta)}(x) t^n / n!
//
// with the explicit coefficient formula
//
//   E_n^{(a,theta)}(x) = sum_{k=0}^n C(n,k) x^{n-k}
//                        sum_{j=0}^k binom(-a,j) j! {k,j} (theta/(theta+1))^j.
//
// The double sum has violently cancelling terms (peak intermediates reach
// ~1e50 around n = 40 while the result is orders of magnitude smaller), so
// coefficients are assembled in exact rational arithmetic from the exact
// integer Stirling values and the rational power (theta/(theta+1))^j, and
// rounded to double exactly once at the end.

#include <vector>

namespace fvm {

struct PolySeries {
  int n = 0;          // degree
  double a = 1.0;
  double theta = 1.0;
  std::vector<double> coeffs;  // coeffs[m] multiplies x^m; size n+1; monic
};

// E_n^{(a,theta)} as a coefficient array. Requires 0 <= n <= 64, a > 0,
// theta > 0; throws std::out_of_range / std::domain_error otherwise.
PolySeries euler_poly(int n, double a, double theta);

// All of E_0 .. E_N at once (shares the inner sums across degrees).
std::vector<PolySeries> euler_poly_family(int N, double a, double theta);

// Horner evaluation.
double eval_poly(const PolySeries& p, double x);

// E_0(x) .. E_N(x) evaluated in exact rational arithmetic, each rounded to
// double once. High degrees carry enormous cancelling coefficients, so a
// double Horner pass would drown the small values the moment series needs
// (the classical E_{2n}(1) = 0 must come out as an exact zero).
std::vector<double> euler_poly_values(int N, double a, double theta, double x);

// Closed form of the generating function at (x, t).
double gf_lhs(double a, double theta, double x, double t);

// sum_{n<=N} E_n^{(a,theta)}(x) t^n / n!. Requires N <= 64.
double gf_partial_sum(double a, double theta, double x, double t, int N);

}  // namespace fvm
