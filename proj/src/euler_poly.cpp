#include "fvm/euler_poly.hpp"

#include <gmpxx.h>

#include <cmath>
#include <stdexcept>

#include "fvm/specfun.hpp"

namespace fvm {

namespace {

void check_params(int n, double a, double theta) {
  if (n < 0 || n > specfun::kStirlingMaxK)
    throw std::out_of_range("euler_poly: degree must satisfy 0 <= n <= 64");
  if (!(a > 0.0) || !(theta > 0.0))
    throw std::domain_error("euler_poly: requires a > 0 and theta > 0");
}

// Inner sums S_k = sum_j binom(-a,j) j! {k,j} r^j with r = theta/(theta+1),
// as exact rationals (a and theta enter as the exact rationals represented
// by their double values).
std::vector<mpq_class> inner_sums(int max_k, double a, double theta) {
  const mpq_class qa(a);
  const mpq_class r = mpq_class(theta) / (mpq_class(theta) + 1);
  std::vector<mpq_class> s(max_k + 1);
  for (int k = 0; k <= max_k; ++k) {
    mpq_class acc = 1;          // j = 0 term: {k,0} = 0 for k >= 1, 1 for k = 0
    if (k >= 1) acc = 0;
    mpq_class fall = 1;         // binom(-a,j) j! = prod_{i<j} (-a-i)
    mpq_class rj = 1;           // r^j
    for (int j = 1; j <= k; ++j) {
      fall *= -(qa + (j - 1));
      rj *= r;
      acc += fall * specfun::stirling2(k, j) * rj;
    }
    s[k] = acc;
  }
  return s;
}

PolySeries assemble(int n, double a, double theta, const std::vector<mpq_class>& s) {
  PolySeries p;
  p.n = n;
  p.a = a;
  p.theta = theta;
  p.coeffs.resize(n + 1);
  mpz_class binom;
  for (int m = 0; m <= n; ++m) {
    mpz_bin_uiui(binom.get_mpz_t(), n, m);
    mpq_class coeff = mpq_class(binom) * s[n - m];
    p.coeffs[m] = coeff.get_d();
  }
  return p;
}

}  // namespace

PolySeries euler_poly(int n, double a, double theta) {
  check_params(n, a, theta);
  return assemble(n, a, theta, inner_sums(n, a, theta));
}

std::vector<PolySeries> euler_poly_family(int N, double a, double theta) {
  check_params(N, a, theta);
  const auto s = inner_sums(N, a, theta);
  std::vector<PolySeries> family;
  family.reserve(N + 1);
  for (int n = 0; n <= N; ++n) family.push_back(assemble(n, a, theta, s));
  return family;
}

double eval_poly(const PolySeries& p, double x) {
  double acc = 0.0;
  for (int m = p.n; m >= 0; --m) acc = acc * x + p.coeffs[m];
  return acc;
}

std::vector<double> euler_poly_values(int N, double a, double theta, double x) {
  check_params(N, a, theta);
  const auto s = inner_sums(N, a, theta);
  const mpq_class qx(x);
  std::vector<double> values(N + 1);
  mpz_class binom;
  for (int n = 0; n <= N; ++n) {
    mpq_class acc = 0;
    mpq_class xm = 1;  // x^m
    for (int m = 0; m <= n; ++m) {
      mpz_bin_uiui(binom.get_mpz_t(), n, m);
      acc += mpq_class(binom) * s[n - m] * xm;
      xm *= qx;
    }
    values[n] = acc.get_d();
  }
  return values;
}

double gf_lhs(double a, double theta, double x, double t) {
  return std::pow((theta + 1.0) / (theta * std::exp(t) + 1.0), a) * std::exp(x * t);
}

double gf_partial_sum(double a, double theta, double x, double t, int N) {
  const auto family = euler_poly_family(N, a, theta);
  double sum = 0.0;
  double tn_over_nfact = 1.0;
  for (int n = 0; n <= N; ++n) {
    if (n > 0) tn_over_nfact *= t / n;
    sum += eval_poly(family[n], x) * tn_over_nfact;
  }
  return sum;
}

}  // namespace fvm
