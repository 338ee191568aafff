#include "fvm/quad.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace fvm {

namespace {

double adaptive(const std::function<double(double)>& f, double a, double b,
                double fa, double fm, double fb, double whole, double tol,
                int depth) {
  const double m = 0.5 * (a + b);
  const double lm = 0.5 * (a + m);
  const double rm = 0.5 * (m + b);
  const double flm = f(lm);
  const double frm = f(rm);
  const double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  const double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  const double delta = left + right - whole;
  if (depth <= 0 || std::abs(delta) <= 15.0 * tol) {
    return left + right + delta / 15.0;
  }
  return adaptive(f, a, m, fa, flm, fm, left, 0.5 * tol, depth - 1) +
         adaptive(f, m, b, fm, frm, fb, right, 0.5 * tol, depth - 1);
}

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b,
                 double abs_tol, int max_depth) {
  if (a == b) return 0.0;
  double sgn = 1.0;
  if (b < a) {
    std::swap(a, b);
    sgn = -1.0;
  }
  const double fa = f(a);
  const double fb = f(b);
  const double m = 0.5 * (a + b);
  const double fm = f(m);
  const double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return sgn * adaptive(f, a, b, fa, fm, fb, whole, abs_tol, max_depth);
}

double integrate_split(const std::function<double(double)>& f, double a, double b,
                       const std::vector<double>& knots, double abs_tol) {
  std::vector<double> pts;
  pts.push_back(a);
  for (double k : knots)
    if (k > a && k < b) pts.push_back(k);
  pts.push_back(b);
  std::sort(pts.begin(), pts.end());
  double total = 0.0;
  const double tol = abs_tol / std::max<std::size_t>(1, pts.size() - 1);
  for (std::size_t i = 0; i + 1 < pts.size(); ++i)
    total += integrate(f, pts[i], pts[i + 1], tol);
  return total;
}

double integrate2d(const std::function<double(double, double)>& f, double u_lo,
                   double u_hi, const std::function<double(double)>& v_lo,
                   const std::function<double(double)>& v_hi, double abs_tol) {
  const double inner_tol = abs_tol / (20.0 * std::max(1.0, u_hi - u_lo));
  auto outer = [&](double u) {
    const double lo = v_lo(u);
    const double hi = v_hi(u);
    if (hi <= lo) return 0.0;
    return integrate([&](double v) { return f(u, v); }, lo, hi, inner_tol);
  };
  return integrate(outer, u_lo, u_hi, abs_tol * 0.5);
}

double exp_kernel_double_integral(const std::function<double(double)>& sigma,
                                  double lambda, double c, double s, double t,
                                  double abs_tol) {
  if (lambda <= 0 || c <= 0) throw std::domain_error("exp_kernel_double_integral: lambda, c must be positive");
  if (s <= 0.0 || t <= 0.0) return 0.0;

  // u-range for fixed v: u in (|v| shifted by the rectangle), see quad.hpp.
  auto inner = [&](double v) {
    const double lo = std::max(v, -v);
    const double hi = std::min(s - v, t + v);
    if (hi <= lo) return 0.0;
    return integrate([&](double u) { return sigma(u + v) * sigma(u - v); }, lo, hi,
                     abs_tol * 1e-3);
  };

  // xi = 4*lambda*v isolates the exp(-|xi|) factor at unit scale.
  auto g = [&](double xi) { return std::exp(-std::abs(xi)) * inner(xi / (4.0 * lambda)); };
  const double xi_neg = std::min(2.0 * lambda * t, 60.0);
  const double xi_pos = std::min(2.0 * lambda * s, 60.0);
  const double integral_xi =
      integrate(g, -xi_neg, 0.0, abs_tol * 0.25) + integrate(g, 0.0, xi_pos, abs_tol * 0.25);
  return 2.0 * c * c / (4.0 * lambda) * integral_xi;
}

}  // namespace fvm
