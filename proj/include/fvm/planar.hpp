#pragma once

// Planar motion along the four orthogonal directions d_0=(1,0), d_1=(0,1),
// d_2=(-1,0), d_3=(0,-1), switching at Poisson(lambda) events. At an event
// the direction moves along one of two arcs: with probability p one of
// d_0<->d_1, d_2<->d_3, with probability 1-p one of d_0<->d_3, d_1<->d_2
// (p = 1/2 is the symmetric clockwise/counterclockwise model).
//
// In rotated coordinates (U+V, U-V) the motion is a pair of independent
// telegraph processes with rates lambda(1-p) and lambda*p, which is what
// gives the interior density its product form and the support the square
// |u+v| <= ct, |u-v| <= ct.

#include <array>
#include <functional>
#include <string>
#include <vector>

#include "fvm/rng.hpp"
#include "fvm/telegraph.hpp"
#include "fvm/velocity_map.hpp"

namespace fvm {

struct PlanarParams {
  double lambda = 1.0;
  double c = 1.0;
  double p = 0.5;  // switching split; in [0,1]
};

void validate(const PlanarParams& p);

struct PlanarPath {
  double horizon = 0.0;
  int initial_direction = 0;        // 0..3
  std::vector<double> event_times;
  std::vector<int> directions;      // direction after each event
  PlanarParams params;

  std::pair<double, double> value(double t) const;  // (u, v)
};

PlanarPath sample_planar(const PlanarParams& p, double horizon, RngStream& rng);

// Endpoint plus the per-direction usage flags needed by the boundary tests;
// O(1) memory.
struct PlanarEndpoint {
  double u = 0.0, v = 0.0;
  std::array<bool, 4> used{};  // directions ever travelled
  long events = 0;
};

PlanarEndpoint sample_planar_endpoint(const PlanarParams& p, double t, RngStream& rng);

// A path sits on the first-quadrant side S1 = {u+v = ct} iff it never used
// d_2 or d_3 (so U+V never turned) and used both d_0 and d_1 (so U-V is
// interior). Corners are the no-event paths.
bool on_side_s1(const PlanarEndpoint& e);

// Continuous density in the open square Int(S_t); product of the two
// rotated-coordinate telegraph factors with rates lambda(1-p), lambda*p.
double interior_density_uv(const PlanarParams& p, double u, double v, double t);

// P((U,V) on the boundary of S_t) = e^{-l(1-p)t} + e^{-lpt} - e^{-lt}.
double boundary_probability(const PlanarParams& p, double t);

// Mass of each of the four corner atoms (the no-event paths), e^{-lt}/4.
// Kept separate from the side densities, which carry only the continuous
// part of the boundary law.
double corner_mass(const PlanarParams& p, double t);

// Density of U on the side S1 (p = 1/2 only), 0 < u < ct.
double side_density_q(const PlanarParams& p, double u, double t);

// Density of H = U - V on the side S1 (p = 1/2 only), |eta| < ct.
double side_density_H(const PlanarParams& p, double eta, double t);

// Space-varying wrapper: law of (X,Y) = (Winv(U), Winv(V)) in the interior
// of its support, f(x,y,t) = g(W(x), W(y), t) c^2 / (v(x) v(y)).
double wrapped_density_xy(const VelocityModel& m, const PlanarParams& p, double x,
                          double y, double t);

// Density of the abscissa X on the first-quadrant boundary side (p = 1/2),
// h(x,t) = q(W(x), t) * c / v(x).
double wrapped_boundary_abscissa(const VelocityModel& m, const PlanarParams& p,
                                 double x, double t);

struct BoundarySide {
  std::string name;
  double x_lo = 0.0, x_hi = 0.0;
  std::function<double(double)> y_of_x;
};

// The four sides of the support boundary for the constant and symlogistic
// models. Throws std::invalid_argument for other families.
std::vector<BoundarySide> support_boundary(const VelocityModel& m, double t);

}  // namespace fvm
