#pragma once

// Telegraph-type motion on (0,1) whose speed depends on the direction:
// v0(x) = c(1-x) moving right, v1(x) = c*x moving left. Between Poisson
// events the position relaxes exponentially towards 1 (rightwards) or 0
// (leftwards), so paths are sampled exactly, segment by segment, with no
// ODE stepping. Both endpoints are unreachable barriers.

#include <optional>
#include <vector>

#include "fvm/rng.hpp"

namespace fvm {

struct DirDepParams {
  double lambda = 1.0;
  double c = 1.0;
  double x0 = 0.5;                   // in (0,1)
  std::optional<int> d0_start;       // 0 = rightwards, 1 = leftwards; unset = fair coin
};

void validate(const DirDepParams& p);

struct DirDepPath {
  double horizon = 0.0;
  int initial_direction = 0;        // 0 right, 1 left
  std::vector<double> event_times;
  std::vector<double> x_at_events;  // position at each event
  DirDepParams params;

  double value(double t) const;
};

DirDepPath sample_path(const DirDepParams& p, double horizon, RngStream& rng);

// Endpoint only; O(1) memory.
double sample_endpoint(const DirDepParams& p, double t, RngStream& rng);

// Endpoint conditional on N(t) = n and the given start direction: event
// times are order statistics of n uniforms on (0,t) (stratified sampling,
// no rejection).
double sample_endpoint_conditional(const DirDepParams& p, int d_start, int n, double t,
                                   RngStream& rng);

// E[X(t) | D(0) = d_start, N(t) = n]; alternating sums of 1F1(j; n+1; ct)
// evaluated with compensated summation.
double cond_mean(const DirDepParams& p, int d_start, int n, double t);

// E[X(t)] = x0 e^{-ct} + (1 - e^{-ct})/2, independent of lambda.
double uncond_mean(const DirDepParams& p, double t);

struct CollapseResult {
  double frac_near_0 = 0.0;
  double frac_near_1 = 0.0;
  long replicas = 0;
};

// Large-speed collapse experiment: unit switching intensity, speed c,
// endpoints classified as within `band` of 0 or of 1. For c >> 1 roughly
// half the paths pin near each barrier.
CollapseResult collapse_experiment(double c, double t, long replicas, double band,
                                   double x0, std::uint64_t seed, int threads = 0);

}  // namespace fvm
