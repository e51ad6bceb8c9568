#pragma once

#include <vector>

#include "qbdecay/gmatrix.hpp"
#include "qbdecay/model.hpp"

namespace qbdecay {

enum class Branch { Lower, Upper };

// Closed interval; the flags record endpoints clipped at the region edge.
struct Interval {
  double lo = kInf;
  double hi = -kInf;
  bool lo_at_region_edge = false;  // endpoint clipped at the projection interval
  bool hi_at_region_edge = false;
  bool empty() const { return !(lo <= hi); }
};

// Extremes of the interior convergence region {chi < 1}: the projection
// intervals on both axes, the tangency ordinates at the four extreme
// points, and the global minimum of chi.
struct Gamma12Extremes {
  double t1_lo = 0.0, t1_hi = 0.0;  // projection on theta1
  double t2_lo = 0.0, t2_hi = 0.0;  // projection on theta2
  double t1_lo_ord = 0.0, t1_hi_ord = 0.0;  // theta2 at the left/right tangency
  double t2_lo_abs = 0.0, t2_hi_abs = 0.0;  // theta1 at the bottom/top tangency
  double chi_min = 0.0;
  double argmin1 = 0.0, argmin2 = 0.0;  // where the global minimum is attained
  double tol = 0.0;

  double lo(Axis a) const { return a == Axis::One ? t1_lo : t2_lo; }
  double hi(Axis a) const { return a == Axis::One ? t1_hi : t2_hi; }
};

struct EtaPair {
  double lower = 0.0;
  double upper = 0.0;
  bool degenerate = false;  // tangency: both branches collapsed to one point
};

// Both solutions in the other coordinate of chi = 1 at a fixed coordinate
// along `axis`. For Axis::One the input is theta1 and the roots are the
// lower/upper boundary ordinates eta(theta1). DomainError outside the
// projection interval (beyond the sqrt(tol) tangency band).
EtaPair eta_pair(const BlockModel& m, Axis axis, double theta, double tol = 1e-10);
double eta(const BlockModel& m, Axis axis, double theta, Branch branch, double tol = 1e-10);

// Derivative of a boundary branch by central differences with step
// 1e-4 * (projection width), Richardson-extrapolated; a step-halving
// consistency failure (slope blowing up at a tangency) raises
// ConvergenceError.
double eta_derivative(const BlockModel& m, Axis axis, double theta, Branch branch,
                      const Gamma12Extremes& ext, double tol = 1e-10);

// Projection extremes of {chi < 1}. InfeasibleError when the global
// minimum of chi is >= 1 (empty region), or when the region is unbounded
// (missing movement directions; validation normally rules this out).
Gamma12Extremes gamma12_extremes(const BlockModel& m, double tol = 1e-10);

// One-dimensional convergence set of an axis: the open interval where the
// boundary kernel has spectral radius < 1, inside the projection interval.
// Endpoints are kernel crossings or, when the kernel stays below one all
// the way, the projection endpoints (flagged).
Interval gamma0_interval(const BlockModel& m, Axis axis, const Gamma12Extremes& ext,
                         double tol = 1e-10);
Interval gamma0_interval(const ReversedModel& m, Axis axis, const Gamma12Extremes& ext,
                         double tol = 1e-10);

// Bundle used by the decay analysis.
struct RegionData {
  Gamma12Extremes ext;
  Interval g1;  // axis-1 convergence interval
  Interval g2;
  double tol = 0.0;
};

RegionData analyze_regions(const BlockModel& m, double tol = 1e-10);
// Same data for the reversed operator: extremes of the reversed interior
// family plus censored-kernel convergence intervals.
RegionData analyze_regions(const ReversedModel& m, double tol = 1e-10);

struct BoundarySample {
  double theta1 = 0.0;
  double eta_lower = 0.0;
  double eta_upper = 0.0;
  bool degenerate = false;
};

// Uniform samples of the boundary curves over the projection interval,
// endpoints included.
std::vector<BoundarySample> trace_boundary(const BlockModel& m, const Gamma12Extremes& ext,
                                           int samples = 257, double tol = 1e-10);

}  // namespace qbdecay
