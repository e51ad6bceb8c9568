#pragma once

#include <array>
#include <vector>

#include "qbdecay/regions.hpp"

namespace qbdecay {

enum class DecayForm {
  PureExponential,      // e^{-s n}
  LinearExponential,    // n e^{-s n}
  PolyHalfExponential,  // n^{-l/2} e^{-s n}, odd l (or 0) not resolved further
  SqrtExponential,      // n^{-1/2} e^{-xi n}
  Unresolved
};

const char* decay_form_name(DecayForm f);

// Optimal exponent pair: the unique maximizer of s1 + s2 subject to
// s1 <= f1(s2), s2 <= f2(s1).
struct OptimalPair {
  double s1 = 0.0, s2 = 0.0;
  double s1_direct = 0.0, s2_direct = 0.0;  // single-shot formulas
  int iterations = 0;
  double residual = 0.0;  // |s1 - f1(f2(s1))| at the fixed point
  double witness1 = 0.0, witness2 = 0.0;  // interior feasibility witness
};

struct AxisClassification {
  Axis axis = Axis::One;
  int case_id = 0;  // 1..4
  DecayForm form = DecayForm::Unresolved;
  bool near_degenerate = false;  // within 10x the classification band
  double s_star = 0.0;
  double gamma0_hi = 0.0;     // sup of the axis convergence interval
  double theta_bar_star = 0.0;
  double region_hi = 0.0;     // projection extreme of {chi < 1}
};

struct DirectionRate {
  int c1 = 0, c2 = 0;
  double xi = 0.0;
  double v1 = 0.0, v2 = 0.0;  // the two clipped suprema
  int binding = 0;            // 1 or 2; 0 for a tie
  double arg1 = 0.0, arg2 = 0.0;  // maximizing abscissa of each problem
};

struct DirectionClassification {
  int c1 = 0, c2 = 0;
  DecayForm form = DecayForm::Unresolved;
  bool branch_point = false;     // s* at a region extreme, derivative undefined
  bool near_degenerate = false;  // a strict inequality holds only marginally
};

struct SupportPoint {
  double value = 0.0;  // sup of <c, theta> over {chi <= 1}
  double theta1 = 0.0, theta2 = 0.0;
};

// Largest coordinate on `axis` of the region Gamma^axis intersected with
// {eta_lower < s} and the interior region; -infinity when the slice is
// empty (s at or below the bottom of the region).
double f_axis(const BlockModel& m, const RegionData& rd, Axis axis, double s,
              double tol = 1e-10);

// Unclipped slice supremum at the other axis convergence bound; the
// quantity compared against the axis convergence bound in the direct
// optimality formulas.
double theta_star(const BlockModel& m, const RegionData& rd, Axis axis, double tol = 1e-10);

// Interior point of Gamma^1 x-sect Gamma^2 x-sect {chi < 1}; the
// feasibility certificate required before optimization.
std::array<double, 2> feasible_witness(const BlockModel& m, const RegionData& rd);

// Fixed point of s -> f1(f2(s)) by monotone iteration from the witness
// abscissa, together with the direct single-shot values.
OptimalPair solve_optimal(const BlockModel& m, const RegionData& rd, double tol = 1e-10);

// Case analysis of which constraint pins the axis exponent, and the
// resulting decay-function form. Ties resolve toward the lower case
// index inside the eps_cls band.
AxisClassification classify_axis(const BlockModel& m, const RegionData& rd,
                                 const OptimalPair& opt, Axis axis, double tol = 1e-10,
                                 double eps_cls = 1e-7);

// Decay rate along lattice direction c: the smaller of the two clipped
// support problems max <c, theta> over the region cut at s1 (resp. s2).
DirectionRate xi_direction(const BlockModel& m, const RegionData& rd, const OptimalPair& opt,
                           int c1, int c2, double tol = 1e-10);

// Unconstrained support problem over {chi <= 1}.
SupportPoint support_point(const BlockModel& m, const RegionData& rd, int c1, int c2,
                           double tol = 1e-10);

// Decay-function form along an interior direction (c1, c2 >= 1):
// n^{-1/2} e^{-xi n} exactly when both cut problems are maximized at an
// interior tangency with the direction's slope strictly inside the
// tangent window; pure exponential when the slope falls strictly
// outside; unresolved (with flags) in the degenerate bands.
DirectionClassification classify_direction(const BlockModel& m, const RegionData& rd,
                                           const OptimalPair& opt, int c1, int c2,
                                           double tol = 1e-10, double eps_cls = 1e-7);

// Reversed-operator (hitting) side of the analysis.
struct HittingSolution {
  RegionData regions;
  OptimalPair optimal;  // s_{R,1}, s_{R,2}
  AxisClassification axis1, axis2;
  bool reflection_check = false;  // reversed extremes = reflected originals
};

HittingSolution hitting_rates(const BlockModel& m, double tol = 1e-10);

struct DecaySolution {
  RegionData regions;
  OptimalPair optimal;
  AxisClassification axis1, axis2;
  std::vector<DirectionRate> rates;
  std::vector<DirectionClassification> forms;
  HittingSolution dual;
  double tol = 0.0;
};

// Full analytic pipeline for one model: regions, optimal exponents, axis
// and direction classification, and the reversed-operator rates.
DecaySolution analyze_decay(const BlockModel& m,
                            const std::vector<std::array<int, 2>>& directions,
                            double tol = 1e-10);

}  // namespace qbdecay
