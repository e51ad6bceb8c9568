#include "qbdecay/decay.hpp"

#include <cmath>

#include "qbdecay/scalar_solve.hpp"

namespace qbdecay {

const char* decay_form_name(DecayForm f) {
  switch (f) {
    case DecayForm::PureExponential:
      return "exp";
    case DecayForm::LinearExponential:
      return "n*exp";
    case DecayForm::PolyHalfExponential:
      return "n^{-l/2}*exp (l unresolved)";
    case DecayForm::SqrtExponential:
      return "n^{-1/2}*exp";
    case DecayForm::Unresolved:
      return "unresolved";
  }
  return "unresolved";
}

namespace {

// View of the geometry as seen from one axis: the abscissa range, the
// lower-branch ordinates at its ends, and the bottom tangency.
struct AxisView {
  Axis axis;
  double range_lo, range_hi;
  double end_lo_ord, end_hi_ord;  // lower branch at range_lo / range_hi
  double bottom, bottom_abs;      // min of the lower branch and its abscissa
  Interval gamma0;
};

AxisView view(const RegionData& rd, Axis a) {
  const Gamma12Extremes& e = rd.ext;
  if (a == Axis::One)
    return {a, e.t1_lo, e.t1_hi, e.t1_lo_ord, e.t1_hi_ord, e.t2_lo, e.t2_lo_abs, rd.g1};
  return {a, e.t2_lo, e.t2_hi, e.t2_lo_abs, e.t2_hi_abs, e.t1_lo, e.t1_lo_ord, rd.g2};
}

double lower_branch(const BlockModel& m, Axis a, double t, double tol) {
  return eta(m, a, t, Branch::Lower, tol);
}

// Rightmost abscissa of {lower branch < s} within the projection range.
double slice_sup(const BlockModel& m, const AxisView& v, double s, double tol) {
  if (!(s > v.bottom)) return -kInf;
  if (v.end_hi_ord < s) return v.range_hi;
  auto h = [&](double t) { return lower_branch(m, v.axis, t, tol) - s; };
  return bisect_root(h, v.bottom_abs, v.range_hi, v.bottom - s, v.end_hi_ord - s, tol);
}

// Leftmost abscissa of the same slice.
double slice_inf(const BlockModel& m, const AxisView& v, double s, double tol) {
  if (!(s > v.bottom)) return kInf;
  if (v.end_lo_ord < s) return v.range_lo;
  auto h = [&](double t) { return lower_branch(m, v.axis, t, tol) - s; };
  return bisect_root(h, v.range_lo, v.bottom_abs, v.end_lo_ord - s, v.bottom - s, tol);
}

}  // namespace

double f_axis(const BlockModel& m, const RegionData& rd, Axis axis, double s, double tol) {
  AxisView v = view(rd, axis);
  if (v.gamma0.empty()) return -kInf;
  double beta = slice_sup(m, v, s, tol);
  if (beta == -kInf) return -kInf;
  double alpha = slice_inf(m, v, s, tol);
  double hi = std::min(beta, v.gamma0.hi);
  double lo = std::max(alpha, v.gamma0.lo);
  if (!(hi > lo)) return -kInf;
  return hi;
}

double theta_star(const BlockModel& m, const RegionData& rd, Axis axis, double tol) {
  AxisView v = view(rd, axis);
  const Interval& og = axis == Axis::One ? rd.g2 : rd.g1;
  if (og.empty())
    throw InfeasibleError("theta_star: the other axis has an empty convergence interval");
  double beta = slice_sup(m, v, og.hi, tol);
  if (beta == -kInf)
    throw InfeasibleError("theta_star: empty slice at the other axis bound");
  return beta;
}

std::array<double, 2> feasible_witness(const BlockModel& m, const RegionData& rd) {
  if (rd.g1.empty() || rd.g2.empty())
    throw InfeasibleError("feasible_witness: an axis convergence interval is empty");
  const int K = 65;
  double best_gap = 0.0;
  std::array<double, 2> best{0.0, 0.0};
  for (int k = 1; k < K; ++k) {
    double t1 = rd.g1.lo + (rd.g1.hi - rd.g1.lo) * k / K;
    if (!(t1 > rd.ext.t1_lo && t1 < rd.ext.t1_hi)) continue;
    EtaPair p = eta_pair(m, Axis::One, t1, rd.tol > 0 ? rd.tol : 1e-10);
    double lo = std::max(p.lower, rd.g2.lo);
    double hi = std::min(p.upper, rd.g2.hi);
    if (hi - lo > best_gap) {
      best_gap = hi - lo;
      best = {t1, 0.5 * (lo + hi)};
    }
  }
  if (best_gap <= 1e-12)
    throw InfeasibleError(
        "feasible_witness: no interior point of the three-region intersection found");
  return best;
}

OptimalPair solve_optimal(const BlockModel& m, const RegionData& rd, double tol) {
  OptimalPair out;
  auto w = feasible_witness(m, rd);
  out.witness1 = w[0];
  out.witness2 = w[1];

  const int cap = 10000;
  double s = w[0];
  int iter = 0;
  double delta = kInf;
  for (; iter < cap; ++iter) {
    double s2 = f_axis(m, rd, Axis::Two, s, tol);
    double next = f_axis(m, rd, Axis::One, s2, tol);
    if (!std::isfinite(next))
      throw InfeasibleError("solve_optimal: optimization slice collapsed during iteration");
    delta = std::abs(next - s);
    s = next;
    if (delta <= tol) break;
  }
  if (iter >= cap) throw ConvergenceError("solve_optimal: fixed point iteration hit the cap");

  out.s1 = s;
  out.s2 = f_axis(m, rd, Axis::Two, s, tol);
  out.iterations = iter + 1;
  out.residual = std::abs(f_axis(m, rd, Axis::One, out.s2, tol) - s);
  out.s1_direct = f_axis(m, rd, Axis::One, rd.g2.hi, tol);
  out.s2_direct = f_axis(m, rd, Axis::Two, rd.g1.hi, tol);
  return out;
}

AxisClassification classify_axis(const BlockModel& m, const RegionData& rd,
                                 const OptimalPair& opt, Axis axis, double tol,
                                 double eps_cls) {
  AxisClassification out;
  out.axis = axis;
  out.s_star = axis == Axis::One ? opt.s1 : opt.s2;
  out.gamma0_hi = (axis == Axis::One ? rd.g1 : rd.g2).hi;
  out.region_hi = rd.ext.hi(axis);
  out.theta_bar_star = theta_star(m, rd, axis, tol);

  double d_region = out.region_hi - out.s_star;
  double d_split = out.gamma0_hi - out.theta_bar_star;
  if (std::abs(d_region) <= eps_cls) {
    out.case_id = 1;
    out.form = DecayForm::PolyHalfExponential;
    out.near_degenerate = std::abs(d_split) <= 10.0 * eps_cls;
  } else if (std::abs(d_split) <= eps_cls) {
    out.case_id = 3;
    out.form = DecayForm::LinearExponential;
    out.near_degenerate = std::abs(d_region) <= 10.0 * eps_cls;
  } else {
    out.case_id = d_split < 0.0 ? 2 : 4;
    out.form = DecayForm::PureExponential;
    out.near_degenerate =
        std::abs(d_region) <= 10.0 * eps_cls || std::abs(d_split) <= 10.0 * eps_cls;
  }
  return out;
}

namespace {

// max of c_par * t + c_perp * (upper branch)(t) over [lo, hi].
std::pair<double, double> cut_support(const BlockModel& m, Axis axis, double c_par,
                                      double c_perp, double lo, double hi, double tol) {
  if (c_perp == 0.0) return {c_par * hi, hi};
  auto neg = [&](double t) { return -(c_par * t + c_perp * eta(m, axis, t, Branch::Upper, tol)); };
  auto [arg, nval] = minimize_golden(neg, lo, hi, 1e-9);
  return {-nval, arg};
}

}  // namespace

DirectionRate xi_direction(const BlockModel& m, const RegionData& rd, const OptimalPair& opt,
                           int c1, int c2, double tol) {
  if (c1 < 0 || c2 < 0 || (c1 == 0 && c2 == 0))
    throw std::invalid_argument("xi_direction: need a nonzero nonnegative direction");
  DirectionRate out;
  out.c1 = c1;
  out.c2 = c2;

  double u1 = std::min(opt.s1, rd.ext.t1_hi);
  auto [v1, a1] = cut_support(m, Axis::One, c1, c2, rd.ext.t1_lo, u1, tol);
  double u2 = std::min(opt.s2, rd.ext.t2_hi);
  auto [v2, a2] = cut_support(m, Axis::Two, c2, c1, rd.ext.t2_lo, u2, tol);

  out.v1 = v1;
  out.v2 = v2;
  out.arg1 = a1;
  out.arg2 = a2;
  out.xi = std::min(v1, v2);
  double tie = 1e-9 * std::max(1.0, std::abs(out.xi));
  out.binding = std::abs(v1 - v2) <= tie ? 0 : (v1 < v2 ? 1 : 2);
  return out;
}

SupportPoint support_point(const BlockModel& m, const RegionData& rd, int c1, int c2,
                           double tol) {
  if (c1 < 0 || c2 < 0 || (c1 == 0 && c2 == 0))
    throw std::invalid_argument("support_point: need a nonzero nonnegative direction");
  SupportPoint out;
  if (c2 == 0) {
    out.theta1 = rd.ext.t1_hi;
    out.theta2 = rd.ext.t1_hi_ord;
    out.value = c1 * out.theta1;
    return out;
  }
  if (c1 == 0) {
    out.theta1 = rd.ext.t2_hi_abs;
    out.theta2 = rd.ext.t2_hi;
    out.value = c2 * out.theta2;
    return out;
  }
  auto [v, arg] = cut_support(m, Axis::One, c1, c2, rd.ext.t1_lo, rd.ext.t1_hi, tol);
  out.value = v;
  out.theta1 = arg;
  out.theta2 = eta(m, Axis::One, arg, Branch::Upper, tol);
  return out;
}

DirectionClassification classify_direction(const BlockModel& m, const RegionData& rd,
                                           const OptimalPair& opt, int c1, int c2, double tol,
                                           double eps_cls) {
  if (c1 < 1 || c2 < 1)
    throw std::invalid_argument("classify_direction: both components must be >= 1");
  DirectionClassification out;
  out.c1 = c1;
  out.c2 = c2;

  if (std::abs(opt.s1 - rd.ext.t1_hi) <= eps_cls || std::abs(opt.s2 - rd.ext.t2_hi) <= eps_cls) {
    out.branch_point = true;
    return out;
  }

  double e2 = eta(m, Axis::One, opt.s1, Branch::Upper, tol);
  double e1 = eta(m, Axis::Two, opt.s2, Branch::Upper, tol);
  double m2 = opt.s2 - e2;  // > 0: the cut at s1 stays below the free maximum
  double m1 = opt.s1 - e1;
  if (m2 < eps_cls || m1 < eps_cls) {
    out.near_degenerate = m2 > -eps_cls && m1 > -eps_cls;
    return out;
  }

  double d2, d1;
  try {
    d2 = eta_derivative(m, Axis::One, opt.s1, Branch::Upper, rd.ext, tol);
    d1 = eta_derivative(m, Axis::Two, opt.s2, Branch::Upper, rd.ext, tol);
  } catch (const ConvergenceError&) {
    out.branch_point = true;
    return out;
  }

  double r = -static_cast<double>(c1) / c2;
  double lo_gap = r - d2;        // want > 0
  double hi_gap = 1.0 / d1 - r;  // want > 0
  if (lo_gap > eps_cls && hi_gap > eps_cls) {
    out.form = DecayForm::SqrtExponential;
  } else if (lo_gap < -eps_cls || hi_gap < -eps_cls) {
    out.form = DecayForm::PureExponential;
  } else {
    out.near_degenerate = true;
  }
  return out;
}

namespace {

HittingSolution hitting_impl(const BlockModel& m, const Gamma12Extremes* orig_ext,
                             double tol) {
  ReversedModel rm = reverse_model(m);
  HittingSolution out;
  out.regions = analyze_regions(rm, tol);
  out.optimal = solve_optimal(rm.derived(), out.regions, tol);
  out.axis1 = classify_axis(rm.derived(), out.regions, out.optimal, Axis::One, tol);
  out.axis2 = classify_axis(rm.derived(), out.regions, out.optimal, Axis::Two, tol);

  Gamma12Extremes oe;
  if (orig_ext) {
    oe = *orig_ext;
  } else {
    oe = gamma12_extremes(m, tol);
  }
  auto close = [](double a, double b) { return std::abs(a - b) <= 1e-7; };
  out.reflection_check =
      close(out.regions.ext.t1_hi, -oe.t1_lo) && close(out.regions.ext.t1_lo, -oe.t1_hi) &&
      close(out.regions.ext.t2_hi, -oe.t2_lo) && close(out.regions.ext.t2_lo, -oe.t2_hi);
  return out;
}

}  // namespace

HittingSolution hitting_rates(const BlockModel& m, double tol) {
  return hitting_impl(m, nullptr, tol);
}

DecaySolution analyze_decay(const BlockModel& m,
                            const std::vector<std::array<int, 2>>& directions, double tol) {
  DecaySolution out;
  out.tol = tol;
  out.regions = analyze_regions(m, tol);
  out.optimal = solve_optimal(m, out.regions, tol);
  out.axis1 = classify_axis(m, out.regions, out.optimal, Axis::One, tol);
  out.axis2 = classify_axis(m, out.regions, out.optimal, Axis::Two, tol);
  for (auto [c1, c2] : directions) {
    out.rates.push_back(xi_direction(m, out.regions, out.optimal, c1, c2, tol));
    DirectionClassification dc;
    if (c1 >= 1 && c2 >= 1) {
      dc = classify_direction(m, out.regions, out.optimal, c1, c2, tol);
    } else {
      dc.c1 = c1;
      dc.c2 = c2;
      dc.form = (c2 == 0 ? out.axis1.form : out.axis2.form);
    }
    out.forms.push_back(dc);
  }
  out.dual = hitting_impl(m, &out.regions.ext, tol);
  return out;
}

}  // namespace qbdecay
