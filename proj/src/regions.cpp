#include "qbdecay/regions.hpp"

#include <cmath>
#include <functional>

#include "qbdecay/scalar_solve.hpp"
#include "qbdecay/spectral.hpp"

namespace qbdecay {

namespace {

constexpr double kInnerTol = 1e-8;

double log_chi(const BlockModel& m, Axis axis, double along, double across) {
  // `along` is the coordinate on `axis`, `across` the other one.
  double t1 = axis == Axis::One ? along : across;
  double t2 = axis == Axis::One ? across : along;
  return std::log(chi(m, t1, t2, 1e-13));
}

// Minimum of log chi over the cross coordinate at a fixed abscissa.
std::pair<double, double> section_min(const BlockModel& m, Axis axis, double along,
                                      double hint = 0.0) {
  auto f = [&](double t) { return log_chi(m, axis, along, t); };
  auto [lo, hi] = bracket_minimum(f, hint);
  return minimize_golden(f, lo, hi, kInnerTol);
}

}  // namespace

EtaPair eta_pair(const BlockModel& m, Axis axis, double theta, double tol) {
  auto [tmin, fmin] = section_min(m, axis, theta);
  EtaPair out;
  const double band = std::sqrt(tol);
  if (fmin > band) throw DomainError("eta: abscissa outside the projection interval");
  if (std::abs(fmin) <= band) {
    // Tangency: the two branches are not resolvable at this tolerance.
    out.lower = out.upper = tmin;
    out.degenerate = true;
    return out;
  }
  auto f = [&](double t) { return log_chi(m, axis, theta, t); };
  double up = expand_until([&](double t) { return f(t) > 0.0; }, tmin, +1.0);
  out.upper = bisect_root(f, tmin, up, fmin, f(up), tol);
  double dn = expand_until([&](double t) { return f(t) > 0.0; }, tmin, -1.0);
  out.lower = bisect_root(f, dn, tmin, f(dn), fmin, tol);
  return out;
}

double eta(const BlockModel& m, Axis axis, double theta, Branch branch, double tol) {
  EtaPair p = eta_pair(m, axis, theta, tol);
  return branch == Branch::Lower ? p.lower : p.upper;
}

double eta_derivative(const BlockModel& m, Axis axis, double theta, Branch branch,
                      const Gamma12Extremes& ext, double tol) {
  const double width = ext.hi(axis) - ext.lo(axis);
  const double h = 1e-4 * width;
  if (theta - h < ext.lo(axis) || theta + h > ext.hi(axis))
    throw ConvergenceError("eta_derivative: too close to a branch point");
  const double etol = std::min(tol, 1e-11);
  auto diff = [&](double step) {
    return (eta(m, axis, theta + step, branch, etol) -
            eta(m, axis, theta - step, branch, etol)) /
           (2.0 * step);
  };
  double d1 = diff(h);
  double d2 = diff(0.5 * h);
  if (std::abs(d1 - d2) > 1e-3 * std::max(1.0, std::abs(d2)))
    throw ConvergenceError("eta_derivative: step-halving check failed near a branch point");
  return (4.0 * d2 - d1) / 3.0;
}

Gamma12Extremes gamma12_extremes(const BlockModel& m, double tol) {
  Gamma12Extremes ext;
  ext.tol = tol;

  // Convex outer profiles: minimum of log chi over the other coordinate.
  auto profile = [&](Axis axis) {
    return [&m, axis](double along) { return section_min(m, axis, along).second; };
  };

  auto g1 = profile(Axis::One);
  auto [b1lo, b1hi] = bracket_minimum(g1);
  auto [a1, gmin] = minimize_golden(g1, b1lo, b1hi, 1e-10);
  if (gmin > -100.0 * tol)
    throw InfeasibleError("interior convergence region is empty or degenerate");

  ext.chi_min = std::exp(gmin);
  ext.argmin1 = a1;
  ext.argmin2 = section_min(m, Axis::One, a1).first;

  auto solve_edge = [&](auto&& g, double from, double dir) {
    double out = expand_until([&](double t) { return g(t) > 0.0; }, from, dir);
    double lo = dir > 0 ? from : out;
    double hi = dir > 0 ? out : from;
    double flo = dir > 0 ? gmin : g(out);
    double fhi = dir > 0 ? g(out) : gmin;
    return bisect_root(g, lo, hi, flo, fhi, tol);
  };

  ext.t1_hi = solve_edge(g1, a1, +1.0);
  ext.t1_lo = solve_edge(g1, a1, -1.0);
  ext.t1_hi_ord = section_min(m, Axis::One, ext.t1_hi).first;
  ext.t1_lo_ord = section_min(m, Axis::One, ext.t1_lo).first;

  auto g2 = profile(Axis::Two);
  auto [a2m, gmin2] = minimize_golden(g2, ext.argmin2 - 0.5, ext.argmin2 + 0.5, 1e-10);
  // the global minimum is shared; reuse the tighter of the two
  if (gmin2 < gmin) gmin = gmin2;
  double a2 = gmin2 <= gmin ? a2m : ext.argmin2;
  ext.t2_hi = solve_edge(g2, a2, +1.0);
  ext.t2_lo = solve_edge(g2, a2, -1.0);
  ext.t2_hi_abs = section_min(m, Axis::Two, ext.t2_hi).first;
  ext.t2_lo_abs = section_min(m, Axis::Two, ext.t2_lo).first;
  return ext;
}

namespace {

Interval gamma0_generic(const std::function<double(double)>& spr_at, double lo, double hi,
                        double tol) {
  auto f = [&](double t) {
    try {
      return spr_at(t) - 1.0;
    } catch (const DomainError&) {
      return 1.0;
    } catch (const ConvergenceError&) {
      return 1.0;  // endpoint-adjacent stall: treat as outside
    }
  };
  auto [tm, fm] = minimize_golden(f, lo, hi, kInnerTol);
  Interval out;
  if (fm >= 0.0) return out;  // empty
  double fa = f(lo), fb = f(hi);
  if (fa < 0.0) {
    out.lo = lo;
    out.lo_at_region_edge = true;
  } else {
    out.lo = bisect_root(f, lo, tm, fa, fm, tol);
  }
  if (fb < 0.0) {
    out.hi = hi;
    out.hi_at_region_edge = true;
  } else {
    out.hi = bisect_root(f, tm, hi, fm, fb, tol);
  }
  return out;
}

}  // namespace

Interval gamma0_interval(const BlockModel& m, Axis axis, const Gamma12Extremes& ext,
                         double tol) {
  auto spr_at = [&](double t) { return boundary_kernel_spr(m, axis, std::exp(t)); };
  return gamma0_generic(spr_at, ext.lo(axis), ext.hi(axis), tol);
}

Interval gamma0_interval(const ReversedModel& m, Axis axis, const Gamma12Extremes& ext,
                         double tol) {
  auto spr_at = [&](double t) { return boundary_kernel_spr(m, axis, std::exp(t)); };
  return gamma0_generic(spr_at, ext.lo(axis), ext.hi(axis), tol);
}

RegionData analyze_regions(const BlockModel& m, double tol) {
  RegionData rd;
  rd.tol = tol;
  rd.ext = gamma12_extremes(m, tol);
  rd.g1 = gamma0_interval(m, Axis::One, rd.ext, tol);
  rd.g2 = gamma0_interval(m, Axis::Two, rd.ext, tol);
  return rd;
}

RegionData analyze_regions(const ReversedModel& m, double tol) {
  RegionData rd;
  rd.tol = tol;
  rd.ext = gamma12_extremes(m.derived(), tol);
  rd.g1 = gamma0_interval(m, Axis::One, rd.ext, tol);
  rd.g2 = gamma0_interval(m, Axis::Two, rd.ext, tol);
  return rd;
}

std::vector<BoundarySample> trace_boundary(const BlockModel& m, const Gamma12Extremes& ext,
                                           int samples, double tol) {
  if (samples < 2) throw std::invalid_argument("trace_boundary: need at least 2 samples");
  std::vector<BoundarySample> out;
  out.reserve(samples);
  for (int k = 0; k < samples; ++k) {
    double t = ext.t1_lo + (ext.t1_hi - ext.t1_lo) * k / (samples - 1);
    EtaPair p = eta_pair(m, Axis::One, t, tol);
    out.push_back({t, p.lower, p.upper, p.degenerate});
  }
  return out;
}

}  // namespace qbdecay
