#pragma once

#include <cmath>
#include <utility>

#include "qbdecay/common.hpp"

namespace qbdecay {

// Bracket [lo, hi] containing the minimizer of a convex function, found by
// geometric expansion away from x0. Throws ConvergenceError when no bracket
// appears within the expansion cap (the function keeps descending).
template <class F>
std::pair<double, double> bracket_minimum(F&& f, double x0 = 0.0, double h0 = 0.25) {
  const int cap = 200;
  double h = h0;
  double fm = f(x0);
  double fl = f(x0 - h);
  double fr = f(x0 + h);
  if (fl >= fm && fr >= fm) return {x0 - h, x0 + h};
  // walk downhill, doubling the step
  double dir = (fr < fm) ? 1.0 : -1.0;
  double xa = x0, fa = fm;
  double xb = x0 + dir * h, fb = (dir > 0 ? fr : fl);
  for (int k = 0; k < cap; ++k) {
    h *= 2.0;
    double xc = xb + dir * h;
    double fc = f(xc);
    if (fc >= fb) return dir > 0 ? std::make_pair(xa, xc) : std::make_pair(xc, xa);
    xa = xb;
    fa = fb;
    xb = xc;
    fb = fc;
  }
  (void)fa;
  throw ConvergenceError("bracket_minimum: function keeps descending, no bracket found");
}

// Golden-section minimum of a unimodal function on [a, b].
template <class F>
std::pair<double, double> minimize_golden(F&& f, double a, double b, double xtol = 1e-12) {
  constexpr double invphi = 0.6180339887498949;
  double x1 = b - invphi * (b - a);
  double x2 = a + invphi * (b - a);
  double f1 = f(x1), f2 = f(x2);
  int guard = 400;
  while (b - a > xtol && guard-- > 0) {
    if (f1 <= f2) {
      b = x2;
      x2 = x1;
      f2 = f1;
      x1 = b - invphi * (b - a);
      f1 = f(x1);
    } else {
      a = x1;
      x1 = x2;
      f1 = f2;
      x2 = a + invphi * (b - a);
      f2 = f(x2);
    }
  }
  double xm = 0.5 * (a + b);
  return {xm, f(xm)};
}

// Bisection root of a continuous function with a sign change on [lo, hi].
// flo and fhi are the (already computed) endpoint values.
template <class F>
double bisect_root(F&& f, double lo, double hi, double flo, double fhi, double xtol = 1e-10) {
  if (flo == 0.0) return lo;
  if (fhi == 0.0) return hi;
  if ((flo > 0.0) == (fhi > 0.0))
    throw std::invalid_argument("bisect_root: no sign change on the bracket");
  int guard = 400;
  while (hi - lo > xtol && guard-- > 0) {
    double mid = 0.5 * (lo + hi);
    double fm = f(mid);
    if (fm == 0.0) return mid;
    if ((fm > 0.0) == (flo > 0.0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
      fhi = fm;
    }
  }
  return 0.5 * (lo + hi);
}

// Expands from x0 in direction dir (+1/-1) until pred flips to true, then
// returns the first x with pred(x) true. Used to find an outer point for
// root bracketing. Throws after the cap.
template <class P>
double expand_until(P&& pred, double x0, double dir, double h0 = 0.25) {
  double h = h0;
  for (int k = 0; k < 200; ++k) {
    double x = x0 + dir * h;
    if (pred(x)) return x;
    h *= 2.0;
  }
  throw ConvergenceError("expand_until: predicate never satisfied");
}

}  // namespace qbdecay
