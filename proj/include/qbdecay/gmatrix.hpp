#pragma once

#include "qbdecay/model.hpp"

namespace qbdecay {

// Generating-function slices of a block family.
//
// gf_sum1 sums over the first increment with weight x^i1 at fixed i2,
// gf_sum2 sums over the second increment with weight x^i2 at fixed i1,
// gf_full is the bivariate evaluation sum z^i1 w^i2 A(i1,i2).
Matrix gf_sum1(const BlockFamily& f, int i2, double x);
Matrix gf_sum2(const BlockFamily& f, int i1, double x);
Matrix gf_full(const BlockFamily& f, double z, double w);

// Triplet slice of the interior family along an axis: for Axis::One this is
// sum_i x^i A(i, k), the level-transition block for a step k in x2.
Matrix interior_slice(const BlockModel& m, Axis axis, int k, double x);

// Spectral radius of the bivariate interior evaluation at (e^t1, e^t2).
// Log-convex in (t1, t2); the open unit sublevel set is the interior
// convergence region.
double chi(const BlockModel& m, double theta1, double theta2, double tol = 1e-12);

struct GMatrixEval {
  Matrix G;                  // minimal nonnegative solution
  int iterations = 0;
  double residual = 0.0;     // fixed-point defect, max norm
  double spectral_radius = 0.0;
  bool endpoint_tolerance = false;  // only the relaxed sqrt(tol) defect was reached
};

// Minimal nonnegative solution of
//   L(x) + S(x) G + U(x) G^2 = G
// where (L, S, U) is the interior triplet along the axis, by fixed-point
// iteration from the zero matrix. Outside the convergence interval the
// iteration blows up and DomainError is raised. On the interval endpoints
// convergence degrades to sublinear; the relaxed tolerance sqrt(tol) is
// accepted there and flagged.
GMatrixEval solve_g_matrix(const BlockModel& m, Axis axis, double x, double tol = 1e-12);

// Partial sum, through paths of length n_max, of the first-passage series
// defining the G matrix: sum over increment sequences with nonnegative
// partial sums and total -1, of the ordered block products. Organised as a
// height-indexed dynamic programme; intended as a desk-scale oracle, so
// n_max is capped at 18.
Matrix g_series_partial(const BlockModel& m, Axis axis, double x, int n_max);

struct PhiStarEval {
  Matrix value;        // (I - kernel)^{-1}
  Matrix kernel;       // boundary kernel at x
  double kernel_spr = 0.0;
  GMatrixEval g;       // interior G matrix used by the kernel
};

// Boundary kernel of an axis: the one-step operator on the axis levels
// after censoring excursions through the interior,
//   axis 1:  A1_{*,0}(x) + A1_{*,1}(x) G1(x).
Matrix boundary_kernel(const BlockModel& m, Axis axis, double x, const Matrix& G);

// Same for the reversed operator. Its boundary has width two, so the
// kernel censors through the adjacent interior row:
//   L0(x) + U0(x) (I - H(x))^{-1} D(x),  H = B_{*,0}(x) + B_{*,1}(x) G_B(x),
// where D collects the descent blocks onto the face. Requires spr(H) < 1.
Matrix boundary_kernel(const ReversedModel& m, Axis axis, double x, const Matrix& G_B);

// Spectral radius of the boundary kernel; solves for the interior G matrix
// internally. For the reversed operator, a censoring sum that itself
// diverges (spr(H) >= 1) is reported as a value >= 1 so that sublevel
// searches treat the point as outside.
double boundary_kernel_spr(const BlockModel& m, Axis axis, double x, double tol = 1e-12);
double boundary_kernel_spr(const ReversedModel& m, Axis axis, double x, double tol = 1e-12);

// Fundamental matrix of the boundary kernel, (I - K(x))^{-1}.
// DomainError when spr(K(x)) >= 1.
PhiStarEval phi_star(const BlockModel& m, Axis axis, double x, double tol = 1e-12);

}  // namespace qbdecay
