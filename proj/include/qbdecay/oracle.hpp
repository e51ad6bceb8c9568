#pragma once

#include <array>
#include <string>
#include <vector>

#include <Eigen/SparseCore>

#include "qbdecay/model.hpp"

namespace qbdecay {

// Finite section of the operator on the grid {0..N}^2 with absorbing
// truncation: transitions leaving the grid are dropped. The origin row
// and column are removed (kept as structural zeros) and exposed
// separately, so Neumann sums of That avoid passage through the origin.
struct TruncatedOperator {
  int N = 0;
  int s0 = 0;
  Eigen::SparseMatrix<double> That;  // states x states, origin row/col zero
  Matrix t01;                        // s0 x states: origin exit row
  Matrix t10;                        // states x s0: origin entry column

  int states() const { return (N + 1) * (N + 1) * s0; }
  int sid(int x1, int x2, int j) const { return (x1 * (N + 1) + x2) * s0 + j; }
};

TruncatedOperator build_truncated(const BlockModel& m, int N);
TruncatedOperator build_truncated(const ReversedModel& m, int N);

// Cellwise sums of the Neumann series: occupation (row sums t01 * That^n)
// or hitting (column sums That^n * t10).
struct OccupationField {
  int N = 0;
  int s0 = 0;
  bool hitting = false;
  std::vector<Matrix> cells;  // (N+1)^2 matrices of size s0 x s0
  int terms = 0;
  double tol = 0.0;
  double residual = 0.0;  // defect of the defining linear identity

  const Matrix& at(int x1, int x2) const { return cells[x1 * (N + 1) + x2]; }
  double pooled(int x1, int x2) const { return at(x1, x2).sum(); }
};

// Series summation with two stopping conditions held for three
// consecutive terms: the term norm falls below tol times the largest
// accumulated entry, and every entry's increment falls below 1e3*tol
// relative to its accumulated value (so far-field cells are converged in
// relative terms, not just absolutely). A thousand consecutive
// non-decreasing term norms raise ConvergenceError (divergent series,
// model not transient on the truncation).
OccupationField occupation_measure(const TruncatedOperator& op, double tol = 1e-12);
OccupationField hitting_measure(const TruncatedOperator& op, double tol = 1e-12);

// Log-linear fit of the field along a lattice ray.
struct RayEstimate {
  std::array<int, 2> c{};
  int n_lo = 0, n_hi = 0;
  double slope = 0.0;
  double intercept = 0.0;
  double r2 = 0.0;
  double slope_offset = 0.0;  // refit on a window shifted by 5% of N
  Matrix phase_slopes;        // s0 x s0 slopes, NaN where the ray vanishes
};

// Ordinary least squares on the logs of pooled values at (n*c1, n*c2),
// n in the window (default [0.3N, 0.7N], clipped so the ray keeps a
// margin of margin_frac*N from the truncation boundary). Zero pooled
// values inside the window raise DomainError.
RayEstimate empirical_decay(const OccupationField& f, std::array<int, 2> c,
                            std::array<int, 2> window = {-1, -1}, double margin_frac = 0.15);

struct CompensationResult {
  double absolute = 0.0;
  double relative = 0.0;
  double left_norm = 0.0;
};

// Residual of the boundary compensation identity for the transform of
// the occupation field along one axis, at transform point z: the direct
// sum over that axis against the censored form built from the
// near-origin cells, the opposite boundary column (truncated at K terms)
// and the fundamental boundary matrix.
CompensationResult compensation_residual(const BlockModel& m, const OccupationField& occ,
                                         Axis axis, double z, int K, double tol = 1e-12);

// Convergence-domain probe for the weighted sums sum e^{<theta, x>} nu(x)
// across increasing truncation sizes. Verdicts: "inside" (increments
// collapse), "outside" (increments grow), "inconclusive".
std::vector<std::string> domain_probe(const BlockModel& m,
                                      const std::vector<std::array<double, 2>>& thetas,
                                      const std::vector<int>& sizes = {40, 80, 120},
                                      double tol = 1e-12);

}  // namespace qbdecay
